#include "liouv/liouvillian.hpp"

#include <Eigen/Eigenvalues>

namespace liouv {

Mat electronic_liouvillian_dense(const PhaseSpaceSpec& pspec, const std::vector<RVec>& force_diagonals) {
  const Layout lay = layout_of(pspec);
  const auto xaxes = lay.axes_of(Var::x);
  const Index n = lay.total();
  Mat l = Mat::Zero(n, n);
  int idx = 0;
  for (int nn = 0; nn < pspec.N; ++nn)
    for (int j = 0; j < pspec.spatial_dim; ++j, ++idx) {
      const Mat dp = derivative_matrix(pspec.p.g, pspec.p.h, pspec.p.d);
      Mat a = embed_op(Mat(kI * dp), lay.dims, {lay.axis_p(nn, j)});
      const Vec diag_full = expand_axes_diag(force_diagonals[idx].cast<cplx>(), lay.dims, xaxes);
      for (Index c = 0; c < n; ++c) a.col(c) *= diag_full(c);
      l += a;  // i * diag (x) D_p = diag (x) (i D_p)
    }
  return l;
}

ElectronicLiouvillian electronic_liouvillian(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec, Rng& rng) {
  pspec.validate();
  const Layout lay = layout_of(pspec);
  const auto xaxes = lay.axes_of(Var::x);
  const double alpha_dp = stencil(pspec.p.d).l1() / pspec.p.h;
  const Mat idp = kI * derivative_matrix(pspec.p.g, pspec.p.h, pspec.p.d);

  ElectronicLiouvillian out;
  std::vector<BlockEncoding> terms;
  std::vector<cplx> weights;
  std::vector<RVec> diags;
  double eps = 0;
  for (int nn = 0; nn < pspec.N; ++nn)
    for (int j = 0; j < pspec.spatial_dim; ++j) {
      DiagonalKickback kb = d_el(espec, pspec, nn, j, rng);
      const double alpha_term = kb.scale * alpha_dp;
      auto op = std::make_shared<DilatedTermU>(idp, lay.axis_p(nn, j), kb.entries, xaxes, lay.dims, 1.0, alpha_term);
      terms.emplace_back(op, alpha_term, 2, kb.eps_bound * alpha_dp + 1e-12, true);
      weights.push_back(cplx(1, 0));
      eps += kb.eps_bound * alpha_dp;
      diags.push_back(kb.entries);
      out.force_diagonals.push_back(std::move(kb));
    }
  LiouvillianEncoding enc{lcu_weighted(weights, terms), Mat(), lay, 0.0, 0.0};
  enc.alpha_el = enc.be.alpha();
  if (lay.total() <= dense_unitary_limit()) {
    enc.dense = electronic_liouvillian_dense(pspec, diags);
    if (lay.total() <= 1024) enc.be.attach_target(enc.dense);
  }
  out.eps_bound = eps;
  out.enc = std::move(enc);
  return out;
}

FullLiouvillian full_liouvillian(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec, Rng& rng) {
  ElectronicLiouvillian el = electronic_liouvillian(espec, pspec, rng);
  LiouvillianEncoding cl = classical_liouvillian(pspec);
  FullLiouvillian out;
  out.alpha_el = el.enc.be.alpha();
  out.alpha_cl = cl.be.alpha();
  // single-rotation state-preparation pair over the two branches
  BlockEncoding be = lcu_weighted({cplx(1, 0), cplx(1, 0)}, {el.enc.be, cl.be});
  LiouvillianEncoding enc{std::move(be), Mat(), el.enc.layout, out.alpha_el, out.alpha_cl};
  if (el.enc.dense.size() > 0 && cl.dense.size() > 0) {
    enc.dense = el.enc.dense + cl.dense;
    if (enc.layout.total() <= 1024) enc.be.attach_target(enc.dense);
  }
  out.eps_bound = el.eps_bound;
  out.enc = std::move(enc);
  return out;
}

EvolveResult evolve(const LiouvillianEncoding& l, const KvNState& rho0, double t, double eps, Engine engine,
                    TransformMode mode) {
  if (rho0.amplitudes.size() != l.be.target_dim()) throw std::invalid_argument("evolve: state/layout mismatch");
  if (std::abs(rho0.norm() - 1.0) > 1e-10) throw std::invalid_argument("evolve: initial state must be normalized");

  EvolveResult out;
  out.state.layout = rho0.layout;
  if (mode == TransformMode::semantic) {
    if (l.dense.size() == 0) throw std::invalid_argument("evolve: semantic mode needs the dense target");
    Eigen::SelfAdjointEigenSolver<Mat> es(l.dense);
    Vec coeff = es.eigenvectors().adjoint() * rho0.amplitudes;
    for (Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::exp(cplx(0, -es.eigenvalues()(i) * t));
    out.state.amplitudes = es.eigenvectors() * coeff;
    out.reported_query_count = ham_sim_query_bound(l.be.alpha(), t, eps);
    out.norm_defect = std::abs(out.state.norm() - 1.0);
    return out;
  }

  HamSimResult hs = (engine == Engine::qsvt) ? ham_sim(l.be, t, eps) : angleless_ham_sim(l.be, t, eps);
  Vec full = Vec::Zero(hs.be.total_dim());
  full.head(l.be.target_dim()) = rho0.amplitudes;
  Vec evolved = hs.be.apply_unitary(full);
  out.state.amplitudes = evolved.head(l.be.target_dim());
  out.success_prob = out.state.amplitudes.squaredNorm();
  out.measured_queries = hs.measured_queries;
  out.reported_query_count = hs.reported_query_count;
  out.norm_defect = std::abs(out.state.norm() - 1.0);
  return out;
}

}  // namespace liouv
