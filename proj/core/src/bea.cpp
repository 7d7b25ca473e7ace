#include "liouv/bea.hpp"

#include <Eigen/Eigenvalues>
#include <numeric>

namespace liouv {

namespace {
Rng& probe_rng() {
  static Rng rng(0x9e3779b97f4a7c15ull);
  return rng;
}
}  // namespace

BlockEncoding::BlockEncoding(UnitaryPtr op, double alpha, Index ancilla_dim, double epsilon, bool hermitian_unitary)
    : op_(std::move(op)), alpha_(alpha), epsilon_(epsilon), anc_dim_(ancilla_dim), hermitian_unitary_(hermitian_unitary) {
  if (!op_) throw std::invalid_argument("BlockEncoding: null operator");
  if (alpha_ <= 0) throw std::invalid_argument("BlockEncoding: alpha must be positive");
  if (epsilon_ < 0) throw std::invalid_argument("BlockEncoding: epsilon must be non-negative");
  if (anc_dim_ < 1 || op_->dim() % anc_dim_ != 0)
    throw std::invalid_argument("BlockEncoding: ancilla dimension does not divide the unitary dimension");
  target_dim_ = op_->dim() / anc_dim_;
  check_dim_cap(op_->dim(), "BlockEncoding");
}

BlockEncoding::BlockEncoding(Mat unitary, double alpha, Index ancilla_dim, double epsilon, bool hermitian_unitary)
    : BlockEncoding(std::make_shared<DenseU>(std::move(unitary)), alpha, ancilla_dim, epsilon, hermitian_unitary) {}

Mat BlockEncoding::unitary() const { return op_->dense(); }

Mat BlockEncoding::block() const {
  if (total_dim() <= dense_unitary_limit()) {
    return op_->dense().topLeftCorner(target_dim_, target_dim_);
  }
  Mat blk(target_dim_, target_dim_);
  Vec e = Vec::Zero(total_dim()), col;
  for (Index j = 0; j < target_dim_; ++j) {
    e(j) = 1.0;
    op_->apply(e, col, false);
    blk.col(j) = col.head(target_dim_);
    e(j) = 0.0;
  }
  return blk;
}

Vec BlockEncoding::apply_block(const Vec& sys) const {
  if (sys.size() != target_dim_) throw std::invalid_argument("apply_block: system vector size mismatch");
  Vec full = Vec::Zero(total_dim());
  full.head(target_dim_) = sys;
  Vec out;
  op_->apply(full, out, false);
  return out.head(target_dim_);
}

Vec BlockEncoding::apply_unitary(const Vec& full, bool adjoint) const {
  Vec out;
  op_->apply(full, out, adjoint);
  return out;
}

double BlockEncoding::unitarity_defect() const {
  if (total_dim() <= 512) {
    Mat u = op_->dense();
    return spectral_norm(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
  }
  return unitarity_probe(*op_, probe_rng());
}

void BlockEncoding::attach_target(Mat target) {
  if (target.rows() != target_dim_ || target.cols() != target_dim_)
    throw std::invalid_argument("attach_target: dimension mismatch");
  target_ = std::move(target);
}

BlockEncoding dilate(const Mat& target, double alpha) {
  if (target.rows() != target.cols()) throw std::invalid_argument("dilate: target must be square");
  if (alpha <= 0) throw std::invalid_argument("dilate: alpha must be positive");
  const double nrm = spectral_norm(target);
  if (nrm > alpha * (1 + 1e-12)) {
    throw std::domain_error("dilate: ||target|| = " + std::to_string(nrm) + " exceeds alpha = " +
                            std::to_string(alpha));
  }
  const Index n = target.rows();
  check_dim_cap(2 * n, "dilate");
  Mat a = target / alpha;
  Mat u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = a;
  u.topRightCorner(n, n) = hermitian_sqrt_psd(Mat::Identity(n, n) - a * a.adjoint());
  u.bottomLeftCorner(n, n) = hermitian_sqrt_psd(Mat::Identity(n, n) - a.adjoint() * a);
  u.bottomRightCorner(n, n) = -a.adjoint();
  const bool herm = spectral_norm(Mat(a - a.adjoint())) <= 1e-13;
  BlockEncoding be(std::move(u), alpha, 2, 1e-10, herm);
  be.attach_target(target);
  return be;
}

double verify_contract(const BlockEncoding& be, const Mat& target) {
  if (target.rows() != be.target_dim() || target.cols() != be.target_dim())
    throw std::invalid_argument("verify_contract: dimension mismatch");
  return spectral_norm(Mat(target - be.alpha() * be.block()));
}

double verify_contract(const BlockEncoding& be) {
  if (!be.attached_target()) throw std::invalid_argument("verify_contract: no attached target");
  return verify_contract(be, *be.attached_target());
}

StatePrepPair make_state_prep(const RVec& weights, double eps_sp, Index pad_dim) {
  const Index m = weights.size();
  if (m == 0) throw std::invalid_argument("make_state_prep: empty weights");
  double beta = 0;
  for (Index j = 0; j < m; ++j) {
    if (weights(j) < 0) throw std::invalid_argument("make_state_prep: weights must be non-negative");
    beta += weights(j);
  }
  if (beta <= 0) throw std::invalid_argument("make_state_prep: all-zero weights");
  const Index dim = std::max(pad_dim, m);
  Vec c = Vec::Zero(dim);
  for (Index j = 0; j < m; ++j) c(j) = std::sqrt(weights(j) / beta);
  // Householder completion mapping e_0 to c (c real non-negative, <c,e0> real).
  Mat p;
  Vec v = c;
  v(0) -= 1.0;
  const double vn2 = v.squaredNorm();
  if (vn2 < 1e-30) {
    p = Mat::Identity(dim, dim);
  } else {
    p = Mat::Identity(dim, dim) - (2.0 / vn2) * (v * v.adjoint());
  }
  StatePrepPair pair;
  pair.left_unitary = p;
  pair.right_unitary = p;
  pair.beta = beta;
  pair.eps_sp = eps_sp;
  pair.weights = weights;
  return pair;
}

BlockEncoding lcu_combine(const StatePrepPair& pair, const std::vector<BlockEncoding>& terms) {
  if (terms.empty()) throw std::invalid_argument("lcu_combine: no terms");
  const Index m = pair.weights.size();
  if (static_cast<Index>(terms.size()) != m) throw std::invalid_argument("lcu_combine: weights/terms count mismatch");
  const Index sys = terms[0].target_dim();
  const double alpha = terms[0].alpha();
  Index anc = 1;
  double eps_terms = 0;
  for (const auto& t : terms) {
    if (t.target_dim() != sys) throw std::invalid_argument("lcu_combine: target dimension mismatch");
    if (std::abs(t.alpha() - alpha) > 1e-12 * std::max(1.0, alpha))
      throw std::invalid_argument("lcu_combine: terms must share a common alpha (rescale first)");
    anc = std::lcm(anc, t.ancilla_dim());
    eps_terms = std::max(eps_terms, t.epsilon());
  }
  const Index prep_dim = pair.dim();
  check_dim_cap(prep_dim * anc * sys, "lcu_combine");

  std::vector<UnitaryPtr> blocks;
  blocks.reserve(terms.size());
  for (const auto& t : terms) {
    UnitaryPtr op = t.op();
    if (t.ancilla_dim() != anc) {
      const Index pad = anc / t.ancilla_dim();
      op = std::make_shared<EmbedU>(op, Dims{pad, t.total_dim()}, std::vector<int>{1});
    }
    blocks.push_back(op);
  }
  auto select = std::make_shared<BlockSelectU>(prep_dim, anc * sys, std::move(blocks));
  const Dims full{prep_dim, anc * sys};
  auto prep_r = std::make_shared<EmbedU>(std::make_shared<DenseU>(pair.right_unitary), full, std::vector<int>{0});
  auto prep_l = std::make_shared<EmbedU>(std::make_shared<DenseU>(pair.left_unitary), full, std::vector<int>{0});
  std::vector<CompositeU::Factor> factors;
  factors.push_back({prep_r, false});
  factors.push_back({select, false});
  factors.push_back({prep_l, true});
  auto u = std::make_shared<CompositeU>(std::move(factors));
  const double eps = alpha * pair.eps_sp + pair.beta * eps_terms;
  // real-symmetric equal preps over Hermitian-unitary terms compose to a
  // Hermitian unitary
  bool herm = (pair.left_unitary - pair.right_unitary).norm() <= 1e-14 &&
              (pair.left_unitary - pair.left_unitary.adjoint()).norm() <= 1e-13 &&
              pair.left_unitary.imag().norm() <= 1e-14;
  for (const auto& t : terms) herm = herm && t.hermitian_unitary();
  return BlockEncoding(u, alpha * pair.beta, prep_dim * anc, eps, herm);
}

BlockEncoding lcu_weighted(const std::vector<cplx>& weights, const std::vector<BlockEncoding>& terms, double eps_sp) {
  if (weights.size() != terms.size()) throw std::invalid_argument("lcu_weighted: weights/terms count mismatch");
  if (terms.empty()) throw std::invalid_argument("lcu_weighted: no terms");
  RVec y(static_cast<Index>(weights.size()));
  std::vector<BlockEncoding> unit_terms;
  unit_terms.reserve(terms.size());
  double eps_unit = 0;
  for (size_t j = 0; j < terms.size(); ++j) {
    const double w = std::abs(weights[j]);
    y(static_cast<Index>(j)) = w * terms[j].alpha();
    cplx phase = (w > 0) ? weights[j] / w : cplx(1, 0);
    // reinterpret at scaling 1: same unitary, epsilon rescaled
    BlockEncoding t = (phase == cplx(1, 0)) ? terms[j] : with_phase(terms[j], phase);
    unit_terms.emplace_back(t.op(), 1.0, t.ancilla_dim(), t.epsilon() / t.alpha(), t.hermitian_unitary());
    eps_unit = std::max(eps_unit, t.epsilon() / t.alpha());
  }
  auto pair = make_state_prep(y, eps_sp);
  return lcu_combine(pair, unit_terms);
}

BlockEncoding product(const BlockEncoding& a, const BlockEncoding& b) {
  if (a.target_dim() != b.target_dim()) throw std::invalid_argument("product: target dimension mismatch");
  const Index sys = a.target_dim();
  const Dims full{b.ancilla_dim(), a.ancilla_dim(), sys};
  check_dim_cap(total_dim(full), "product");
  auto fb = std::make_shared<EmbedU>(b.op(), full, std::vector<int>{0, 2});
  auto fa = std::make_shared<EmbedU>(a.op(), full, std::vector<int>{1, 2});
  auto u = std::make_shared<CompositeU>(std::vector<CompositeU::Factor>{{fb, false}, {fa, false}});
  const double eps = a.alpha() * b.epsilon() + b.alpha() * a.epsilon();
  return BlockEncoding(u, a.alpha() * b.alpha(), a.ancilla_dim() * b.ancilla_dim(), eps);
}

BlockEncoding kron_product(const BlockEncoding& a, const BlockEncoding& b) {
  const Dims full{a.ancilla_dim(), b.ancilla_dim(), a.target_dim(), b.target_dim()};
  check_dim_cap(total_dim(full), "kron_product");
  auto fa = std::make_shared<EmbedU>(a.op(), full, std::vector<int>{0, 2});
  auto fb = std::make_shared<EmbedU>(b.op(), full, std::vector<int>{1, 3});
  auto u = std::make_shared<CompositeU>(std::vector<CompositeU::Factor>{{fa, false}, {fb, false}});
  const double eps = a.alpha() * b.epsilon() + b.alpha() * a.epsilon() + a.epsilon() * b.epsilon();
  return BlockEncoding(u, a.alpha() * b.alpha(), a.ancilla_dim() * b.ancilla_dim(), eps);
}

BlockEncoding with_phase(const BlockEncoding& be, cplx phase) {
  if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw std::invalid_argument("with_phase: phase must be unit modulus");
  auto u = std::make_shared<CompositeU>(std::vector<CompositeU::Factor>{{be.op(), false}}, phase);
  const bool herm = be.hermitian_unitary() && std::abs(phase.imag()) <= 1e-15;
  return BlockEncoding(u, be.alpha(), be.ancilla_dim(), be.epsilon(), herm);
}

BlockEncoding pad_ancilla(const BlockEncoding& be, Index new_anc_dim) {
  if (new_anc_dim == be.ancilla_dim()) return be;
  if (new_anc_dim % be.ancilla_dim() != 0)
    throw std::invalid_argument("pad_ancilla: new ancilla dimension must be a multiple of the current one");
  const Index pad = new_anc_dim / be.ancilla_dim();
  auto u = std::make_shared<EmbedU>(be.op(), Dims{pad, be.total_dim()}, std::vector<int>{1});
  return BlockEncoding(u, be.alpha(), new_anc_dim, be.epsilon(), be.hermitian_unitary());
}

BlockEncoding identity_encoding(Index dim) {
  return BlockEncoding(Mat::Identity(dim, dim), 1.0, 1, 0.0, true);
}

BlockEncoding hermitianize(const BlockEncoding& be) {
  if (be.hermitian_unitary()) return be;
  if (be.total_dim() <= 512) {
    Mat u = be.unitary();
    if (spectral_norm(Mat(u - u.adjoint())) <= 1e-12) {
      return BlockEncoding(be.op(), be.alpha(), be.ancilla_dim(), be.epsilon(), true);
    }
  }
  auto u = std::make_shared<HermitianPairU>(be.op());
  return BlockEncoding(u, be.alpha(), 2 * be.ancilla_dim(), be.epsilon(), true);
}

}  // namespace liouv
