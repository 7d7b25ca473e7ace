#include "liouv/qsvt.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace liouv {

namespace {

double erfinv(double p) {
  // Winitzki seed, then Newton on erf(y) = p
  const double a = 0.147;
  const double l = std::log(std::max(1e-300, 1.0 - p * p));
  const double u = 2.0 / (kPi * a) + 0.5 * l;
  double y = std::copysign(std::sqrt(std::max(0.0, std::sqrt(u * u - l / a) - u)), p);
  for (int it = 0; it < 60; ++it) {
    const double r = std::erf(y) - p;
    const double d = 2.0 / std::sqrt(kPi) * std::exp(-y * y);
    if (d < 1e-300) break;
    double step = r / d;
    step = std::clamp(step, -1.0, 1.0);
    y -= step;
    if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(y))) break;
  }
  return y;
}

Mat hadamard_gate() {
  Mat h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

// U_Phi = E(phi_0) W E(phi_1) W ... W E(phi_D) as an appliable operator over
// the qubitized encoding's space.
UnitaryPtr phase_sequence(const BlockEncoding& q, const RVec& phases) {
  const Index anc = q.ancilla_dim(), sys = q.target_dim();
  std::vector<CompositeU::Factor> factors;
  const Index d = phases.size() - 1;
  factors.push_back({std::make_shared<PhasedReflectU>(anc, sys, phases(d)), false});
  for (Index k = d - 1; k >= 0; --k) {
    factors.push_back({q.op(), false});
    factors.push_back({std::make_shared<PhasedReflectU>(anc, sys, phases(k)), false});
  }
  return std::make_shared<CompositeU>(std::move(factors));
}

// The same product evaluated through its invariant-subspace decomposition:
// each eigenpair of the encoded block spans a 2D subspace where the sequence
// is the scalar model, the orthogonal complement picks up only the phase sum
// (and one factor of the Hermitian unitary at odd degree).  Exact linear
// algebra, independent of the degree.
Mat phase_sequence_dense(const Mat& u_herm, Index sys_dim, const RVec& phases) {
  const Index n = u_herm.rows();
  Mat a = u_herm.topLeftCorner(sys_dim, sys_dim);
  a = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  Mat out = Mat::Zero(n, n);
  Mat pk = Mat::Identity(n, n);  // complement projector, peeled below
  for (Index i = 0; i < sys_dim; ++i) {
    const double lam = std::clamp(es.eigenvalues()(i), -1.0, 1.0);
    Vec b0 = Vec::Zero(n);
    b0.head(sys_dim) = es.eigenvectors().col(i);
    const Vec ub0 = u_herm * b0;
    const double s2 = 1.0 - lam * lam;
    const Eigen::Matrix2cd m = qsp_scalar_model(phases, lam);
    if (s2 > 1e-24) {
      const Vec perp = (ub0 - lam * b0) / std::sqrt(s2);
      out += m(0, 0) * b0 * b0.adjoint() + m(0, 1) * b0 * perp.adjoint() + m(1, 0) * perp * b0.adjoint() +
             m(1, 1) * perp * perp.adjoint();
      pk -= b0 * b0.adjoint() + perp * perp.adjoint();
    } else {
      out += m(0, 0) * b0 * b0.adjoint();
      pk -= b0 * b0.adjoint();
    }
  }
  double phase_sum = 0;
  for (Index k = 0; k < phases.size(); ++k) phase_sum += phases(k);
  const cplx kphase = std::polar(1.0, -phase_sum);
  const Index d = phases.size() - 1;
  if (d % 2 == 0)
    out += kphase * pk;
  else
    out += kphase * (u_herm * pk);
  return out;
}

// Component extraction via an LCU of the sequence and its adjoint:
// (H (x) I) [ |0><0| (x) pU + |1><1| (x) conj(p)U^dag ] (H (x) I)
// with p = 1 for the real part and p = -i for the imaginary part.
UnitaryPtr component_lcu(UnitaryPtr u, bool imag_part) {
  const Index n = u->dim();
  const cplx p = imag_part ? cplx(0, -1) : cplx(1, 0);
  auto arm0 = std::make_shared<CompositeU>(std::vector<CompositeU::Factor>{{u, false}}, p);
  auto arm1 = std::make_shared<CompositeU>(std::vector<CompositeU::Factor>{{u, true}}, std::conj(p));
  auto select = std::make_shared<BlockSelectU>(2, n, std::vector<UnitaryPtr>{arm0, arm1});
  const Dims dims{2, n};
  auto h = std::make_shared<EmbedU>(std::make_shared<DenseU>(hadamard_gate()), dims, std::vector<int>{0});
  return std::make_shared<CompositeU>(
      std::vector<CompositeU::Factor>{{h, false}, {select, false}, {h, false}});
}

struct SequenceEncoding {
  BlockEncoding be;
  long queries;
  double residual;
};

// Definite-parity real polynomial applied to the spectrum of a Hermitian
// encoding via an explicit phase sequence plus component extraction.
SequenceEncoding qsp_sequence_encoding(const BlockEncoding& q, const ChebyshevPolynomial& poly) {
  const QspPhases ph = find_qsp_phases(poly);
  const int d = static_cast<int>(ph.phases.size()) - 1;
  UnitaryPtr seq;
  if (q.total_dim() <= dense_unitary_limit()) {
    seq = std::make_shared<DenseU>(phase_sequence_dense(q.unitary(), q.target_dim(), ph.phases));
  } else {
    seq = phase_sequence(q, ph.phases);
  }
  auto comp = component_lcu(seq, d % 2 == 1);
  const double eps = 4.0 * d * std::sqrt(q.epsilon() / q.alpha()) + ph.residual;
  BlockEncoding be(comp, 1.0, 2 * q.ancilla_dim(), eps);
  return SequenceEncoding{std::move(be), static_cast<long>(d), ph.residual};
}

// One round of oblivious amplitude amplification: -A S0 A^dag S0 A, taking a
// block ~ V/2 (V unitary) to a block ~ V.
UnitaryPtr oaa_round(UnitaryPtr a, Index anc_dim, Index sys_dim) {
  auto s0 = std::make_shared<ReflectU>(anc_dim, sys_dim);
  return std::make_shared<CompositeU>(
      std::vector<CompositeU::Factor>{{a, false}, {s0, false}, {a, true}, {s0, false}, {a, false}},
      cplx(-1.0, 0.0));
}

Mat hermitian_part_block(const BlockEncoding& be) {
  Mat b = be.alpha() * be.block();
  return 0.5 * (b + b.adjoint());
}

}  // namespace

ExpPolyPair approx_exp(double alpha_t, double eps) {
  if (alpha_t < 0) throw std::invalid_argument("approx_exp: alpha_t must be non-negative");
  if (eps >= 1.0 || eps <= 0.0) throw std::invalid_argument("approx_exp: eps must be in (0,1)");
  const int bound = static_cast<int>(std::ceil(2.0 * alpha_t + 3.0 * std::log(48.0 * (1.0 + std::sqrt(2.0)) / eps)));

  auto build = [&](int r) {
    RVec c = RVec::Zero(std::max(1, r + 1));
    RVec s = RVec::Zero(std::max(2, r + 1));
    c(0) = std::cyl_bessel_j(0.0, alpha_t);
    for (int k = 1; 2 * k <= r; ++k) c(2 * k) = 2.0 * ((k % 2 == 0) ? 1.0 : -1.0) * std::cyl_bessel_j(2.0 * k, alpha_t);
    for (int k = 0; 2 * k + 1 <= r; ++k)
      s(2 * k + 1) = 2.0 * ((k % 2 == 0) ? 1.0 : -1.0) * std::cyl_bessel_j(2.0 * k + 1.0, alpha_t);
    return std::pair<RVec, RVec>{c, s};
  };
  auto sampled_error = [&](const RVec& c, const RVec& s) {
    ChebyshevPolynomial pc = make_chebyshev(c), ps = make_chebyshev(s);
    double worst = 0;
    const int m = 1000;
    for (int j = 0; j <= m; ++j) {
      const double x = -1.0 + 2.0 * j / m;
      const cplx target = std::exp(cplx(0, -alpha_t * x));
      const cplx got = cplx(pc.eval(x), -ps.eval(x));
      worst = std::max(worst, std::abs(target - got));
    }
    return worst;
  };

  int r = std::max(1, static_cast<int>(std::ceil(alpha_t)));
  double err = 0;
  for (;; ++r) {
    auto [c, s] = build(r);
    err = sampled_error(c, s);
    if (err <= eps) {
      ExpPolyPair out;
      out.cos_part = make_chebyshev(c);
      out.sin_part = make_chebyshev(s);
      out.cos_part.parity = Parity::even;
      out.sin_part.parity = Parity::odd;
      out.sampled_error = err;
      out.degree_bound = bound;
      if (r > bound) throw std::runtime_error("approx_exp: search passed the analytic degree bound");
      return out;
    }
    if (r > bound + 8) throw std::runtime_error("approx_exp: no truncation within the degree bound");
  }
}

namespace {

ChebyshevPolynomial sign_candidate(const RVec& fit, int d, double headroom, bool stretch) {
  RVec c = fit.head(d + 1);
  for (int i = 0; i <= d; i += 2) c(i) = 0.0;  // enforce odd parity exactly
  ChebyshevPolynomial s = make_chebyshev(c);
  const double cap = 1.0 - std::max(1e-12, headroom);
  if (s.sup_bound > cap || stretch) s = s.scaled(cap / s.sup_bound);
  s.parity = Parity::odd;
  return s;
}

bool sign_clauses_pass(const ChebyshevPolynomial& s, double gamma, double xi) {
  const int m = 2000;
  for (int j = 0; j <= m; ++j) {
    const double x = -1.0 + 2.0 * j / m;
    const double v = s.eval(x);
    if (std::abs(v) > 1.0 + 1e-12) return false;
    if (std::abs(x) >= gamma && std::abs(v - (x > 0 ? 1.0 : -1.0)) > xi * (1.0 + 1e-9)) return false;
  }
  return std::abs(s.eval(gamma) - 1.0) <= xi * (1.0 + 1e-9) && std::abs(s.eval(1.0) - 1.0) <= xi * (1.0 + 1e-9);
}

ChebyshevPolynomial sign_poly_build(double gamma, double xi, int* degree_out) {
  if (gamma <= 0 || gamma >= 1 || xi <= 0 || xi >= 1)
    throw std::invalid_argument("approx_sign: need 0<gamma<1 and 0<xi<1");
  const double k = erfinv(1.0 - xi / 2.0) / gamma;
  const int dmax = 4095;
  const int nodes = 4096;
  RVec fit = chebyshev_fit([&](double x) { return std::erf(k * x); }, dmax, nodes);
  // candidate variants: xi/8 sup headroom (keeps the downstream phase solve
  // well conditioned), bare truncation, truncation stretched to the boundary;
  // the smallest passing degree across variants wins, headroom breaking ties
  struct Variant {
    double headroom;
    bool stretch;
  };
  const Variant variants[] = {{xi / 8.0, false}, {1e-12, false}, {1e-12, true}};
  int best_degree = dmax + 2;
  Variant best_variant{0, false};
  for (const Variant& v : variants) {
    if (!sign_clauses_pass(sign_candidate(fit, dmax, v.headroom, v.stretch), gamma, xi)) continue;
    // passing is monotone in the degree up to truncation noise: bisect, then
    // walk down to the first failure
    int lo = 1, hi = dmax;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (mid % 2 == 0) --mid;
      if (sign_clauses_pass(sign_candidate(fit, mid, v.headroom, v.stretch), gamma, xi))
        hi = mid;
      else
        lo = mid + 2;
    }
    while (lo - 2 >= 1 && sign_clauses_pass(sign_candidate(fit, lo - 2, v.headroom, v.stretch), gamma, xi)) lo -= 2;
    if (lo < best_degree) {
      best_degree = lo;
      best_variant = v;
    }
  }
  if (best_degree > dmax) throw std::runtime_error("approx_sign: no degree up to 4095 satisfies both clauses");
  if (degree_out) *degree_out = best_degree;
  return sign_candidate(fit, best_degree, best_variant.headroom, best_variant.stretch);
}

}  // namespace

ChebyshevPolynomial approx_sign(double gamma, double xi) { return sign_poly_build(gamma, xi, nullptr); }

int approx_sign_min_degree(double gamma, double xi) {
  int d = 0;
  sign_poly_build(gamma, xi, &d);
  return d;
}

TransformResult eigen_transform(const BlockEncoding& be, const ChebyshevPolynomial& poly, TransformMode mode) {
  if (be.attached_target()) {
    const Mat& tgt = *be.attached_target();
    if (spectral_norm(Mat(tgt - tgt.adjoint())) > 1e-10)
      throw std::invalid_argument("eigen_transform: attached target is not Hermitian");
  }
  const bool definite = poly.parity != Parity::none;
  const double sup_cap = definite ? 1.0 : 0.5;
  if (poly.sup_bound > sup_cap + 1e-12) {
    throw std::domain_error("eigen_transform: polynomial sup " + std::to_string(poly.sup_bound) +
                            " violates the " + std::to_string(sup_cap) + " hypothesis");
  }

  if (mode == TransformMode::semantic) {
    Mat h = hermitian_part_block(be) / be.alpha();
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Mat out = Mat::Zero(h.rows(), h.cols());
    for (Index i = 0; i < h.rows(); ++i) {
      double lam = std::clamp(es.eigenvalues()(i), -1.0, 1.0);
      out += poly.eval(lam) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    BlockEncoding enc = dilate(out, 1.0);
    const double eps = 4.0 * poly.degree() * std::sqrt(be.epsilon() / be.alpha()) + 1e-10;
    return TransformResult{BlockEncoding(enc.op(), 1.0, enc.ancilla_dim(), eps), 0, 0.0};
  }

  BlockEncoding q = hermitianize(be);
  if (definite) {
    auto seq = qsp_sequence_encoding(q, poly);
    return TransformResult{std::move(seq.be), seq.queries, seq.residual};
  }
  // indefinite parity: realize doubled even/odd halves and average them back
  const int d = poly.degree();
  RVec ce = RVec::Zero(d + 1), co = RVec::Zero(d + 1);
  for (int k = 0; k <= d; ++k) (k % 2 == 0 ? ce : co)(k) = 2.0 * poly.coeffs(k);
  ChebyshevPolynomial pe = make_chebyshev(ce.head(((d / 2) * 2) + 1));
  ChebyshevPolynomial po = make_chebyshev(co.head(d % 2 == 1 ? d + 1 : std::max(2, d)));
  pe.parity = Parity::even;
  po.parity = Parity::odd;
  if (pe.sup_bound >= 1.0 - 1e-9 || po.sup_bound >= 1.0 - 1e-9)
    throw std::domain_error("eigen_transform: parity halves reach the unit sup bound, pre-scale the target");
  auto se = qsp_sequence_encoding(q, pe);
  auto so = qsp_sequence_encoding(q, po);
  BlockEncoding comb = lcu_weighted({cplx(1, 0), cplx(1, 0)}, {se.be, so.be});
  // comb is a (2, ., .)-encoding of 2*poly: same unitary, block = poly
  BlockEncoding out(comb.op(), 1.0, comb.ancilla_dim(), comb.epsilon() / 2.0);
  return TransformResult{std::move(out), se.queries + so.queries, std::max(se.residual, so.residual)};
}

BlockEncoding amplify_half_encoding(const BlockEncoding& be2) {
  auto w = oaa_round(be2.op(), be2.ancilla_dim(), be2.target_dim());
  return BlockEncoding(w, be2.alpha() / 2.0, be2.ancilla_dim(), 4.0 * be2.epsilon());
}

long ham_sim_query_bound(double alpha, double t, double eps) {
  return static_cast<long>(std::ceil(6.0 * alpha * std::abs(t) + 9.0 * std::log(12.0 / eps)));
}

long angleless_query_bound(double alpha, double t, double eps) {
  return static_cast<long>(
      std::ceil(48.0 * alpha * std::abs(t) + 72.0 * std::log(48.0 * (1.0 + std::sqrt(2.0)) / eps) - 6.0));
}

HamSimResult ham_sim(const BlockEncoding& be, double t, double eps, TransformMode mode) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("ham_sim: eps must be in (0,1)");
  const long reported = ham_sim_query_bound(be.alpha(), t, eps);
  if (t == 0.0) {
    return HamSimResult{identity_encoding(be.target_dim()), 0, reported, 0, 0.0};
  }
  if (be.epsilon() > eps / (2.0 * std::abs(t)) + 1e-15) {
    throw std::domain_error("ham_sim: input encoding error " + std::to_string(be.epsilon()) +
                            " exceeds the required bound eps/(2|t|) = " + std::to_string(eps / (2.0 * std::abs(t))));
  }

  if (mode == TransformMode::semantic) {
    Mat h = hermitian_part_block(be);
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Mat u = Mat::Zero(h.rows(), h.cols());
    for (Index i = 0; i < h.rows(); ++i) {
      u += std::exp(cplx(0, -es.eigenvalues()(i) * t)) * es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    BlockEncoding enc = dilate(u, 1.0);
    return HamSimResult{BlockEncoding(enc.op(), 1.0, enc.ancilla_dim(), eps), 0, reported, 0, 0.0};
  }

  const double tau = be.alpha() * std::abs(t);
  ExpPolyPair jap = approx_exp(tau, eps / 4.0);
  // pre-amplification headroom; the amplification round suppresses it
  // quadratically, so sqrt(eps) spends under eps/4 of the budget
  const double nu = std::min(0.1, 0.4 * std::sqrt(eps));
  const double scale = (1.0 - nu) / std::max({1.0, jap.cos_part.sup_bound, jap.sin_part.sup_bound});
  ChebyshevPolynomial pc = jap.cos_part.scaled(scale);
  ChebyshevPolynomial ps = jap.sin_part.scaled(scale);

  BlockEncoding q = hermitianize(be);
  auto sc = qsp_sequence_encoding(q, pc);
  auto ss = qsp_sequence_encoding(q, ps);
  const cplx ws = (t > 0) ? cplx(0, -1) : cplx(0, 1);
  BlockEncoding comb = lcu_weighted({cplx(1, 0), ws}, {sc.be, ss.be});  // block ~ scale * e^{-iHt}/2
  auto w = oaa_round(comb.op(), comb.ancilla_dim(), comb.target_dim());
  BlockEncoding out(w, 1.0, comb.ancilla_dim(), eps);
  const long measured = 3 * (std::max(sc.queries, ss.queries) + 1);  // cos/sin arms share walk queries
  return HamSimResult{std::move(out), measured, reported, std::max(pc.degree(), ps.degree()), 1.0 - scale};
}

DiagonalFunctionEncoding angleless_encode(const std::function<cplx(double)>& f, Index d, double delta) {
  if (!is_power_of_two(d)) throw std::invalid_argument("angleless_encode: d must be a power of two");
  if (delta < 0) throw std::invalid_argument("angleless_encode: delta must be non-negative");
  DiagonalFunctionEncoding dfe;
  dfe.d = d;
  dfe.delta = delta;
  dfe.entries.resize(4 * d);
  for (Index k = 0; k < 4 * d; ++k) {
    const cplx v = f(std::cos(2.0 * kPi * k / (4.0 * d)));
    if (std::abs(v) > 1.0 + 1e-12)
      throw std::domain_error("angleless_encode: |f| > 1 detected at sample " + std::to_string(k));
    dfe.entries(k) = v;
  }
  return dfe;
}

namespace {

// Fourier coefficients g_m of the sample vector, m in [0, 4d).
Vec dfe_fourier(const DiagonalFunctionEncoding& dfe) {
  Vec g = dfe.entries;
  fft_pow2(g, false);  // g_m = sum_l f_l e^{-2 pi i m l / n}
  g /= static_cast<double>(g.size());
  return g;
}

// Laurent-window coefficients c_m for m in [-3d+1, 3d-1]: full weight inside
// |m| <= d, linear taper (3d-|m|)/(2d) outside, as produced by the
// rectangular-window sandwich.
std::vector<cplx> window_coeffs(const Vec& g, Index d) {
  const Index n = 4 * d;
  std::vector<cplx> c(6 * d - 1, cplx(0, 0));
  for (Index m = -(3 * d - 1); m <= 3 * d - 1; ++m) {
    const Index gm = ((m % n) + n) % n;
    double w = 0;
    if (std::abs(m) <= d)
      w = 1.0;
    else
      w = static_cast<double>(3 * d - std::abs(m)) / (2.0 * d);
    c[m + 3 * d - 1] = w * g(gm);
  }
  return c;
}

Mat walk_dense(const BlockEncoding& q) {
  Mat u = q.unitary();
  Mat w = u;
  w.topRows(q.target_dim()) = u.topRows(q.target_dim());
  w.bottomRows(u.rows() - q.target_dim()) = -u.bottomRows(u.rows() - q.target_dim());
  return w;
}

Mat u_f_small(const DiagonalFunctionEncoding& dfe) {
  const Index n = dfe.entries.size();
  Mat u = Mat::Zero(2 * n, 2 * n);
  // layout [b, k]: block b=0..1 each of size n; per-k 2x2 rotation with entry f_k
  for (Index k = 0; k < n; ++k) {
    const cplx f = dfe.entries(k);
    const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(f)));
    u(k, k) = f;
    u(k, n + k) = s;
    u(n + k, k) = s;
    u(n + k, n + k) = -std::conj(f);
  }
  return u;
}

Mat window_prep(Index n, Index lo, Index hi) {
  // unitary mapping e_0 to the normalized indicator of [lo, hi)
  Vec c = Vec::Zero(n);
  const double a = 1.0 / std::sqrt(static_cast<double>(hi - lo));
  for (Index k = lo; k < hi; ++k) c(k) = a;
  Vec v = c;
  v(0) -= 1.0;
  const double vn2 = v.squaredNorm();
  if (vn2 < 1e-30) return Mat::Identity(n, n);
  return Mat::Identity(n, n) - (2.0 / vn2) * (v * v.adjoint());
}

}  // namespace

Mat angleless_collapsed_block(const BlockEncoding& be, const DiagonalFunctionEncoding& dfe) {
  BlockEncoding q = hermitianize(be);
  const Index d = dfe.d;
  const Vec g = dfe_fourier(dfe);
  const auto c = window_coeffs(g, d);
  Mat w = walk_dense(q);
  const Index n = w.rows();
  Mat acc = Mat::Zero(n, n);
  Mat pow_pos = Mat::Identity(n, n), pow_neg = Mat::Identity(n, n);
  acc += c[3 * d - 1] * pow_pos;  // m = 0
  for (Index m = 1; m <= 3 * d - 1; ++m) {
    pow_pos = pow_pos * w;
    pow_neg = pow_neg * w.adjoint();
    acc += c[m + 3 * d - 1] * pow_pos;
    acc += c[-m + 3 * d - 1] * pow_neg;
  }
  acc *= 1.0 / std::sqrt(2.0);
  return acc.topLeftCorner(be.target_dim(), be.target_dim());
}

AnglelessResult angleless_transform(const BlockEncoding& be, const DiagonalFunctionEncoding& dfe) {
  BlockEncoding q = hermitianize(be);
  const Index d = dfe.d;
  const Index kk = 4 * d;
  const Index asq = q.total_dim();
  check_dim_cap(kk * 2 * asq, "angleless_transform");

  // walk operator as a dense core for the power select
  Mat w = walk_dense(q);
  const Dims dims{kk, 2, asq};
  auto v = std::make_shared<EmbedU>(std::make_shared<PowerSelectU>(w, kk), dims, std::vector<int>{0, 2});
  auto uf = std::make_shared<EmbedU>(std::make_shared<DenseU>(u_f_small(dfe)), dims, std::vector<int>{1, 0});
  auto qft = std::make_shared<EmbedU>(std::make_shared<FourierU>(kk), dims, std::vector<int>{0});
  auto prep_r = std::make_shared<EmbedU>(std::make_shared<DenseU>(window_prep(kk, 0, kk)), dims, std::vector<int>{0});
  auto prep_l = std::make_shared<EmbedU>(std::make_shared<DenseU>(window_prep(kk, d, 3 * d)), dims, std::vector<int>{0});

  std::vector<CompositeU::Factor> factors{
      {prep_r, false}, {v, false}, {qft, true}, {uf, false}, {qft, false}, {v, true}, {prep_l, true}};
  auto a = std::make_shared<CompositeU>(std::move(factors));

  // sampled Laurent truncation error of f(cos(theta)) at the encoded angles
  const Vec g = dfe_fourier(dfe);
  double e_d = 0;
  for (Index j = 0; j < kk; ++j) {
    const double th = 2.0 * kPi * j / kk;
    cplx lau(0, 0);
    for (Index mm = -d; mm <= d; ++mm) {
      const Index gm = ((mm % kk) + kk) % kk;
      lau += g(gm) * std::exp(cplx(0, mm * th));
    }
    e_d = std::max(e_d, std::abs(lau - dfe.entries(j)));
  }
  const double eps = (1.0 + std::sqrt(2.0)) * e_d + std::sqrt(2.0) * dfe.delta;
  BlockEncoding out(a, std::sqrt(2.0), kk * 2 * q.ancilla_dim(), eps);
  return AnglelessResult{std::move(out), 2 * (4 * d - 1), e_d};
}

HamSimResult angleless_ham_sim(const BlockEncoding& be, double t, double eps) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("angleless_ham_sim: eps must be in (0,1)");
  const long reported = angleless_query_bound(be.alpha(), t, eps);
  if (t == 0.0) {
    return HamSimResult{identity_encoding(be.target_dim()), 0, reported, 0, 0.0};
  }
  if (be.epsilon() > eps / (2.0 * std::abs(t)) + 1e-15) {
    throw std::domain_error("angleless_ham_sim: input encoding error exceeds eps/(2|t|)");
  }
  const double tau = be.alpha() * t;
  auto f = [&](double x) { return std::exp(cplx(0, -tau * x)); };

  const double target_ed = eps / (48.0 * (1.0 + std::sqrt(2.0)));
  Index d = 2;
  DiagonalFunctionEncoding dfe;
  AnglelessResult ar{identity_encoding(1), 0, 0};
  bool ok = false;
  while (!ok) {
    check_dim_cap(8 * d, "angleless_ham_sim: function register");
    dfe = angleless_encode(f, d, eps / (24.0 * std::sqrt(2.0)));
    // cheap pre-check of the Laurent error without building the operator
    Vec g = dfe.entries;
    fft_pow2(g, false);
    g /= static_cast<double>(g.size());
    double e_d = 0;
    const int m = 1024;
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * kPi * j / m;
      cplx lau(0, 0);
      for (Index mm = -d; mm <= d; ++mm) lau += g((((mm % (4 * d)) + 4 * d) % (4 * d))) * std::exp(cplx(0, mm * th));
      e_d = std::max(e_d, std::abs(lau - f(std::cos(th))));
    }
    if (e_d <= target_ed) ok = true;
    else d *= 2;
    if (d > (1 << 14)) throw std::runtime_error("angleless_ham_sim: function degree out of range");
  }
  ar = angleless_transform(be, dfe);

  // extra Hadamard qubit, then one round of oblivious amplitude amplification
  const Dims full{2, ar.be.total_dim()};
  auto h = std::make_shared<EmbedU>(std::make_shared<DenseU>(hadamard_gate()), full, std::vector<int>{0});
  auto a2 = std::make_shared<CompositeU>(
      std::vector<CompositeU::Factor>{{h, false},
                                      {std::make_shared<EmbedU>(ar.be.op(), full, std::vector<int>{1}), false}});
  const Index anc2 = 2 * ar.be.ancilla_dim();
  auto w = oaa_round(a2, anc2, ar.be.target_dim());
  BlockEncoding out(w, 1.0, anc2, eps);
  const long measured = 3 * ar.walk_queries;  // three transform passes in the amplification round
  return HamSimResult{std::move(out), measured, reported, static_cast<int>(d), 0.0};
}

}  // namespace liouv
