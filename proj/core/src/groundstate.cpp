#include "liouv/groundstate.hpp"

#include <Eigen/Eigenvalues>

namespace liouv {

namespace {

struct BlockSpectrum {
  RVec energies;
  Mat vectors;
};

BlockSpectrum spectrum_of(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("groundstate: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<Mat> split_blocks(const Mat& full, Index blocks) {
  // [electronic, control] ordering: block x collects indices e*blocks + x
  const Index ex = full.rows();
  const Index e = ex / blocks;
  std::vector<Mat> out;
  out.reserve(blocks);
  for (Index x = 0; x < blocks; ++x) {
    Mat b(e, e);
    for (Index i = 0; i < e; ++i)
      for (Index j = 0; j < e; ++j) b(i, j) = full(i * blocks + x, j * blocks + x);
    out.push_back(std::move(b));
  }
  return out;
}

Mat householder_prep(const Vec& state) {
  const Index n = state.size();
  Vec c = state / state.norm();
  // rotate so the pivot entry is real non-negative, then reflect e_0 -> c
  cplx pivot = c(0);
  cplx phase = (std::abs(pivot) > 1e-14) ? pivot / std::abs(pivot) : cplx(1, 0);
  Vec cr = c / phase;
  Vec v = cr;
  v(0) -= 1.0;
  Mat p;
  const double vn2 = v.squaredNorm();
  if (vn2 < 1e-30)
    p = Mat::Identity(n, n);
  else
    p = Mat::Identity(n, n) - (2.0 / vn2) * (v * v.adjoint());
  return phase * p;
}

}  // namespace

Mat InitialStateOracle::controlled_unitary() const {
  const Index x = blocks(), e = block_dim();
  Mat u = Mat::Zero(e * x, e * x);
  for (Index b = 0; b < x; ++b)
    for (Index i = 0; i < e; ++i)
      for (Index j = 0; j < e; ++j) u(i * x + b, j * x + b) = block_preps[b](i, j);
  return u;
}

InitialStateOracle make_initial_oracle(const std::vector<Vec>& states) {
  InitialStateOracle oracle;
  oracle.block_preps.reserve(states.size());
  for (const auto& s : states) oracle.block_preps.push_back(householder_prep(s));
  return oracle;
}

InitialStateOracle planted_oracle(const std::vector<Mat>& h_blocks, double delta, Rng& rng) {
  if (delta <= 0 || delta > 1) throw std::invalid_argument("planted_oracle: delta must be in (0,1]");
  std::vector<Vec> states;
  for (const auto& h : h_blocks) {
    const auto sp = spectrum_of(h);
    const Vec gs = sp.vectors.col(0);
    const Index n = h.rows();
    Vec w(n);
    for (Index i = 0; i < n; ++i) w(i) = cplx(rng.normal(), rng.normal());
    w -= gs * gs.dot(w);
    const double wn = w.norm();
    Vec phi;
    if (wn < 1e-12 || delta >= 1.0 - 1e-15) {
      phi = gs;
    } else {
      phi = delta * gs + std::sqrt(1.0 - delta * delta) * (w / wn);
    }
    states.push_back(phi.normalized());
  }
  return make_initial_oracle(states);
}

void validate_gap_config(const GroundStateConfig& cfg, const std::vector<Mat>& h_blocks) {
  for (size_t b = 0; b < h_blocks.size(); ++b) {
    const auto sp = spectrum_of(h_blocks[b]);
    const double e0 = sp.energies(0);
    const double e1 = (sp.energies.size() > 1) ? sp.energies(1) : e0 + 2 * cfg.gamma;
    if (!(e0 <= cfg.mu - cfg.gamma / 2 + 1e-12 && cfg.mu + cfg.gamma / 2 <= e1 + 1e-12)) {
      throw std::domain_error("gap config invalid at block " + std::to_string(b) + ": E0=" + std::to_string(e0) +
                              " E1=" + std::to_string(e1) + " mu=" + std::to_string(cfg.mu) +
                              " gamma=" + std::to_string(cfg.gamma));
    }
  }
  if (cfg.delta_overlap <= 0 || cfg.delta_overlap > 1)
    throw std::domain_error("gap config invalid: delta_overlap out of (0,1]");
}

GroundStateConfig config_from_spectrum(const std::vector<Mat>& h_blocks, double delta_overlap, double eps_prep) {
  double e0_max = -1e300, e1_min = 1e300;
  for (const auto& h : h_blocks) {
    const auto sp = spectrum_of(h);
    e0_max = std::max(e0_max, sp.energies(0));
    if (sp.energies.size() > 1) e1_min = std::min(e1_min, sp.energies(1));
  }
  if (!(e0_max < e1_min)) throw std::domain_error("config_from_spectrum: no common spectral gap across blocks");
  GroundStateConfig cfg;
  cfg.mu = 0.5 * (e0_max + e1_min);       // mid-gap
  cfg.gamma = 0.5 * (e1_min - e0_max);    // deliberately degraded to half the true gap
  cfg.delta_overlap = delta_overlap;
  cfg.eps_prep = eps_prep;
  return cfg;
}

std::vector<Vec> dense_ground_states(const std::vector<Mat>& h_blocks) {
  std::vector<Vec> out;
  for (const auto& h : h_blocks) out.push_back(spectrum_of(h).vectors.col(0));
  return out;
}

int amplification_round_cap(double delta) {
  return static_cast<int>(std::ceil(kPi / (4.0 * std::asin(std::min(1.0, delta))))) + 1;
}

ReflectorResult reflector(const BlockEncoding& be_h, const GroundStateConfig& cfg, double xi, TransformMode mode) {
  if (be_h.epsilon() > cfg.gamma / 4 + 1e-15) {
    throw std::domain_error("reflector: encoding error " + std::to_string(be_h.epsilon()) +
                            " exceeds gamma/4 = " + std::to_string(cfg.gamma / 4));
  }
  const double alpha_shift = be_h.alpha() + std::abs(cfg.mu);
  BlockEncoding shifted = lcu_weighted({cplx(1, 0), cplx(-cfg.mu, 0)},
                                       {be_h, identity_encoding(be_h.target_dim())});
  if (be_h.attached_target()) {
    shifted.attach_target(Mat(*be_h.attached_target() - cfg.mu * Mat::Identity(be_h.target_dim(), be_h.target_dim())));
  }
  // eigenvalues of the shifted operator stay at least (gamma/2 - eps_H) from
  // zero (Weyl); at the hypothesis boundary eps_H = gamma/4 this reduces to
  // the worst-case gamma/(4 alpha_shift) margin
  const double gq = (cfg.gamma / 2.0 - be_h.epsilon()) / alpha_shift;
  ChebyshevPolynomial s = approx_sign(gq, xi);
  ChebyshevPolynomial neg = s.scaled(-1.0);  // reflector keeps the ground sector at +1
  auto tr = eigen_transform(shifted, neg, mode);
  if (be_h.attached_target()) {
    const auto sp = spectrum_of(*be_h.attached_target());
    Mat r = Mat::Zero(be_h.target_dim(), be_h.target_dim());
    for (Index i = 0; i < sp.energies.size(); ++i) {
      const double sgn = (sp.energies(i) <= cfg.mu) ? 1.0 : -1.0;
      r += sgn * sp.vectors.col(i) * sp.vectors.col(i).adjoint();
    }
    tr.be.attach_target(std::move(r));
  }
  return ReflectorResult{std::move(tr.be), static_cast<int>(s.degree()), xi, alpha_shift};
}

namespace {

// Smallest round count (and its matched phase) rotating an overlap-delta
// state exactly onto the target in the two-dimensional amplification algebra.
std::pair<int, double> solve_amplification_schedule(double delta) {
  const double theta = std::asin(std::clamp(delta, 1e-9, 1.0));
  if (delta >= 1.0 - 1e-12) return {0, kPi};
  auto final_amp = [&](int k, double a) {
    Eigen::Matrix2cd sg = Eigen::Matrix2cd::Zero(), sphi;
    sg(0, 0) = std::polar(1.0, a);
    sg(1, 1) = 1.0;
    Eigen::Vector2cd phi(std::sin(theta), std::cos(theta));
    sphi = Eigen::Matrix2cd::Identity() - (1.0 - std::polar(1.0, a)) * (phi * phi.adjoint());
    Eigen::Matrix2cd g = -(sphi * sg);
    Eigen::Vector2cd v = phi;
    for (int i = 0; i < k; ++i) v = g * v;
    return std::abs(v(0));
  };
  const int cap = amplification_round_cap(delta);
  for (int k = 1; k <= cap; ++k) {
    if (final_amp(k, kPi) < 1.0 - 1e-9 && k < cap) {
      // plain phase cannot finish in k rounds unless it already overshoots
      if (std::sin((2 * k + 1) * theta) < 1.0 - 1e-12 && (2 * k + 1) * theta < kPi / 2) continue;
    }
    // golden-section maximize |amp| over the matched phase
    double lo = 0.02, hi = kPi;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a1 = hi - gr * (hi - lo), a2 = lo + gr * (hi - lo);
    double f1 = final_amp(k, a1), f2 = final_amp(k, a2);
    for (int it = 0; it < 200; ++it) {
      if (f1 < f2) {
        lo = a1;
        a1 = a2;
        f1 = f2;
        a2 = lo + gr * (hi - lo);
        f2 = final_amp(k, a2);
      } else {
        hi = a2;
        a2 = a1;
        f2 = f1;
        a1 = hi - gr * (hi - lo);
        f1 = final_amp(k, a1);
      }
    }
    const double best = 0.5 * (lo + hi);
    if (final_amp(k, best) >= 1.0 - 1e-10) return {k, best};
  }
  return {cap, kPi};  // fall back to the plain schedule at the cap
}

// (2, ., .)-encoding of e^{i a (I + R)/2}: LCU of the identity, the reflector
// and a zero-block pad that fixes the combination scale at exactly 2.
BlockEncoding ground_phase_encoding(const ReflectorResult& refl, double a) {
  const Index n = refl.be.target_dim();
  const double c = std::cos(a / 2.0), s = std::sin(a / 2.0);
  Mat zu = Mat::Zero(2 * n, 2 * n);
  zu.topRightCorner(n, n) = Mat::Identity(n, n);
  zu.bottomLeftCorner(n, n) = Mat::Identity(n, n);
  BlockEncoding zero(std::move(zu), 1.0, 2, 0.0, true);
  const cplx w0 = std::polar(1.0, a / 2.0) * c;
  const cplx w1 = std::polar(1.0, a / 2.0 + kPi / 2.0) * s;
  const double wz = 2.0 - std::abs(w0) - std::abs(w1);
  return lcu_weighted({w0, w1, cplx(wz, 0)}, {identity_encoding(n), refl.be, zero});
}

}  // namespace

PreparationCircuit preparation_circuit(const BlockEncoding& be_h_ctrl, const GroundStateConfig& cfg,
                                       const InitialStateOracle& oracle, TransformMode mode, double xi) {
  if (!be_h_ctrl.attached_target())
    throw std::invalid_argument("preparation_circuit: encoding needs an attached target at desk scale");
  const Index nx = oracle.blocks();
  const Index ne = oracle.block_dim();
  if (nx * ne != be_h_ctrl.target_dim()) throw std::invalid_argument("preparation_circuit: dimension mismatch");
  const Index sys = ne * nx;

  ReflectorResult refl = reflector(be_h_ctrl, cfg, xi, mode);
  const auto [rounds, alpha] = solve_amplification_schedule(cfg.delta_overlap);

  // ground-sector phase oracle, amplified back to scale 1
  BlockEncoding sg = amplify_half_encoding(ground_phase_encoding(refl, alpha));
  const Index ag = sg.ancilla_dim();

  // initial-state phase rotation U_I (I + (e^{ia}-1)|0_el><0_el|) U_I^dag
  const Mat uic = oracle.controlled_unitary();
  Mat zero_phase = Mat::Identity(sys, sys);
  for (Index b = 0; b < nx; ++b) zero_phase(b, b) = std::polar(1.0, alpha);
  const Mat sphi_sys = uic * zero_phase * uic.adjoint();

  const Dims gdims{ag, sys};
  auto sphi = std::make_shared<EmbedU>(std::make_shared<DenseU>(sphi_sys), gdims, std::vector<int>{1});
  auto g = std::make_shared<CompositeU>(
      std::vector<CompositeU::Factor>{{sg.op(), false}, {sphi, false}}, cplx(-1, 0));

  std::vector<CompositeU::Factor> chain;
  chain.push_back({std::make_shared<EmbedU>(std::make_shared<DenseU>(uic), gdims, std::vector<int>{1}), false});
  for (int k = 0; k < rounds; ++k) chain.push_back({g, false});
  auto w0 = std::make_shared<CompositeU>(std::move(chain));

  // final projection onto the reflector's ground sector
  BlockEncoding refl_padded = pad_ancilla(refl.be, ag);
  auto h2 = std::make_shared<DenseU>([] {
    Mat h(2, 2);
    const double v = 1.0 / std::sqrt(2.0);
    h << v, v, v, -v;
    return h;
  }());
  const Dims pdims{2, ag * sys};
  auto sel = std::make_shared<BlockSelectU>(2, ag * sys, std::vector<UnitaryPtr>{nullptr, refl_padded.op()});
  auto proj = std::make_shared<CompositeU>(std::vector<CompositeU::Factor>{
      {std::make_shared<EmbedU>(h2, pdims, std::vector<int>{0}), false},
      {sel, false},
      {std::make_shared<EmbedU>(h2, pdims, std::vector<int>{0}), false}});

  PreparationCircuit circ;
  circ.rounds = rounds;
  circ.phase = alpha;
  circ.anc_dim = 2 * ag;
  circ.sys_dim = sys;
  circ.op = std::make_shared<CompositeU>(std::vector<CompositeU::Factor>{
      {std::make_shared<EmbedU>(w0, pdims, std::vector<int>{1}), false}, {proj, false}});
  circ.queries_uh = static_cast<long>(3 * rounds + 1) * (refl.sign_degree + 1);
  circ.queries_ui = 2 * rounds + 1;
  circ.block_amplitudes.resize(nx);
  Vec in = Vec::Zero(circ.anc_dim * sys), out;
  for (Index b = 0; b < nx; ++b) {
    in.setZero();
    in(b) = 1.0;
    circ.op->apply(in, out, false);
    double a2 = 0;
    for (Index e = 0; e < ne; ++e) a2 += std::norm(out(e * nx + b));
    circ.block_amplitudes(b) = std::sqrt(a2);
  }
  return circ;
}

GroundStatePrep prepare_ground_state_superposed(const BlockEncoding& be_h_ctrl, const GroundStateConfig& cfg,
                                                const InitialStateOracle& oracle, TransformMode mode,
                                                bool strict_overlap) {
  if (!be_h_ctrl.attached_target())
    throw std::invalid_argument("prepare_ground_state: encoding needs an attached target at desk scale");
  const Index nx = oracle.blocks();
  const Index ne = oracle.block_dim();
  const auto blocks = split_blocks(*be_h_ctrl.attached_target(), nx);
  validate_gap_config(cfg, blocks);
  const auto truth = dense_ground_states(blocks);
  for (Index b = 0; b < nx; ++b) {
    const double ov = std::abs(truth[b].dot(oracle.state(b)));
    if (ov < cfg.delta_overlap - 1e-9) {
      if (strict_overlap)
        throw std::domain_error("prepare_ground_state: oracle overlap " + std::to_string(ov) + " at block " +
                                std::to_string(b) + " below the configured bound " +
                                std::to_string(cfg.delta_overlap));
    }
  }

  const double xi = cfg.delta_overlap * cfg.eps_prep / 2.0;
  PreparationCircuit circ = preparation_circuit(be_h_ctrl, cfg, oracle, mode, xi);

  GroundStatePrep out;
  out.rounds = circ.rounds;
  out.queries_uh = circ.queries_uh;
  out.queries_ui = circ.queries_ui;
  out.fidelities.resize(nx);
  out.success_probs.resize(nx);
  Vec in = Vec::Zero(circ.anc_dim * ne * nx), full;
  for (Index b = 0; b < nx; ++b) {
    in.setZero();
    in(b) = 1.0;  // (anc 0, electronic 0, control b)
    circ.op->apply(in, full, false);
    Vec el = Vec::Zero(ne);
    for (Index e = 0; e < ne; ++e) el(e) = full(e * nx + b);  // ancilla-zero section
    const double p = el.squaredNorm();
    out.success_probs(b) = p;
    Vec state = (p > 0) ? Vec(el / std::sqrt(p)) : el;
    out.fidelities(b) = std::abs(truth[b].dot(state));
    out.states.push_back(std::move(state));
  }
  return out;
}

GroundStatePrep prepare_ground_state(const BlockEncoding& be_h, const GroundStateConfig& cfg,
                                     const InitialStateOracle& oracle, TransformMode mode, bool strict_overlap) {
  return prepare_ground_state_superposed(be_h, cfg, oracle, mode, strict_overlap);
}

}  // namespace liouv
