#include "liouv/thermo.hpp"

#include <algorithm>

namespace liouv {

void ThermoConfig::validate() const {
  if (n_lambda < 0) throw std::invalid_argument("thermo: n_lambda must be non-negative");
  if (t_eq < 0) throw std::invalid_argument("thermo: t_eq must be non-negative");
  if (eps <= 0) throw std::invalid_argument("thermo: eps must be positive");
  if (xi <= 0 || xi >= 1) throw std::invalid_argument("thermo: xi must lie in (0,1)");
}

void AlchemicalPair::validate() const {
  a.phase_space.validate();
  b.phase_space.validate();
  a.electronic.validate();
  b.electronic.validate();
  const Layout la = layout_of(a.phase_space), lb = layout_of(b.phase_space);
  if (la.dims != lb.dims) throw std::invalid_argument("alchemical pair: shared registers need identical grid specs");
  for (size_t k = 0; k < la.axes.size(); ++k) {
    if (std::abs(la.axes[k].h - lb.axes[k].h) > 1e-15 || std::abs(la.axes[k].origin - lb.axes[k].origin) > 1e-15)
      throw std::invalid_argument("alchemical pair: shared registers need identical grid specs");
  }
}

NuclearHamiltonian nuclear_hamiltonian(const SystemSpec& sys, Rng& rng) {
  NuclearHamiltonian out;
  const Layout lay = layout_of(sys.phase_space);
  BlockEncoding kin = kinetic_hamiltonian(sys.phase_space);
  BlockEncoding pot = potential_hamiltonian(sys.phase_space);
  DiagonalKickback gse = h_gse(sys.electronic, sys.phase_space, rng);
  out.alpha_kin = kin.alpha();
  out.alpha_pot = pot.alpha();
  out.lambda_gse = gse.scale;

  // re-encode the kickback diagonal over the position axes of the full layout
  const auto xaxes = lay.axes_of(Var::x);
  Vec gse_full = expand_axes_diag(gse.entries.cast<cplx>(), lay.dims, xaxes);
  RVec gse_real(gse_full.size());
  for (Index i = 0; i < gse_full.size(); ++i) gse_real(i) = gse_full(i).real();
  auto gse_op = std::make_shared<DilatedTermU>(gse_real, lay.dims, gse.scale);
  BlockEncoding gse_be(gse_op, gse.scale, 2, gse.eps_bound, true);

  out.be = lcu_weighted({cplx(1, 0), cplx(1, 0), cplx(1, 0)}, {kin, pot, gse_be});
  out.eps_bound = gse.eps_bound + kin.epsilon() + pot.epsilon();

  const Vec kin_full = expand_axes_diag(kinetic_entries(sys.phase_space).values.cast<cplx>(), lay.dims,
                                        kinetic_entries(sys.phase_space).axes);
  const Vec pot_full = expand_axes_diag(potential_entries(sys.phase_space).values.cast<cplx>(), lay.dims,
                                        potential_entries(sys.phase_space).axes);
  out.diagonal.resize(lay.total());
  for (Index i = 0; i < lay.total(); ++i) out.diagonal(i) = kin_full(i).real() + pot_full(i).real() + gse_full(i).real();
  out.be.attach_target(Mat(out.diagonal.cast<cplx>().asDiagonal()));
  return out;
}

RVec microstate_energies(const SystemSpec& sys) {
  const Layout lay = layout_of(sys.phase_space);
  const auto kin = kinetic_entries(sys.phase_space);
  const auto pot = potential_entries(sys.phase_space);
  const RVec gse = gse_reference(sys.electronic, sys.phase_space);
  const Vec kin_full = expand_axes_diag(kin.values.cast<cplx>(), lay.dims, kin.axes);
  const Vec pot_full = expand_axes_diag(pot.values.cast<cplx>(), lay.dims, pot.axes);
  const Vec gse_full = expand_axes_diag(gse.cast<cplx>(), lay.dims, lay.axes_of(Var::x));
  RVec out(lay.total());
  for (Index i = 0; i < lay.total(); ++i) out(i) = kin_full(i).real() + pot_full(i).real() + gse_full(i).real();
  return out;
}

ThermoWorkspace build_workspace(const AlchemicalPair& pair, Rng& rng) {
  pair.validate();
  ThermoWorkspace ws;
  ws.layout = layout_of(pair.a.phase_space);
  ws.l_a = full_liouvillian(pair.a.electronic, pair.a.phase_space, rng);
  ws.l_b = full_liouvillian(pair.b.electronic, pair.b.phase_space, rng);
  ws.h_a = nuclear_hamiltonian(pair.a, rng);
  ws.h_b = nuclear_hamiltonian(pair.b, rng);
  ws.delta_be = lcu_weighted({cplx(1, 0), cplx(-1, 0)}, {ws.h_b.be, ws.h_a.be});
  ws.delta_diagonal = ws.h_b.diagonal - ws.h_a.diagonal;
  ws.alpha_delta = ws.delta_be.alpha();
  ws.delta_be.attach_target(Mat(ws.delta_diagonal.cast<cplx>().asDiagonal()));
  return ws;
}

BlockEncoding delta_hamiltonian(const ThermoWorkspace& ws) { return ws.delta_be; }

InterpolatedLiouvillian interpolated_liouvillian(const ThermoWorkspace& ws, double lambda) {
  if (lambda < 0 || lambda > 1) throw std::invalid_argument("interpolated_liouvillian: lambda outside [0,1]");
  InterpolatedLiouvillian out;
  out.lambda = lambda;
  out.enc.layout = ws.layout;
  out.enc.be = lcu_weighted({cplx(1.0 - lambda, 0), cplx(lambda, 0)}, {ws.l_a.enc.be, ws.l_b.enc.be});
  out.alpha = (1.0 - lambda) * ws.l_a.enc.be.alpha() + lambda * ws.l_b.enc.be.alpha();
  if (ws.l_a.enc.dense.size() > 0 && ws.l_b.enc.dense.size() > 0) {
    out.enc.dense = (1.0 - lambda) * ws.l_a.enc.dense + lambda * ws.l_b.enc.dense;
    if (ws.layout.total() <= 1024) out.enc.be.attach_target(out.enc.dense);
  }
  return out;
}

int riemann_point_count(const ThermoWorkspace& ws, double t_eq, double eps_disc, int cap) {
  const double dl = spectral_norm(Mat(ws.l_b.enc.dense - ws.l_a.enc.dense));
  const double dh = (ws.delta_diagonal).cwiseAbs().maxCoeff();
  const double bound = dl * dh * t_eq / std::max(1e-12, eps_disc);
  return std::clamp(static_cast<int>(std::ceil(bound)), 1, cap);
}

SuperposedState superposed_equilibrate(const ThermoWorkspace& ws, const ThermoConfig& cfg, const KvNState& rho0,
                                       Engine engine, TransformMode mode) {
  cfg.validate();
  SuperposedState out;
  const int n = std::max(1, cfg.n_lambda);
  out.lambdas.resize(n);
  out.success_probs.resize(n);
  for (int k = 0; k < n; ++k) {
    const double lam = static_cast<double>(k) / n;  // left rectangle rule
    out.lambdas(k) = lam;
    InterpolatedLiouvillian il = interpolated_liouvillian(ws, lam);
    const double eps_evolve = std::max(1e-9, 2.0 * cfg.t_eq * il.enc.be.epsilon() * 1.0001);
    auto ev = evolve(il.enc, rho0, cfg.t_eq, std::min(0.5, eps_evolve), engine, mode);
    out.success_probs(k) = ev.state.norm();
    out.measured_queries += ev.measured_queries;
    out.branches.push_back(std::move(ev.state));
  }
  return out;
}

DuplicatedState duplicate_bath(const KvNState& state) {
  DuplicatedState out;
  int s_axis = -1;
  for (size_t a = 0; a < state.layout.axes.size(); ++a)
    if (state.layout.axes[a].var == Var::s) s_axis = static_cast<int>(a);
  if (s_axis < 0) {
    // no bath register in this ensemble
    out.amplitudes = state.amplitudes;
    out.s_dim = 1;
    return out;
  }
  const Index g = state.layout.dims[s_axis];
  const auto st = strides(state.layout.dims);
  out.s_dim = g;
  out.amplitudes = Vec::Zero(state.amplitudes.size() * g);
  for (Index i = 0; i < state.amplitudes.size(); ++i) {
    const Index sval = (i / st[s_axis]) % g;
    out.amplitudes(i * g + sval) = state.amplitudes(i);
  }
  return out;
}

double hadamard_test(const SuperposedState& state, const BlockEncoding& delta_be) {
  if (state.branches.empty()) throw std::invalid_argument("hadamard_test: empty state");
  cplx acc(0, 0);
  for (const auto& br : state.branches) {
    acc += br.amplitudes.dot(delta_be.apply_block(br.amplitudes));
  }
  acc /= static_cast<double>(state.branches.size());
  return 0.5 * (1.0 + acc.real());
}

namespace {

double qae_single_run(double theta, int m, Rng& rng, long& accesses) {
  const Index big = static_cast<Index>(1) << m;
  // exact phase-estimation statevector over [phase register, 2D Grover plane]
  Vec good(big), bad(big);
  for (Index k = 0; k < big; ++k) {
    const double ang = (2.0 * k + 1.0) * theta;
    good(k) = std::sin(ang) / std::sqrt(static_cast<double>(big));
    bad(k) = std::cos(ang) / std::sqrt(static_cast<double>(big));
  }
  fft_pow2(good, false);
  good /= std::sqrt(static_cast<double>(big));
  fft_pow2(bad, false);
  bad /= std::sqrt(static_cast<double>(big));
  RVec probs(big);
  for (Index j = 0; j < big; ++j) probs(j) = std::norm(good(j)) + std::norm(bad(j));
  accesses += big - 1;  // sum of controlled Grover powers
  double r = rng.uniform();
  Index pick = big - 1;
  for (Index j = 0; j < big; ++j) {
    r -= probs(j);
    if (r <= 0) {
      pick = j;
      break;
    }
  }
  const double phase = kPi * static_cast<double>(pick) / static_cast<double>(big);
  const double s = std::sin(phase);
  return s * s;
}

}  // namespace

EstimateResult amplitude_estimate(double p_true, double alpha_delta, const ThermoConfig& cfg, Rng& rng) {
  cfg.validate();
  EstimateResult out;
  const double eps_qae = cfg.eps / 6.0;
  const double resolution = eps_qae / (2.0 * alpha_delta);
  if (cfg.mode == EstimationMode::ideal) {
    out.p_hat = p_true;
    return out;
  }
  if (cfg.mode == EstimationMode::sampled) {
    out.shots = (cfg.shots > 0) ? cfg.shots
                                : static_cast<long>(std::ceil(1.0 / std::max(1e-12, resolution * resolution)));
    out.medians = 2 * static_cast<int>(std::ceil(4.0 * std::log(1.0 / cfg.xi))) + 1;
    std::vector<double> batch;
    for (int r = 0; r < out.medians; ++r) {
      long hits = 0;
      for (long s = 0; s < out.shots; ++s) hits += rng.bernoulli(p_true) ? 1 : 0;
      batch.push_back(static_cast<double>(hits) / out.shots);
    }
    std::nth_element(batch.begin(), batch.begin() + batch.size() / 2, batch.end());
    out.p_hat = batch[batch.size() / 2];
    return out;
  }
  // qae
  int m = cfg.qae_ancillas;
  if (m <= 0) m = static_cast<int>(std::ceil(std::log2(2.0 * kPi * alpha_delta / std::max(1e-12, eps_qae)))) + 2;
  m = std::clamp(m, 3, 22);
  out.ancillas = m;
  const double theta = std::asin(std::sqrt(std::clamp(p_true, 0.0, 1.0)));
  out.medians = 2 * static_cast<int>(std::ceil(2.0 * std::log(1.0 / cfg.xi))) + 1;
  std::vector<double> batch;
  for (int r = 0; r < out.medians; ++r) batch.push_back(qae_single_run(theta, m, rng, out.grover_accesses));
  std::nth_element(batch.begin(), batch.begin() + batch.size() / 2, batch.end());
  out.p_hat = batch[batch.size() / 2];
  return out;
}

ThermoResult free_energy_difference(const AlchemicalPair& pair, const ThermoConfig& cfg, const KvNState& rho0,
                                    Engine engine, TransformMode mode) {
  cfg.validate();
  Rng rng(cfg.seed);
  ThermoWorkspace ws = build_workspace(pair, rng);

  ThermoResult res;
  res.alpha_delta = ws.alpha_delta;
  res.t_eq = cfg.t_eq;
  // budget split: a sixth each to discretization and estimation, a third to
  // the block-encoding chain, the rest as headroom for the measured
  // equilibration drift
  const double eps_disc = cfg.eps / 6.0;
  const double eps_qae = cfg.eps / 6.0;
  res.n_lambda = (cfg.n_lambda > 0) ? cfg.n_lambda : riemann_point_count(ws, cfg.t_eq, eps_disc);

  ThermoConfig run = cfg;
  run.n_lambda = res.n_lambda;

  // two-segment evolution per point: 0.9 t_eq then 0.1 t_eq, giving the
  // equilibration drift diagnostic for free
  const int n = res.n_lambda;
  res.lambda_expectations.resize(n);
  res.block_fidelities.resize(n);
  double eps_l_used = 0, drift = 0;
  std::vector<KvNState> finals;
  for (int k = 0; k < n; ++k) {
    const double lam = static_cast<double>(k) / n;
    InterpolatedLiouvillian il = interpolated_liouvillian(ws, lam);
    const double floor_l = cfg.eps * cfg.eps / (72.0 * ws.alpha_delta * ws.alpha_delta);
    const double eps1 = std::max({1e-10, 2.0 * 0.9 * cfg.t_eq * il.enc.be.epsilon() * 1.01, floor_l / 2});
    const double eps2 = std::max({1e-10, 2.0 * 0.1 * cfg.t_eq * il.enc.be.epsilon() * 1.01, floor_l / 2});
    eps_l_used = std::max(eps_l_used, eps1 + eps2);
    auto e1 = evolve(il.enc, rho0, 0.9 * cfg.t_eq, std::min(0.5, eps1), engine, mode);
    KvNState mid = e1.state;
    const double mid_norm = mid.norm();
    if (mid_norm > 0) mid.amplitudes /= mid_norm;
    auto e2 = evolve(il.enc, mid, 0.1 * cfg.t_eq, std::min(0.5, eps2), engine, mode);
    KvNState fin = e2.state;
    fin.amplitudes *= mid_norm;

    auto expectation = [&](const KvNState& s) {
      const Vec dv = ws.delta_diagonal.cast<cplx>();
      cplx acc(0, 0);
      for (Index i = 0; i < s.amplitudes.size(); ++i) acc += std::norm(s.amplitudes(i)) * dv(i);
      const double nn = s.amplitudes.squaredNorm();
      return (nn > 0) ? acc.real() / nn : 0.0;
    };
    const double em = expectation(mid), ef = expectation(fin);
    drift = std::max(drift, std::abs(ef - em));
    res.lambda_expectations(k) = ef;
    res.block_fidelities(k) = fin.norm();
    finals.push_back(std::move(fin));
  }

  SuperposedState sup;
  sup.branches = std::move(finals);
  sup.lambdas.resize(n);
  for (int k = 0; k < n; ++k) sup.lambdas(k) = static_cast<double>(k) / n;
  sup.success_probs = res.block_fidelities;

  // bath duplication before the test (the copied register is a spectator)
  if (pair.a.phase_space.ensemble == Ensemble::NVT) {
    for (auto& br : sup.branches) (void)duplicate_bath(br);
  }

  const double p = hadamard_test(sup, ws.delta_be);
  auto est = amplitude_estimate(p, ws.alpha_delta, run, rng);
  res.p_hat = est.p_hat;
  res.grover_accesses = est.grover_accesses;
  res.delta_f = ws.alpha_delta * (2.0 * est.p_hat - 1.0);

  res.ledger.eps_block = 2.0 * ws.alpha_delta * std::sqrt(2.0 * eps_l_used) + ws.delta_be.epsilon();
  res.ledger.eps_disc = (cfg.n_lambda > 0)
                            ? spectral_norm(Mat(ws.l_b.enc.dense - ws.l_a.enc.dense)) *
                                  ws.delta_diagonal.cwiseAbs().maxCoeff() * cfg.t_eq / res.n_lambda
                            : eps_disc;
  res.ledger.eps_qae = (cfg.mode == EstimationMode::ideal) ? 0.0 : eps_qae;
  res.ledger.equilibration = drift;
  return res;
}

}  // namespace liouv
