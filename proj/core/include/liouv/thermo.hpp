// thermo.hpp — alchemical thermodynamic integration: interpolated Liouvillian
// evolution over a coupling grid, bath-register duplication, nuclear
// Hamiltonian differences, the Hadamard test, and amplitude estimation.
#pragma once

#include "liouv/liouvillian.hpp"
#include "liouv/oracle.hpp"

namespace liouv {

enum class EstimationMode { ideal, sampled, qae };

struct ThermoConfig {
  int n_lambda = 4;       // 0 lets the pipeline pick it from the Riemann bound
  double t_eq = 1.0;
  double eps = 0.05;      // target additive precision of delta F
  double xi = 0.05;       // failure probability
  int qae_ancillas = 0;   // 0 derives m from the precision target
  EstimationMode mode = EstimationMode::ideal;
  std::uint64_t seed = 1;
  long shots = 0;         // sampled mode; 0 derives from the precision target

  void validate() const;
};

struct SystemSpec {
  PhaseSpaceSpec phase_space;
  ElectronicSpec electronic;
};

struct AlchemicalPair {
  SystemSpec a, b;
  void validate() const;  // shared registers must have identical grid specs
};

// Hamiltonian terms plus the assembled block encoding for one system.
struct NuclearHamiltonian {
  BlockEncoding be = identity_encoding(1);
  RVec diagonal;      // kinetic + potential + ground-state energies per point
  double alpha_kin = 0, alpha_pot = 0, lambda_gse = 0;
  double eps_bound = 0;
};

NuclearHamiltonian nuclear_hamiltonian(const SystemSpec& sys, Rng& rng);

// Microstate energies for the Boltzmann oracle (same diagonal, independent
// assembly path through the dense references).
RVec microstate_energies(const SystemSpec& sys);

struct InterpolatedLiouvillian {
  LiouvillianEncoding enc;
  double lambda = 0;
  double alpha = 0;  // (1-L) alpha_A + L alpha_B
};

struct ThermoWorkspace {
  FullLiouvillian l_a, l_b;
  NuclearHamiltonian h_a, h_b;
  BlockEncoding delta_be = identity_encoding(1);  // H_B - H_A
  RVec delta_diagonal;
  double alpha_delta = 0;
  Layout layout;
};

ThermoWorkspace build_workspace(const AlchemicalPair& pair, Rng& rng);

InterpolatedLiouvillian interpolated_liouvillian(const ThermoWorkspace& ws, double lambda);

// (H_B - H_A) by a two-branch combination with a sign arm.
BlockEncoding delta_hamiltonian(const ThermoWorkspace& ws);

struct SuperposedState {
  std::vector<KvNState> branches;  // rho_Lambda per interpolation point
  RVec lambdas;
  RVec success_probs;
  long measured_queries = 0;
};

// (1/sqrt(N)) sum_L |L>|rho_L>, stored branch-wise (the coupling register is
// diagonal throughout the pipeline).
SuperposedState superposed_equilibrate(const ThermoWorkspace& ws, const ThermoConfig& cfg, const KvNState& rho0,
                                       Engine engine = Engine::qsvt, TransformMode mode = TransformMode::faithful);

// Computational-basis copy of the bath position register onto a fresh one.
struct DuplicatedState {
  Vec amplitudes;  // over [original layout] x [copied s register]
  Index s_dim = 1;
};
DuplicatedState duplicate_bath(const KvNState& state);

// Probability of the zero outcome in the Hadamard test of the difference
// encoding over the superposed branches.
double hadamard_test(const SuperposedState& state, const BlockEncoding& delta_be);

struct EstimateResult {
  double p_hat = 0;
  long grover_accesses = 0;
  int ancillas = 0;
  long shots = 0;
  int medians = 0;
};

// ideal: exact amplitude; sampled: Bernoulli shots with median boosting;
// qae: exact phase-estimation statevector on the two-dimensional invariant
// subspace of the Grover operator.
EstimateResult amplitude_estimate(double p_true, double alpha_delta, const ThermoConfig& cfg, Rng& rng);

struct ThermoResult {
  double delta_f = 0;
  double p_hat = 0.5;
  double alpha_delta = 0;
  int n_lambda = 0;
  double t_eq = 0;
  struct Ledger {
    double eps_block = 0;  // 2 alpha sqrt(2 eps_L) + eps_Delta
    double eps_disc = 0;
    double eps_qae = 0;
    double equilibration = 0;  // drift diagnostic over the final 10% of t_eq
    double total() const { return eps_block + eps_disc + eps_qae + equilibration; }
  } ledger;
  RVec lambda_expectations;  // <Delta H> per interpolation point
  RVec block_fidelities;     // evolution success amplitudes per point
  long grover_accesses = 0;
};

ThermoResult free_energy_difference(const AlchemicalPair& pair, const ThermoConfig& cfg, const KvNState& rho0,
                                    Engine engine = Engine::qsvt, TransformMode mode = TransformMode::faithful);

// Riemann-rule point count from the dense-norm bound, clamped to [1, cap].
int riemann_point_count(const ThermoWorkspace& ws, double t_eq, double eps_disc, int cap = 64);

}  // namespace liouv
