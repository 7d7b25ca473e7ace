// groundstate.hpp — robust ground-state preparation: shifted sign-function
// reflector, Grover-style amplification from an approximate-overlap oracle,
// and the block-controlled (superposed) variant.
#pragma once

#include "liouv/qsvt.hpp"

namespace liouv {

struct GroundStateConfig {
  double mu = 0;             // upper bound on the ground energy
  double gamma = 0;          // lower bound on the spectral gap
  double delta_overlap = 0;  // lower bound on the initial-state overlap
  double eps_prep = 1e-4;    // target infidelity
};

// Validates E0 <= mu - gamma/2 < mu + gamma/2 <= E1 on every block.
void validate_gap_config(const GroundStateConfig& cfg, const std::vector<Mat>& h_blocks);

// mu mid-gap and gamma at half the true worst-case gap, from dense spectra.
GroundStateConfig config_from_spectrum(const std::vector<Mat>& h_blocks, double delta_overlap, double eps_prep);

// Block-diagonal initial-state oracle: per control index, a unitary on the
// electronic space whose first column is |phi_init>.
struct InitialStateOracle {
  std::vector<Mat> block_preps;
  Index blocks() const { return static_cast<Index>(block_preps.size()); }
  Index block_dim() const { return block_preps.empty() ? 0 : block_preps[0].rows(); }
  Vec state(Index b) const { return block_preps[b].col(0); }
  // Full unitary in [electronic, control] ordering.
  Mat controlled_unitary() const;
};

InitialStateOracle make_initial_oracle(const std::vector<Vec>& states);

// Initial states with exact overlap `delta` against the dense ground state of
// each block.
InitialStateOracle planted_oracle(const std::vector<Mat>& h_blocks, double delta, Rng& rng);

struct ReflectorResult {
  BlockEncoding be;        // encodes sum_{E<=mu}|psi><psi| - sum_{E>mu}|psi><psi|
  int sign_degree = 0;     // queries to the input encoding per use
  double xi = 0;
  double alpha_shift = 0;  // scaling of the internal (H - mu I) encoding
};

// Requires be_h.epsilon <= gamma/4 (eigenvalue-perturbation robustness).
ReflectorResult reflector(const BlockEncoding& be_h, const GroundStateConfig& cfg, double xi,
                          TransformMode mode = TransformMode::faithful);

struct GroundStatePrep {
  std::vector<Vec> states;  // prepared electronic states per block, normalized
  RVec fidelities;          // |<psi_0|state>| vs the dense eigensolver
  RVec success_probs;       // kept norm after ancilla projections
  int rounds = 0;
  long queries_uh = 0;
  long queries_ui = 0;
};

// Amplitude amplification of the oracle states against the reflector built
// from be_h; be_h must carry an attached target (block-diagonal over
// oracle.blocks() in [electronic, control] ordering).  With strict_overlap,
// an oracle below the configured overlap bound fails loudly.
GroundStatePrep prepare_ground_state(const BlockEncoding& be_h, const GroundStateConfig& cfg,
                                     const InitialStateOracle& oracle, TransformMode mode = TransformMode::faithful,
                                     bool strict_overlap = true);

GroundStatePrep prepare_ground_state_superposed(const BlockEncoding& be_h_ctrl, const GroundStateConfig& cfg,
                                                const InitialStateOracle& oracle,
                                                TransformMode mode = TransformMode::faithful,
                                                bool strict_overlap = true);

// The full preparation circuit — oracle, phase-matched amplification rounds
// (ground-sector phase oracle e^{i a P} built from the reflector by LCU plus
// one amplification round, initial-state phase rotations built from U_I),
// then one reflector projection onto the ground sector — as an appliable
// unitary on [ancillae, electronic, control]; used by the force/energy
// kickback pipelines.  The projection amplitude per block is reported so
// callers can fold it into their scale.
struct PreparationCircuit {
  UnitaryPtr op;
  Index anc_dim = 1;
  Index sys_dim = 1;  // electronic x control
  int rounds = 0;
  double phase = 0;   // matched amplification phase
  long queries_uh = 0;
  long queries_ui = 0;
  RVec block_amplitudes;  // norm of the prepared ancilla-zero branch per block
};

PreparationCircuit preparation_circuit(const BlockEncoding& be_h_ctrl, const GroundStateConfig& cfg,
                                       const InitialStateOracle& oracle, TransformMode mode, double xi);

// Kept for oracle cross-checks: exact dense ground states per block.
std::vector<Vec> dense_ground_states(const std::vector<Mat>& h_blocks);

// Round cap ceil(pi / (4 asin(delta))) + 1.
int amplification_round_cap(double delta);

}  // namespace liouv
