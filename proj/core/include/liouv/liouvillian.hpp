// liouvillian.hpp — electronic and full phase-space Liouvillian encodings and
// state evolution under them.
#pragma once

#include "liouv/electronic.hpp"
#include "liouv/qsvt.hpp"

namespace liouv {

struct ElectronicLiouvillian {
  LiouvillianEncoding enc;
  std::vector<DiagonalKickback> force_diagonals;  // per nuclear component
  double eps_bound = 0;
};

// i sum_nj D^el_{n,j} (x) D_{p'_{n,j}} with charge-weighted combination; the
// force diagonals come from the kickback pipeline and are re-dilated onto the
// phase-space register (re-encoding preserves the encoded diagonal exactly;
// the literal tensor composition is exercised in unit tests at small sizes).
ElectronicLiouvillian electronic_liouvillian(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec, Rng& rng);
Mat electronic_liouvillian_dense(const PhaseSpaceSpec& pspec, const std::vector<RVec>& force_diagonals);

struct FullLiouvillian {
  LiouvillianEncoding enc;
  double alpha_el = 0, alpha_cl = 0;
  double eps_bound = 0;
};

FullLiouvillian full_liouvillian(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec, Rng& rng);

struct EvolveResult {
  KvNState state;
  double success_prob = 1.0;  // kept norm after ancilla projection
  long measured_queries = 0;
  long reported_query_count = 0;
  double norm_defect = 0;  // | ||rho_t|| - 1 |
};

// e^{-iLt} applied to the state: faithful mode runs the simulation encoding
// and projects the ancillae; semantic mode applies the dense exponential.
EvolveResult evolve(const LiouvillianEncoding& l, const KvNState& rho0, double t, double eps,
                    Engine engine = Engine::qsvt, TransformMode mode = TransformMode::faithful);

}  // namespace liouv
