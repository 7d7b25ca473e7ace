// bea.hpp — block-encoding algebra: dilations, state-preparation pairs, LCU
// combination, products, and contract verification on explicit unitaries.
#pragma once

#include <optional>

#include "liouv/linop.hpp"

namespace liouv {

// A unitary U on C^{ancilla_dim * target_dim} (ancilla factor slowest) whose
// ancilla-zero block approximates target/alpha to within epsilon/alpha.
class BlockEncoding {
 public:
  BlockEncoding(UnitaryPtr op, double alpha, Index ancilla_dim, double epsilon, bool hermitian_unitary = false);
  BlockEncoding(Mat unitary, double alpha, Index ancilla_dim, double epsilon, bool hermitian_unitary = false);

  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }
  Index ancilla_dim() const { return anc_dim_; }
  Index target_dim() const { return target_dim_; }
  Index total_dim() const { return anc_dim_ * target_dim_; }
  int ancilla_qubits() const { return ceil_log2(anc_dim_); }  // cost accounting only
  bool hermitian_unitary() const { return hermitian_unitary_; }

  const UnitaryPtr& op() const { return op_; }
  Mat unitary() const;  // dense form; refuses above dense_unitary_limit()

  // <0_anc| U |0_anc>, unscaled by alpha.
  Mat block() const;
  Vec apply_block(const Vec& sys) const;
  Vec apply_unitary(const Vec& full, bool adjoint = false) const;

  // Exact on small dimensions, randomized probe above.
  double unitarity_defect() const;

  void attach_target(Mat target);
  const std::optional<Mat>& attached_target() const { return target_; }

 private:
  UnitaryPtr op_;
  double alpha_, epsilon_;
  Index anc_dim_, target_dim_;
  bool hermitian_unitary_;
  std::optional<Mat> target_;
};

// State-preparation pair for a non-negative weight vector: P|0> = sum_j sqrt(y_j/beta)|j>.
struct StatePrepPair {
  Mat left_unitary;
  Mat right_unitary;
  double beta = 0;
  double eps_sp = 0;
  RVec weights;  // the encoded y
  Index dim() const { return left_unitary.rows(); }
};

// Exact unitary completion of target/alpha into a 2x-dilated unitary.
// Throws if ||target|| > alpha or target is not square.
BlockEncoding dilate(const Mat& target, double alpha);

// Spectral-norm deviation ||target - alpha * <0|U|0>||.
double verify_contract(const BlockEncoding& be, const Mat& target);
double verify_contract(const BlockEncoding& be);  // against the attached target

StatePrepPair make_state_prep(const RVec& weights, double eps_sp, Index pad_dim = 0);

// PREP^dag SELECT PREP over terms sharing target_dim and a common alpha.
BlockEncoding lcu_combine(const StatePrepPair& pair, const std::vector<BlockEncoding>& terms);

// Weighted combination sum_j w_j A_j with per-term alphas folded into the
// weights (each term reinterpreted at scaling 1) and complex weight phases
// folded into the select arms.  Resulting alpha = sum_j |w_j| alpha_j.
BlockEncoding lcu_weighted(const std::vector<cplx>& weights, const std::vector<BlockEncoding>& terms,
                           double eps_sp = 0.0);

// Product AB of two encodings on the same target space.
BlockEncoding product(const BlockEncoding& a, const BlockEncoding& b);

// Kronecker product A (x) B across disjoint target spaces.
BlockEncoding kron_product(const BlockEncoding& a, const BlockEncoding& b);

// Multiplies the encoded operator by a unit-modulus phase.
BlockEncoding with_phase(const BlockEncoding& be, cplx phase);

// Tensor an identity on extra ancillae so ancilla_dim becomes new_anc_dim.
BlockEncoding pad_ancilla(const BlockEncoding& be, Index new_anc_dim);

BlockEncoding identity_encoding(Index dim);

// Encoding whose unitary is Hermitian (wraps with one extra qubit if needed);
// for a Hermitian target this preserves the contract.
BlockEncoding hermitianize(const BlockEncoding& be);

}  // namespace liouv
