// linop.hpp — appliable unitary operators: dense, composite, embedded, select,
// structured dilations.  Large circuits stay in apply-only form; dense() is
// available below dense_unitary_limit().
#pragma once

#include <memory>

#include "liouv/common.hpp"
#include "liouv/tensor.hpp"

namespace liouv {

class UnitaryOp {
 public:
  virtual ~UnitaryOp() = default;
  virtual Index dim() const = 0;
  virtual void apply(const Vec& in, Vec& out, bool adjoint) const = 0;

  Vec operator()(const Vec& in, bool adjoint = false) const {
    Vec out;
    apply(in, out, adjoint);
    return out;
  }
  // Materializes by applying to basis vectors; refuses above dense_unitary_limit().
  virtual Mat dense() const;
};

using UnitaryPtr = std::shared_ptr<const UnitaryOp>;

class DenseU final : public UnitaryOp {
 public:
  explicit DenseU(Mat u) : u_(std::move(u)) {}
  Index dim() const override { return u_.rows(); }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;
  Mat dense() const override { return u_; }

 private:
  Mat u_;
};

// Ordered product: apply(in) = phase * F_{k-1} ... F_1 F_0 in (factors_[0] acts first).
class CompositeU final : public UnitaryOp {
 public:
  struct Factor {
    UnitaryPtr op;
    bool adjoint = false;
  };
  CompositeU(std::vector<Factor> factors, cplx phase = cplx(1, 0));
  Index dim() const override { return dim_; }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  std::vector<Factor> factors_;
  cplx phase_;
  Index dim_;
};

// `op` acting on the kron factors listed in `axes` of the space `dims`.
class EmbedU final : public UnitaryOp {
 public:
  EmbedU(UnitaryPtr op, Dims dims, std::vector<int> axes);
  Index dim() const override { return total_; }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  UnitaryPtr op_;
  Dims dims_;
  std::vector<int> axes_;
  Index total_, op_dim_;
};

// Leading factor of dimension `select_dim` picks which op acts on the rest;
// null entries (and blocks beyond ops.size()) act as identity.
class BlockSelectU final : public UnitaryOp {
 public:
  BlockSelectU(Index select_dim, Index rest_dim, std::vector<UnitaryPtr> ops);
  Index dim() const override { return select_dim_ * rest_dim_; }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  Index select_dim_, rest_dim_;
  std::vector<UnitaryPtr> ops_;
};

// Select-of-powers: |k><k| (x) W^k on dims [count, rest].  Powers of the small
// dense walk operator are cached.
class PowerSelectU final : public UnitaryOp {
 public:
  PowerSelectU(Mat w, Index count);
  Index dim() const override { return count_ * w_.rows(); }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  Mat w_;
  Index count_;
  mutable std::vector<Mat> powers_;  // powers_[k] = w_^k, filled on demand
  const Mat& power(Index k) const;
};

// Reflection 2|0_anc><0_anc| (x) I - I  for the split [ancilla, system].
class ReflectU final : public UnitaryOp {
 public:
  ReflectU(Index anc_dim, Index sys_dim) : anc_(anc_dim), sys_(sys_dim) {}
  Index dim() const override { return anc_ * sys_; }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  Index anc_, sys_;
};

// exp(i phi (2 Pi - I)) for the same split: e^{i phi} on the ancilla-zero
// block, e^{-i phi} elsewhere.
class PhasedReflectU final : public UnitaryOp {
 public:
  PhasedReflectU(Index anc_dim, Index sys_dim, double phi) : anc_(anc_dim), sys_(sys_dim), phi_(phi) {}
  Index dim() const override { return anc_ * sys_; }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  Index anc_, sys_;
  double phi_;
};

// Hermitian wrapper (H (x) I) [[0, U],[U^dag, 0]] (H (x) I): a Hermitian
// unitary whose ancilla-zero block is the Hermitian part of U's block.
class HermitianPairU final : public UnitaryOp {
 public:
  explicit HermitianPairU(UnitaryPtr u) : u_(std::move(u)) {}
  Index dim() const override { return 2 * u_->dim(); }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  UnitaryPtr u_;
};

// Diagonal unitary (entries must have unit modulus).
class DiagonalU final : public UnitaryOp {
 public:
  explicit DiagonalU(Vec entries) : d_(std::move(entries)) {}
  Index dim() const override { return d_.size(); }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  Vec d_;
};

// Normalized DFT on a power-of-two register: |l> -> (1/sqrt(n)) sum_k e^{2 pi i k l / n} |k>.
class FourierU final : public UnitaryOp {
 public:
  explicit FourierU(Index n);
  Index dim() const override { return n_; }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;

 private:
  Index n_;
};

// Exact unitary dilation of a structured Hermitian term
//   T = coeff * (A on `axis`) * diag(d over the remaining axes),
// laid out as [dilation-2, sys axes...] with block T/alpha.  A Hermitian,
// d real, coeff real, alpha >= ||T||.
class DilatedTermU final : public UnitaryOp {
 public:
  DilatedTermU(const Mat& axis_op, int axis, const RVec& rest_diag, std::vector<int> rest_axes, Dims sys_dims,
               double coeff, double alpha);
  // Pure-diagonal special case (no axis operator).
  DilatedTermU(const RVec& full_diag, Dims sys_dims, double alpha);
  Index dim() const override { return 2 * total_dim(sys_dims_); }
  void apply(const Vec& in, Vec& out, bool adjoint) const override;
  double alpha() const { return alpha_; }

 private:
  Dims sys_dims_;
  int axis_ = -1;                 // -1: no axis operator
  Mat eigvecs_;                   // eigenbasis of the axis operator
  RVec eigvals_;                  // its eigenvalues
  Vec rest_diag_full_;            // diag expanded over the system space (complex storage, real values)
  double alpha_;
  void block_values(Index sys_index, Index axis_eig_index, double& t, double& s) const;
};

// Convenience: dense() but routed through the virtual dense-limit check.
Mat to_dense(const UnitaryOp& op);

// Randomized isometry probe: max |<Uv,Uw> - <v,w>| over a few trials.
double unitarity_probe(const UnitaryOp& op, Rng& rng, int trials = 4);

}  // namespace liouv
