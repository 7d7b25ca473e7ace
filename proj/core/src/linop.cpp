#include "liouv/linop.hpp"

#include <Eigen/Eigenvalues>

namespace liouv {

Mat UnitaryOp::dense() const {
  const Index n = dim();
  if (n > dense_unitary_limit()) {
    throw std::runtime_error("UnitaryOp::dense: dimension " + std::to_string(n) +
                             " above dense materialization limit");
  }
  Mat out(n, n);
  Vec e = Vec::Zero(n), col;
  for (Index j = 0; j < n; ++j) {
    e(j) = 1.0;
    apply(e, col, false);
    out.col(j) = col;
    e(j) = 0.0;
  }
  return out;
}

Mat to_dense(const UnitaryOp& op) { return op.dense(); }

void DenseU::apply(const Vec& in, Vec& out, bool adjoint) const {
  out = adjoint ? Vec(u_.adjoint() * in) : Vec(u_ * in);
}

CompositeU::CompositeU(std::vector<Factor> factors, cplx phase) : factors_(std::move(factors)), phase_(phase) {
  if (factors_.empty()) throw std::invalid_argument("CompositeU: no factors");
  dim_ = factors_[0].op->dim();
  for (const auto& f : factors_) {
    if (f.op->dim() != dim_) throw std::invalid_argument("CompositeU: factor dimension mismatch");
  }
}

void CompositeU::apply(const Vec& in, Vec& out, bool adjoint) const {
  Vec cur = in, next;
  if (!adjoint) {
    for (const auto& f : factors_) {
      f.op->apply(cur, next, f.adjoint);
      cur.swap(next);
    }
    out = phase_ * cur;
  } else {
    for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
      it->op->apply(cur, next, !it->adjoint);
      cur.swap(next);
    }
    out = std::conj(phase_) * cur;
  }
}

EmbedU::EmbedU(UnitaryPtr op, Dims dims, std::vector<int> axes)
    : op_(std::move(op)), dims_(std::move(dims)), axes_(std::move(axes)) {
  total_ = total_dim(dims_);
  Dims sub;
  for (int a : axes_) sub.push_back(dims_[a]);
  op_dim_ = total_dim(sub);
  if (op_->dim() != op_dim_) throw std::invalid_argument("EmbedU: op/axes dimension mismatch");
}

void EmbedU::apply(const Vec& in, Vec& out, bool adjoint) const {
  if (in.size() != total_) throw std::invalid_argument("EmbedU: vector size mismatch");
  out.resize(total_);
  const auto st = strides(dims_);
  Dims sub;
  for (int a : axes_) sub.push_back(dims_[a]);
  const auto sub_st = strides(sub);
  // offsets of the op's local indices inside the full space
  std::vector<Index> op_off(op_dim_);
  for (Index oi = 0; oi < op_dim_; ++oi) {
    const auto v = unflatten(oi, sub);
    Index off = 0;
    for (size_t k = 0; k < axes_.size(); ++k) off += v[k] * st[axes_[k]];
    op_off[oi] = off;
  }
  Dims rest_dims;
  std::vector<int> rest_axes;
  for (int k = 0; k < static_cast<int>(dims_.size()); ++k) {
    bool active = false;
    for (int a : axes_) active |= (a == k);
    if (!active) {
      rest_dims.push_back(dims_[k]);
      rest_axes.push_back(k);
    }
  }
  const Index nr = total_ / op_dim_;
  Vec tmp(op_dim_), res;
  for (Index r = 0; r < nr; ++r) {
    const auto ridx = unflatten(r, rest_dims);
    Index base = 0;
    for (size_t k = 0; k < rest_axes.size(); ++k) base += ridx[k] * st[rest_axes[k]];
    for (Index oi = 0; oi < op_dim_; ++oi) tmp(oi) = in(base + op_off[oi]);
    op_->apply(tmp, res, adjoint);
    for (Index oi = 0; oi < op_dim_; ++oi) out(base + op_off[oi]) = res(oi);
  }
  (void)sub_st;
}

BlockSelectU::BlockSelectU(Index select_dim, Index rest_dim, std::vector<UnitaryPtr> ops)
    : select_dim_(select_dim), rest_dim_(rest_dim), ops_(std::move(ops)) {
  if (static_cast<Index>(ops_.size()) > select_dim_) throw std::invalid_argument("BlockSelectU: too many ops");
  for (const auto& op : ops_) {
    if (op && op->dim() != rest_dim_) throw std::invalid_argument("BlockSelectU: block dimension mismatch");
  }
}

void BlockSelectU::apply(const Vec& in, Vec& out, bool adjoint) const {
  if (in.size() != dim()) throw std::invalid_argument("BlockSelectU: vector size mismatch");
  out.resize(dim());
  Vec blk, res;
  for (Index k = 0; k < select_dim_; ++k) {
    const UnitaryOp* op = (k < static_cast<Index>(ops_.size()) && ops_[k]) ? ops_[k].get() : nullptr;
    if (op) {
      blk = in.segment(k * rest_dim_, rest_dim_);
      op->apply(blk, res, adjoint);
      out.segment(k * rest_dim_, rest_dim_) = res;
    } else {
      out.segment(k * rest_dim_, rest_dim_) = in.segment(k * rest_dim_, rest_dim_);
    }
  }
}

PowerSelectU::PowerSelectU(Mat w, Index count) : w_(std::move(w)), count_(count) {
  if (w_.rows() != w_.cols()) throw std::invalid_argument("PowerSelectU: walk operator must be square");
  const double bytes = static_cast<double>(count_) * w_.rows() * w_.rows() * 16.0;
  if (bytes > 1.5e9) throw std::runtime_error("PowerSelectU: power cache too large");
  powers_.reserve(count_);
}

const Mat& PowerSelectU::power(Index k) const {
  if (powers_.empty()) powers_.push_back(Mat::Identity(w_.rows(), w_.rows()));
  while (static_cast<Index>(powers_.size()) <= k) powers_.push_back(powers_.back() * w_);
  return powers_[k];
}

void PowerSelectU::apply(const Vec& in, Vec& out, bool adjoint) const {
  const Index n = w_.rows();
  if (in.size() != count_ * n) throw std::invalid_argument("PowerSelectU: vector size mismatch");
  out.resize(count_ * n);
  for (Index k = 0; k < count_; ++k) {
    const Mat& p = power(k);
    if (adjoint)
      out.segment(k * n, n) = p.adjoint() * in.segment(k * n, n);
    else
      out.segment(k * n, n) = p * in.segment(k * n, n);
  }
}

void ReflectU::apply(const Vec& in, Vec& out, bool adjoint) const {
  (void)adjoint;  // self-adjoint
  out = -in;
  out.head(sys_) = in.head(sys_);
}

void PhasedReflectU::apply(const Vec& in, Vec& out, bool adjoint) const {
  const double phi = adjoint ? -phi_ : phi_;
  const cplx on = std::polar(1.0, phi), off = std::polar(1.0, -phi);
  out = off * in;
  out.head(sys_) = on * in.head(sys_);
}

void HermitianPairU::apply(const Vec& in, Vec& out, bool adjoint) const {
  (void)adjoint;  // Hermitian by construction
  const Index n = u_->dim();
  if (in.size() != 2 * n) throw std::invalid_argument("HermitianPairU: vector size mismatch");
  const double s = 1.0 / std::sqrt(2.0);
  Vec w0 = s * (in.head(n) + in.tail(n));
  Vec w1 = s * (in.head(n) - in.tail(n));
  Vec m0, m1;
  u_->apply(w1, m0, false);
  u_->apply(w0, m1, true);
  out.resize(2 * n);
  out.head(n) = s * (m0 + m1);
  out.tail(n) = s * (m0 - m1);
}

void DiagonalU::apply(const Vec& in, Vec& out, bool adjoint) const {
  if (in.size() != d_.size()) throw std::invalid_argument("DiagonalU: vector size mismatch");
  out = adjoint ? Vec(d_.conjugate().cwiseProduct(in)) : Vec(d_.cwiseProduct(in));
}

FourierU::FourierU(Index n) : n_(n) {
  if (!is_power_of_two(n_)) throw std::invalid_argument("FourierU: dimension must be a power of two");
}

void FourierU::apply(const Vec& in, Vec& out, bool adjoint) const {
  out = in;
  if (!adjoint) {
    fft_pow2(out, true);  // e^{+2 pi i}/n
    out *= std::sqrt(static_cast<double>(n_));
  } else {
    fft_pow2(out, false);  // e^{-2 pi i}
    out /= std::sqrt(static_cast<double>(n_));
  }
}

DilatedTermU::DilatedTermU(const Mat& axis_op, int axis, const RVec& rest_diag, std::vector<int> rest_axes,
                           Dims sys_dims, double coeff, double alpha)
    : sys_dims_(std::move(sys_dims)), axis_(axis), alpha_(alpha) {
  if (alpha_ <= 0) throw std::invalid_argument("DilatedTermU: alpha must be positive");
  Eigen::SelfAdjointEigenSolver<Mat> es(axis_op);
  if (es.info() != Eigen::Success) throw std::runtime_error("DilatedTermU: axis operator eigensolver failed");
  eigvecs_ = es.eigenvectors();
  eigvals_ = es.eigenvalues();
  Vec rd(rest_diag.size());
  for (Index i = 0; i < rd.size(); ++i) rd(i) = coeff * rest_diag(i);
  rest_diag_full_ = expand_axes_diag(rd, sys_dims_, rest_axes);
  // ||T|| = max |coeff * lambda * d|; alpha must dominate it
  double nrm = 0;
  const double lmax = eigvals_.cwiseAbs().maxCoeff();
  for (Index i = 0; i < rest_diag_full_.size(); ++i) nrm = std::max(nrm, std::abs(rest_diag_full_(i)) * lmax);
  if (nrm > alpha_ * (1 + 1e-12)) {
    throw std::domain_error("DilatedTermU: alpha " + std::to_string(alpha_) + " below term norm " +
                            std::to_string(nrm));
  }
}

DilatedTermU::DilatedTermU(const RVec& full_diag, Dims sys_dims, double alpha)
    : sys_dims_(std::move(sys_dims)), axis_(-1), alpha_(alpha) {
  if (alpha_ <= 0) throw std::invalid_argument("DilatedTermU: alpha must be positive");
  if (full_diag.size() != total_dim(sys_dims_)) throw std::invalid_argument("DilatedTermU: diagonal size mismatch");
  rest_diag_full_ = full_diag.cast<cplx>();
  const double nrm = full_diag.cwiseAbs().maxCoeff();
  if (nrm > alpha_ * (1 + 1e-12)) {
    throw std::domain_error("DilatedTermU: alpha " + std::to_string(alpha_) + " below term norm " +
                            std::to_string(nrm));
  }
}

void DilatedTermU::apply(const Vec& in, Vec& out, bool adjoint) const {
  (void)adjoint;  // Hermitian by construction
  const Index n = total_dim(sys_dims_);
  if (in.size() != 2 * n) throw std::invalid_argument("DilatedTermU: vector size mismatch");
  Vec v0 = in.head(n), v1 = in.tail(n);
  if (axis_ >= 0) {
    Vec t;
    apply_axis_op(eigvecs_, sys_dims_, axis_, v0, t, true);  // rotate into the eigenbasis
    v0.swap(t);
    apply_axis_op(eigvecs_, sys_dims_, axis_, v1, t, true);
    v1.swap(t);
  }
  const auto st = strides(sys_dims_);
  const Index axis_stride = (axis_ >= 0) ? st[axis_] : 1;
  const Index axis_dim = (axis_ >= 0) ? sys_dims_[axis_] : 1;
  Vec y0(n), y1(n);
  for (Index i = 0; i < n; ++i) {
    double t = rest_diag_full_(i).real();
    if (axis_ >= 0) t *= eigvals_((i / axis_stride) % axis_dim);
    double tt = t / alpha_;
    if (tt > 1.0) tt = 1.0;
    if (tt < -1.0) tt = -1.0;
    const double ss = std::sqrt(std::max(0.0, 1.0 - tt * tt));
    y0(i) = tt * v0(i) + ss * v1(i);
    y1(i) = ss * v0(i) - tt * v1(i);
  }
  if (axis_ >= 0) {
    Vec t;
    apply_axis_op(eigvecs_, sys_dims_, axis_, y0, t, false);
    y0.swap(t);
    apply_axis_op(eigvecs_, sys_dims_, axis_, y1, t, false);
    y1.swap(t);
  }
  out.resize(2 * n);
  out.head(n) = y0;
  out.tail(n) = y1;
}

double unitarity_probe(const UnitaryOp& op, Rng& rng, int trials) {
  const Index n = op.dim();
  double worst = 0;
  for (int t = 0; t < trials; ++t) {
    Vec v(n), w(n);
    for (Index i = 0; i < n; ++i) {
      v(i) = cplx(rng.normal(), rng.normal());
      w(i) = cplx(rng.normal(), rng.normal());
    }
    v.normalize();
    w.normalize();
    Vec uv, uw, back;
    op.apply(v, uv, false);
    op.apply(w, uw, false);
    worst = std::max(worst, std::abs(uv.dot(uw) - v.dot(w)));
    worst = std::max(worst, std::abs(uv.norm() - 1.0));
    op.apply(uv, back, true);  // adjoint consistency
    worst = std::max(worst, (back - v).norm());
  }
  return worst;
}

}  // namespace liouv
