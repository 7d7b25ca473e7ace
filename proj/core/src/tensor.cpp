#include "liouv/tensor.hpp"

namespace liouv {

Index total_dim(const Dims& dims) {
  Index t = 1;
  for (Index d : dims) t *= d;
  return t;
}

std::vector<Index> strides(const Dims& dims) {
  std::vector<Index> s(dims.size());
  Index acc = 1;
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    s[k] = acc;
    acc *= dims[k];
  }
  return s;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<Index> unflatten(Index i, const Dims& dims) {
  std::vector<Index> idx(dims.size());
  for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
    idx[k] = i % dims[k];
    i /= dims[k];
  }
  return idx;
}

Index flatten(const std::vector<Index>& idx, const Dims& dims) {
  Index i = 0;
  for (size_t k = 0; k < dims.size(); ++k) i = i * dims[k] + idx[k];
  return i;
}

Mat block_controlled(const std::vector<Mat>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("block_controlled: no blocks");
  const Index x = static_cast<Index>(blocks.size());
  const Index e = blocks[0].rows();
  Mat m = Mat::Zero(e * x, e * x);
  for (Index b = 0; b < x; ++b) {
    if (blocks[b].rows() != e || blocks[b].cols() != e)
      throw std::invalid_argument("block_controlled: inhomogeneous blocks");
    for (Index i = 0; i < e; ++i)
      for (Index j = 0; j < e; ++j) m(i * x + b, j * x + b) = blocks[b](i, j);
  }
  return m;
}

Mat embed_op(const Mat& op, const Dims& dims, const std::vector<int>& axes) {
  Dims op_dims;
  for (int a : axes) op_dims.push_back(dims[a]);
  const Index od = total_dim(op_dims);
  if (op.rows() != od || op.cols() != od) throw std::invalid_argument("embed_op: operator/axes dimension mismatch");
  const Index n = total_dim(dims);
  Mat out = Mat::Zero(n, n);
  const auto st = strides(dims);
  // iterate over the complement configuration
  Dims rest_dims;
  std::vector<int> rest_axes;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    bool active = false;
    for (int a : axes) active |= (a == k);
    if (!active) {
      rest_dims.push_back(dims[k]);
      rest_axes.push_back(k);
    }
  }
  const Index nr = total_dim(rest_dims);
  const auto op_st = strides(op_dims);
  for (Index r = 0; r < nr; ++r) {
    const auto ridx = unflatten(r, rest_dims);
    Index base = 0;
    for (size_t k = 0; k < rest_axes.size(); ++k) base += ridx[k] * st[rest_axes[k]];
    for (Index oi = 0; oi < od; ++oi) {
      const auto oiv = unflatten(oi, op_dims);
      Index row = base;
      for (size_t k = 0; k < axes.size(); ++k) row += oiv[k] * st[axes[k]];
      for (Index oj = 0; oj < od; ++oj) {
        if (op(oi, oj) == cplx(0, 0)) continue;
        const auto ojv = unflatten(oj, op_dims);
        Index col = base;
        for (size_t k = 0; k < axes.size(); ++k) col += ojv[k] * st[axes[k]];
        out(row, col) = op(oi, oj);
      }
    }
  }
  (void)op_st;
  return out;
}

void apply_axis_op(const Mat& op, const Dims& dims, int axis, const Vec& x, Vec& y, bool adjoint) {
  const Index n = total_dim(dims);
  if (x.size() != n) throw std::invalid_argument("apply_axis_op: vector size mismatch");
  const Index g = dims[axis];
  if (op.rows() != g || op.cols() != g) throw std::invalid_argument("apply_axis_op: operator size mismatch");
  y.resize(n);
  const auto st = strides(dims);
  const Index stride = st[axis];
  const Index block = stride * g;    // contiguous span covering one sweep of the axis
  const Index outer = n / block;
  for (Index o = 0; o < outer; ++o) {
    const Index base = o * block;
    for (Index inner = 0; inner < stride; ++inner) {
      for (Index i = 0; i < g; ++i) {
        cplx acc(0, 0);
        for (Index j = 0; j < g; ++j) {
          const cplx m = adjoint ? std::conj(op(j, i)) : op(i, j);
          acc += m * x(base + inner + j * stride);
        }
        y(base + inner + i * stride) = acc;
      }
    }
  }
}

void apply_axes_diag(const Vec& diag, const Dims& dims, const std::vector<int>& axes, const Vec& x, Vec& y,
                     bool conj) {
  const Index n = total_dim(dims);
  if (x.size() != n) throw std::invalid_argument("apply_axes_diag: vector size mismatch");
  y.resize(n);
  Dims sub;
  for (int a : axes) sub.push_back(dims[a]);
  const auto st = strides(dims);
  const auto sub_st = strides(sub);
  for (Index i = 0; i < n; ++i) {
    Index di = 0;
    for (size_t k = 0; k < axes.size(); ++k) {
      const Index comp = (i / st[axes[k]]) % dims[axes[k]];
      di += comp * sub_st[k];
    }
    const cplx d = conj ? std::conj(diag(di)) : diag(di);
    y(i) = d * x(i);
  }
}

Vec expand_axes_diag(const Vec& diag, const Dims& dims, const std::vector<int>& axes) {
  const Index n = total_dim(dims);
  Vec out(n);
  Dims sub;
  for (int a : axes) sub.push_back(dims[a]);
  const auto st = strides(dims);
  const auto sub_st = strides(sub);
  for (Index i = 0; i < n; ++i) {
    Index di = 0;
    for (size_t k = 0; k < axes.size(); ++k) {
      const Index comp = (i / st[axes[k]]) % dims[axes[k]];
      di += comp * sub_st[k];
    }
    out(i) = diag(di);
  }
  return out;
}

}  // namespace liouv
