// tensor.hpp — kron-factor index arithmetic and axis-wise operator application
#pragma once

#include "liouv/common.hpp"

namespace liouv {

// Dimensions of the tensor factors, dims[0] slowest (leftmost kron factor).
using Dims = std::vector<Index>;

Index total_dim(const Dims& dims);
std::vector<Index> strides(const Dims& dims);

Mat kron(const Mat& a, const Mat& b);

// Dense embedding of `op` acting on the factors listed in `axes` (in that
// order, axes[0] slowest inside op), identity elsewhere.
Mat embed_op(const Mat& op, const Dims& dims, const std::vector<int>& axes);

// y = (op on `axis`) x without materializing the embedding.
void apply_axis_op(const Mat& op, const Dims& dims, int axis, const Vec& x, Vec& y, bool adjoint = false);

// y = diag(d) x where d is a diagonal over the factors in `axes`.
void apply_axes_diag(const Vec& diag, const Dims& dims, const std::vector<int>& axes, const Vec& x, Vec& y,
                     bool conj = false);

// Expand a diagonal given over `axes` to the full-space diagonal.
Vec expand_axes_diag(const Vec& diag, const Dims& dims, const std::vector<int>& axes);

// Enumerate the multi-index of flat index i.
std::vector<Index> unflatten(Index i, const Dims& dims);
Index flatten(const std::vector<Index>& idx, const Dims& dims);

// Block-controlled matrix sum_x |x><x| (x) B_x laid out with the block space
// slow and the control register fast: M[(e, x), (e', x)] = B_x(e, e').
Mat block_controlled(const std::vector<Mat>& blocks);

}  // namespace liouv
