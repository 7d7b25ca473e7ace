// qsp.hpp — symmetric phase-factor solving for quantum signal processing.
// The scalar model is U(x) = E(phi_0) prod_k [R(x) E(phi_k)] with
// R(x) = [[x, sqrt(1-x^2)],[sqrt(1-x^2), -x]] and E(phi) = diag(e^{i phi}, e^{-i phi});
// Re U(x)_{00} realizes a real definite-parity polynomial target.
#pragma once

#include "liouv/chebyshev.hpp"

namespace liouv {

struct QspPhases {
  RVec phases;       // length degree+1, symmetric
  double residual;   // max |Re U_00 - target| on a dense validation grid
  int iterations;
};

// Newton solve of the phase factors for a real definite-parity target with
// sup norm strictly below 1.  Throws if the solve misses `tol`.
QspPhases find_qsp_phases(const ChebyshevPolynomial& target, double tol = 1e-10, int max_iter = 200);

// Scalar model entry U(x)_{00}.
cplx qsp_scalar_entry(const RVec& phases, double x);

// Full 2x2 scalar model matrix.
Eigen::Matrix2cd qsp_scalar_model(const RVec& phases, double x);

}  // namespace liouv
