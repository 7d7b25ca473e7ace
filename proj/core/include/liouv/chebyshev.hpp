// chebyshev.hpp — Chebyshev-basis polynomials with parity and sup-norm metadata
#pragma once

#include <functional>

#include "liouv/common.hpp"

namespace liouv {

enum class Parity { even, odd, none };

struct ChebyshevPolynomial {
  RVec coeffs;       // c_0..c_D in the T_k basis
  Parity parity = Parity::none;
  double sup_bound = 0;  // sampled sup on [-1,1]

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double eval(double x) const;  // Clenshaw
  ChebyshevPolynomial scaled(double s) const;
};

// Builds the metadata: parity from the coefficient sparsity pattern, sup from
// a 10*D Chebyshev grid.
ChebyshevPolynomial make_chebyshev(RVec coeffs);

// Degree-capped interpolation of f at Chebyshev nodes (exact for polynomials
// of degree <= n_nodes-1).
RVec chebyshev_fit(const std::function<double(double)>& f, int degree, int n_nodes = 0);

}  // namespace liouv
