// qsvt.hpp — polynomial transforms of Hermitian block encodings: truncated
// exponential/sign approximants, phased-reflection eigenvalue transforms,
// robust Hamiltonian simulation, and the angle-free diagonal-encoding route.
#pragma once

#include <functional>

#include "liouv/bea.hpp"
#include "liouv/chebyshev.hpp"
#include "liouv/qsp.hpp"

namespace liouv {

// semantic: matrix function of the encoded block by eigendecomposition (the
// verification oracle).  faithful: explicit phased-reflection operator algebra.
enum class TransformMode { semantic, faithful };

enum class Engine { qsvt, angleless };

struct ExpPolyPair {
  ChebyshevPolynomial cos_part;  // even
  ChebyshevPolynomial sin_part;  // odd
  double sampled_error = 0;      // max |e^{-i tau x} - (cos - i sin)| on [-1,1]
  int degree_bound = 0;          // ceil(2 tau + 3 ln(48(1+sqrt2)/eps))
};

// Truncated Bessel expansion of e^{-i alpha_t x}; smallest degree passing a
// dense sampling check at `eps`, asserted against the analytic degree bound.
ExpPolyPair approx_exp(double alpha_t, double eps);

// Odd polynomial within xi of sign(x) outside (-gamma, gamma), |S|<=1 on [-1,1].
ChebyshevPolynomial approx_sign(double gamma, double xi);

// Degree sweep: the smallest degree for which both sign-approximation clauses
// pass (regression/testing aid).
int approx_sign_min_degree(double gamma, double xi);

struct TransformResult {
  BlockEncoding be;
  long walk_queries = 0;   // uses of the input encoding (or its inverse)
  double qsp_residual = 0; // phase-reconstruction residual (faithful mode)
};

// Block encoding of poly(H/alpha) for Hermitian targets.  Definite-parity
// polynomials may have sup norm up to 1; indefinite ones must stay within 1/2
// (they are split into doubled even/odd halves and averaged back).
TransformResult eigen_transform(const BlockEncoding& be, const ChebyshevPolynomial& poly,
                                TransformMode mode = TransformMode::faithful);

struct HamSimResult {
  BlockEncoding be;
  long measured_queries = 0;       // walk-operator uses, shared-select accounting
  long reported_query_count = 0;   // ceil(6 alpha |t| + 9 ln(12/eps))
  int degree = 0;
  double nu = 0;                   // pre-amplification rescale folded into the budget
};

// (1, a', eps)-block-encoding of e^{-iHt}; requires be.epsilon <= eps/(2|t|).
HamSimResult ham_sim(const BlockEncoding& be, double t, double eps, TransformMode mode = TransformMode::faithful);

struct DiagonalFunctionEncoding {
  Vec entries;      // length 4*d, entries[k] ~= f(cos(2 pi k / 4 d))
  double delta = 0; // modeled arithmetic error budget
  Index d = 0;      // power of two
};

DiagonalFunctionEncoding angleless_encode(const std::function<cplx(double)>& f, Index d, double delta);

struct AnglelessResult {
  BlockEncoding be;
  long walk_queries = 0;  // controlled walk uses and their inverses, total
  double e_d = 0;         // measured Laurent truncation error of f(cos(theta))
};

// Literal Fourier-sandwich construction: walk powers controlled on a 4d
// register, the diagonal function encoding between two DFTs, and rectangular
// window states on the control register.  Output scaling sqrt(2).
AnglelessResult angleless_transform(const BlockEncoding& be, const DiagonalFunctionEncoding& dfe);

// Same construction evaluated with the control register contracted out; block
// equals the literal construction's exactly (unit-tested) at a fraction of the cost.
Mat angleless_collapsed_block(const BlockEncoding& be, const DiagonalFunctionEncoding& dfe);

HamSimResult angleless_ham_sim(const BlockEncoding& be, double t, double eps);

// One round of oblivious amplitude amplification: takes a (2, a, eps)
// encoding of a (near-)unitary V to a (1, a, O(eps))-encoding of V.
BlockEncoding amplify_half_encoding(const BlockEncoding& be2);

// Cost-model figures (also exposed through the cost module).
long ham_sim_query_bound(double alpha, double t, double eps);
long angleless_query_bound(double alpha, double t, double eps);

}  // namespace liouv
