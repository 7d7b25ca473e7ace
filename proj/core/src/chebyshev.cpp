#include "liouv/chebyshev.hpp"

namespace liouv {

double ChebyshevPolynomial::eval(double x) const {
  const Index n = coeffs.size();
  if (n == 0) return 0.0;
  double b1 = 0, b2 = 0;
  for (Index k = n - 1; k >= 1; --k) {
    const double b0 = 2.0 * x * b1 - b2 + coeffs(k);
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + coeffs(0);
}

ChebyshevPolynomial ChebyshevPolynomial::scaled(double s) const {
  ChebyshevPolynomial out = *this;
  out.coeffs *= s;
  out.sup_bound *= std::abs(s);
  return out;
}

ChebyshevPolynomial make_chebyshev(RVec coeffs) {
  ChebyshevPolynomial p;
  p.coeffs = std::move(coeffs);
  const int d = p.degree();
  double even_mass = 0, odd_mass = 0;
  for (int k = 0; k <= d; ++k) {
    (k % 2 == 0 ? even_mass : odd_mass) += std::abs(p.coeffs(k));
  }
  const double tol = 1e-13 * std::max(1.0, even_mass + odd_mass);
  if (odd_mass <= tol)
    p.parity = Parity::even;
  else if (even_mass <= tol)
    p.parity = Parity::odd;
  else
    p.parity = Parity::none;
  const int m = std::max(16, 10 * std::max(1, d));
  double sup = 0;
  for (int j = 0; j < m; ++j) {
    const double x = std::cos(kPi * (j + 0.5) / m);
    sup = std::max(sup, std::abs(p.eval(x)));
  }
  sup = std::max({sup, std::abs(p.eval(1.0)), std::abs(p.eval(-1.0))});
  p.sup_bound = sup;
  return p;
}

RVec chebyshev_fit(const std::function<double(double)>& f, int degree, int n_nodes) {
  const int m = (n_nodes > 0) ? n_nodes : degree + 1;
  if (m < degree + 1) throw std::invalid_argument("chebyshev_fit: need at least degree+1 nodes");
  RVec fx(m);
  for (int j = 0; j < m; ++j) fx(j) = f(std::cos(kPi * (j + 0.5) / m));
  RVec c(degree + 1);
  for (int k = 0; k <= degree; ++k) {
    double acc = 0;
    for (int j = 0; j < m; ++j) acc += fx(j) * std::cos(k * kPi * (j + 0.5) / m);
    c(k) = acc * 2.0 / m;
  }
  c(0) *= 0.5;
  return c;
}

}  // namespace liouv
