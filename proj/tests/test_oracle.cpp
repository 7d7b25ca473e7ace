#include <doctest.h>

#include "liouv/oracle.hpp"

using namespace liouv;

TEST_CASE("expm_evolve: identity at zero time and diagonal phase rotation") {
  Rng rng(61);
  Mat l = random_hermitian(5, rng);
  Vec v(5);
  for (int i = 0; i < 5; ++i) v(i) = cplx(rng.normal(), rng.normal());
  v.normalize();
  CHECK((oracle::expm_evolve(l, v, 0.0) - v).norm() <= 1e-13);
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  Vec w(2);
  w << cplx(1, 0), cplx(0, 1);
  w.normalize();
  Vec out = oracle::expm_evolve(d, w, 0.5);
  CHECK(std::abs(out(0) - std::exp(cplx(0, -0.5)) * w(0)) <= 1e-13);
  CHECK(std::abs(out(1) - std::exp(cplx(0, 1.0)) * w(1)) <= 1e-13);
}

TEST_CASE("expm_evolve: eigendecomposition and Pade routes agree") {
  Rng rng(62);
  for (int trial = 0; trial < 3; ++trial) {
    Mat l = 2.0 * random_hermitian(6, rng);
    Vec v(6);
    for (int i = 0; i < 6; ++i) v(i) = cplx(rng.normal(), rng.normal());
    v.normalize();
    const double t = rng.uniform(0.1, 3.0);
    CHECK((oracle::expm_evolve(l, v, t) - oracle::expm_evolve_pade(l, v, t)).norm() <= 1e-10);
  }
}

TEST_CASE("ground_truth_spectrum: analytic 2x2 and residuals") {
  Mat h(2, 2);
  h << 1.0, cplx(0, -0.5), cplx(0, 0.5), -1.0;
  auto sp = oracle::ground_truth_spectrum(h);
  const double r = std::sqrt(1.0 + 0.25);
  CHECK(sp.energies(0) == doctest::Approx(-r));
  CHECK(sp.energies(1) == doctest::Approx(r));
  for (int k = 0; k < 2; ++k) {
    CHECK((h * sp.vectors.col(k) - sp.energies(k) * sp.vectors.col(k)).norm() <= 1e-10);
  }
}

TEST_CASE("fd_gradient: exact on quadratics, Richardson quarters the error") {
  auto quad = [](double x) { return 3.0 * x * x - 2.0 * x + 1.0; };
  CHECK(oracle::fd_gradient(quad, 0.7, 0.3) == doctest::Approx(3.0 * 2 * 0.7 - 2.0).epsilon(1e-12));
  auto smooth = [](double x) { return std::sin(3.0 * x); };
  auto [coarse, fine] = oracle::fd_gradient_pair(smooth, 0.4, 0.1);
  const double truth = 3.0 * std::cos(3.0 * 0.4);
  const double ratio = std::abs(coarse - truth) / std::abs(fine - truth);
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("boltzmann_delta_f: identical systems give zero") {
  RVec e(4);
  e << 0.0, 0.3, 0.9, 1.4;
  CHECK(std::abs(oracle::boltzmann_delta_f(e, e, 8, 1.0)) <= 1e-14);
}

TEST_CASE("boltzmann_delta_f: two-microstate closed form") {
  RVec ea(2), eb(2);
  ea << 0.0, 1.0;
  eb << 0.0, 2.0;
  const double exact = -std::log((1.0 + std::exp(-2.0)) / (1.0 + std::exp(-1.0)));
  CHECK(oracle::boltzmann_delta_f_exact(ea, eb, 1.0) == doctest::Approx(exact).epsilon(1e-12));
  // monotone Riemann convergence towards the closed form
  double prev_err = 1e9;
  for (int n : {4, 16, 64, 256, 1024}) {
    const double err = std::abs(oracle::boltzmann_delta_f(ea, eb, n, 1.0) - exact);
    CHECK(err <= prev_err + 1e-12);
    prev_err = err;
  }
  CHECK(prev_err <= 2e-3);
}
