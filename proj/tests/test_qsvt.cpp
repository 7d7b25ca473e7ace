#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include "liouv/qsvt.hpp"

using namespace liouv;

namespace {
Mat dense_expm(const Mat& h, double t) { return Mat(cplx(0, -t) * h).exp(); }
}  // namespace

TEST_CASE("approx_exp: zero time is the constant pair") {
  auto p = approx_exp(0.0, 1e-3);
  CHECK(p.cos_part.eval(0.37) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(p.sin_part.eval(0.37)) <= 1e-12);
}

TEST_CASE("approx_exp: sampled error within eps") {
  auto p = approx_exp(1.0, 1e-3);
  CHECK(p.sampled_error <= 1e-3);
  for (int j = 0; j <= 100; ++j) {
    const double x = -1.0 + 0.02 * j;
    const cplx target = std::exp(cplx(0, -x));
    const cplx got(p.cos_part.eval(x), -p.sin_part.eval(x));
    CHECK(std::abs(target - got) <= 1e-3);
  }
}

TEST_CASE("approx_exp: degree stays within the printed bound") {
  auto p = approx_exp(1.0, 0.01);
  // bound = 2*1 + 3*ln(48(1+sqrt2)/0.01) ~ 31
  CHECK(p.degree_bound == 31);
  CHECK(p.cos_part.degree() <= 31);
  CHECK(p.sin_part.degree() <= 31);
}

TEST_CASE("approx_sign: loose parameters need only degree one") {
  CHECK(approx_sign_min_degree(0.5, 0.5) == 1);
  auto s = approx_sign(0.5, 0.5);
  CHECK(s.parity == Parity::odd);
  for (int j = 0; j <= 50; ++j) {
    const double x = -1.0 + 0.04 * j;
    CHECK(std::abs(s.eval(x)) <= 1.0 + 1e-9);
    CHECK(s.eval(-x) == doctest::Approx(-s.eval(x)).epsilon(1e-12));
    if (std::abs(x) >= 0.5) CHECK(std::abs(s.eval(x) - (x > 0 ? 1 : -1)) <= 0.5 * (1 + 1e-6));
  }
}

TEST_CASE("approx_sign: tight parameters, clauses verified by sampling") {
  auto s = approx_sign(0.2, 1e-3);
  for (int j = 0; j <= 400; ++j) {
    const double x = -1.0 + 0.005 * j;
    CHECK(std::abs(s.eval(x)) <= 1.0 + 1e-9);
    if (std::abs(x) >= 0.2) CHECK(std::abs(s.eval(x) - (x > 0 ? 1 : -1)) <= 1e-3 * (1 + 1e-6));
  }
}

TEST_CASE("qsp phases reconstruct random definite-parity targets") {
  Rng rng(21);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 2 + 2 * static_cast<int>(rng.integer(6));  // even degrees 2..12
    RVec c = RVec::Zero(d + 1);
    for (int k = 0; k <= d; k += 2) c(k) = rng.uniform(-1, 1);
    ChebyshevPolynomial p = make_chebyshev(c);
    p = p.scaled(0.8 / std::max(1.0, p.sup_bound));
    auto ph = find_qsp_phases(p);
    CHECK(ph.residual <= 1e-10);
    for (int j = 0; j <= 40; ++j) {
      const double x = -1.0 + 0.05 * j;
      CHECK(std::abs(qsp_scalar_entry(ph.phases, x).real() - p.eval(x)) <= 2e-10);
    }
  }
}

TEST_CASE("eigen_transform: T1 returns the rescaled block") {
  Rng rng(22);
  Mat h = random_hermitian(6, rng);
  BlockEncoding be = dilate(h, 1.0);
  be.attach_target(h);
  RVec c = RVec::Zero(2);
  c(1) = 1.0;
  ChebyshevPolynomial t1 = make_chebyshev(c);
  for (auto mode : {TransformMode::semantic, TransformMode::faithful}) {
    auto r = eigen_transform(be, t1, mode);
    CHECK(verify_contract(r.be, h) <= 1e-8);
  }
}

TEST_CASE("eigen_transform: T2 at eigenvalues +-1 gives the identity") {
  Mat h = Mat::Zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;
  BlockEncoding be = dilate(h, 1.0);
  RVec c = RVec::Zero(3);
  c(2) = 1.0;  // T_2 = 2x^2-1
  ChebyshevPolynomial t2 = make_chebyshev(c);
  auto r = eigen_transform(be, t2, TransformMode::faithful);
  CHECK(verify_contract(r.be, Mat::Identity(2, 2)) <= 1e-8);
}

TEST_CASE("eigen_transform: semantic and faithful modes agree") {
  Rng rng(23);
  for (int trial = 0; trial < 3; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.integer(7));
    Mat h = random_hermitian(n, rng);
    BlockEncoding be = dilate(h, 1.0);
    RVec c = RVec::Zero(6);
    for (int k = 1; k <= 5; k += 2) c(k) = rng.uniform(-0.3, 0.3);
    ChebyshevPolynomial p = make_chebyshev(c);
    auto rs = eigen_transform(be, p, TransformMode::semantic);
    auto rf = eigen_transform(be, p, TransformMode::faithful);
    const double slack = 4 * p.degree() * std::sqrt(be.epsilon() / be.alpha()) + 1e-8;
    CHECK(spectral_norm(Mat(rs.be.block() - rf.be.block())) <= slack);
  }
}

TEST_CASE("ham_sim: zero time reports the ln floor") {
  Rng rng(24);
  Mat h = random_hermitian(4, rng);
  BlockEncoding be = dilate(h, 1.0);
  auto r = ham_sim(be, 0.0, 1e-6);
  CHECK(r.reported_query_count == static_cast<long>(std::ceil(9 * std::log(12.0 / 1e-6))));
  CHECK(verify_contract(r.be, Mat::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("ham_sim: printed query formula value") {
  CHECK(ham_sim_query_bound(2.0, 5.0, 1e-6) == 207);
}

TEST_CASE("ham_sim: Pauli-Z quarter period") {
  Mat h = Mat::Zero(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;
  BlockEncoding be = dilate(h, 1.0);
  auto r = ham_sim(be, kPi / 2, 1e-8);
  Mat expect = Mat::Zero(2, 2);
  expect(0, 0) = std::exp(cplx(0, -kPi / 2));
  expect(1, 1) = std::exp(cplx(0, kPi / 2));
  CHECK(verify_contract(r.be, expect) <= 1e-8);
  CHECK(r.measured_queries <= r.reported_query_count);
}

TEST_CASE("ham_sim: faithful block matches dense expm and stays unitary") {
  Rng rng(25);
  for (double eps : {1e-3, 1e-6}) {
    Mat h = 0.9 * random_hermitian(6, rng);
    BlockEncoding be = dilate(h, 1.0);
    const double t = 1.3;
    auto r = ham_sim(be, t, eps);
    Mat got = r.be.block();
    CHECK(spectral_norm(Mat(got - dense_expm(h, t))) <= eps);
    CHECK(spectral_norm(Mat(got.adjoint() * got - Mat::Identity(6, 6))) <= eps + 1e-10);
    CHECK(r.measured_queries <= r.reported_query_count);
  }
}

TEST_CASE("angleless_encode: constant and identity samples") {
  auto one = angleless_encode([](double) { return cplx(1, 0); }, 4, 0.0);
  for (Index k = 0; k < one.entries.size(); ++k) CHECK(std::abs(one.entries(k) - cplx(1, 0)) <= 1e-15);
  auto id = angleless_encode([](double x) { return cplx(x, 0); }, 2, 0.0);
  for (Index k = 0; k < 8; ++k)
    CHECK(id.entries(k).real() == doctest::Approx(std::cos(2 * kPi * k / 8.0)).epsilon(1e-14));
  auto expo = angleless_encode([](double x) { return std::exp(cplx(0, -2.0 * x)); }, 8, 0.0);
  for (Index k = 0; k < 32; ++k)
    CHECK(std::abs(expo.entries(k) - std::exp(cplx(0, -2.0 * std::cos(2 * kPi * k / 32.0)))) <= 1e-12);
  CHECK_THROWS_AS(angleless_encode([](double) { return cplx(1, 0); }, 3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(angleless_encode([](double) { return cplx(2, 0); }, 4, 0.0), std::domain_error);
}

TEST_CASE("angleless_transform: literal operator equals the collapsed evaluation") {
  Rng rng(26);
  Mat h = random_hermitian(3, rng);
  BlockEncoding be = dilate(h, 1.0);
  auto f = [](double x) { return std::exp(cplx(0, -1.5 * x)); };
  auto dfe = angleless_encode(f, 8, 0.0);
  auto lit = angleless_transform(be, dfe);
  Mat literal_block = lit.be.block();
  Mat collapsed = angleless_collapsed_block(be, dfe);
  CHECK(spectral_norm(Mat(literal_block - collapsed)) <= 1e-11);
}

TEST_CASE("angleless_transform: constant function gives the identity") {
  Rng rng(27);
  Mat h = random_hermitian(3, rng);
  BlockEncoding be = dilate(h, 1.0);
  auto dfe = angleless_encode([](double) { return cplx(1, 0); }, 4, 0.0);
  auto r = angleless_transform(be, dfe);
  CHECK(spectral_norm(Mat(std::sqrt(2.0) * r.be.block() - Mat::Identity(3, 3))) <=
        (1 + std::sqrt(2.0)) * r.e_d + 1e-9);
}

TEST_CASE("angleless_transform: identity function approximates H") {
  Mat h = Mat::Zero(2, 2);
  h(0, 0) = 0.5;
  h(1, 1) = -0.5;
  BlockEncoding be = dilate(h, 1.0);
  auto dfe = angleless_encode([](double x) { return cplx(x, 0); }, 8, 0.0);
  auto r = angleless_transform(be, dfe);
  const double bound = (1 + std::sqrt(2.0)) * r.e_d + std::sqrt(2.0) * dfe.delta + 1e-9;
  CHECK(spectral_norm(Mat(std::sqrt(2.0) * r.be.block() - h)) <= bound + 0.05);
}

TEST_CASE("angleless query bound: printed formula value") {
  CHECK(angleless_query_bound(1.0, 1.0, 0.01) == 716);
}

TEST_CASE("angleless_ham_sim: block matches dense expm after amplification") {
  Rng rng(28);
  Mat h = 0.8 * random_hermitian(4, rng);
  BlockEncoding be = dilate(h, 1.0);
  const double t = 1.0, eps = 1e-3;
  auto r = angleless_ham_sim(be, t, eps);
  CHECK(spectral_norm(Mat(r.be.block() - dense_expm(h, t))) <= eps);
  CHECK(r.measured_queries <= r.reported_query_count);
}
