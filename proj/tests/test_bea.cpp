#include <doctest.h>

#include "liouv/bea.hpp"
#include "liouv/tensor.hpp"

using namespace liouv;

namespace {
Mat random_contraction(Index n, Rng& rng, double norm_target) {
  Mat h = random_hermitian(n, rng);
  return norm_target * h;
}
}  // namespace

TEST_CASE("dilate: identity target") {
  BlockEncoding be = dilate(Mat::Identity(4, 4), 1.0);
  CHECK(be.ancilla_dim() == 2);
  CHECK(verify_contract(be, Mat::Identity(4, 4)) <= 1e-12);
  CHECK(be.unitarity_defect() <= 1e-12);
}

TEST_CASE("dilate: diagonal contraction") {
  Mat a = Mat::Zero(2, 2);
  a(0, 0) = 0.3;
  a(1, 1) = -0.7;
  BlockEncoding be = dilate(a, 1.0);
  CHECK(verify_contract(be, a) <= 1e-10);
  CHECK(be.unitarity_defect() <= 1e-12);
}

TEST_CASE("dilate: random Hermitian with alpha = norm") {
  Rng rng(11);
  Mat a = 2.0 * random_hermitian(4, rng);  // spectral norm 2
  BlockEncoding be = dilate(a, 2.0);
  CHECK(verify_contract(be, a) <= 1e-10);
  CHECK(be.hermitian_unitary());
}

TEST_CASE("dilate: norm violation rejected with measured norm") {
  Mat a = 1.5 * Mat::Identity(2, 2);
  CHECK_THROWS_AS(dilate(a, 1.0), std::domain_error);
  CHECK_THROWS_AS(dilate(Mat::Zero(2, 3), 1.0), std::invalid_argument);
}

TEST_CASE("verify_contract: exact and shifted targets") {
  Rng rng(5);
  Mat a = 0.8 * random_hermitian(6, rng);
  BlockEncoding be = dilate(a, 1.0);
  CHECK(verify_contract(be, a) <= 1e-10);
  Mat b = 0.5 * random_hermitian(6, rng);
  const double dev = verify_contract(be, b);
  CHECK(dev == doctest::Approx(spectral_norm(Mat(a - b))).epsilon(1e-9));
}

TEST_CASE("make_state_prep: single weight") {
  auto pair = make_state_prep(RVec::Ones(1), 0.0);
  CHECK(pair.beta == doctest::Approx(1.0));
  CHECK(std::abs(pair.left_unitary(0, 0) - cplx(1, 0)) <= 1e-14);
}

TEST_CASE("make_state_prep: uniform three weights") {
  RVec y(3);
  y << 1, 1, 1;
  auto pair = make_state_prep(y, 0.0);
  CHECK(pair.beta == doctest::Approx(3.0));
  for (int j = 0; j < 3; ++j) CHECK(std::abs(pair.left_unitary(j, 0) - cplx(1.0 / std::sqrt(3.0), 0)) <= 1e-12);
}

TEST_CASE("make_state_prep: charge weights satisfy the pair bound") {
  RVec y(3);
  y << 1, 6, 8;
  auto pair = make_state_prep(y, 1e-8);
  CHECK(pair.beta == doctest::Approx(15.0));
  double sum = 0;
  for (int j = 0; j < 3; ++j) {
    const cplx c = pair.left_unitary(j, 0), d = pair.right_unitary(j, 0);
    sum += std::abs(y(j) - pair.beta * (std::conj(c) * d).real());
    CHECK(std::abs(c - cplx(std::sqrt(y(j) / 15.0), 0)) <= 1e-12);
  }
  CHECK(sum <= 1e-8);
  // ell2 bound chain: sum |y - beta c^2| <= 2 beta ||v||
  Vec target(3);
  for (int j = 0; j < 3; ++j) target(j) = std::sqrt(y(j) / pair.beta);
  const double v = (pair.left_unitary.col(0).head(3) - target).norm();
  CHECK(sum <= 2.0 * pair.beta * v + 1e-12);
}

TEST_CASE("make_state_prep: all-zero weights rejected") {
  CHECK_THROWS_AS(make_state_prep(RVec::Zero(3), 0.0), std::invalid_argument);
}

TEST_CASE("lcu_weighted: single term passes through") {
  Rng rng(7);
  Mat a = 0.6 * random_hermitian(4, rng);
  BlockEncoding be = dilate(a, 1.0);
  BlockEncoding one = lcu_weighted({cplx(1, 0)}, {be});
  CHECK(verify_contract(one, a) <= 1e-9);
}

TEST_CASE("lcu_weighted: cancellation of A and -A") {
  Rng rng(8);
  Mat a = 0.5 * random_hermitian(4, rng);
  BlockEncoding bp = dilate(a, 1.0), bm = dilate(Mat(-a), 1.0);
  BlockEncoding sum = lcu_weighted({cplx(1, 0), cplx(1, 0)}, {bp, bm});
  CHECK(spectral_norm(Mat(sum.alpha() * sum.block())) <= sum.epsilon() + 1e-10);
}

TEST_CASE("lcu_weighted: difference encoding with sign arm") {
  Rng rng(9);
  Mat ha = random_hermitian(4, rng), hb = random_hermitian(4, rng);
  BlockEncoding ba = dilate(ha, 1.0), bb = dilate(hb, 1.0);
  BlockEncoding diff = lcu_weighted({cplx(1, 0), cplx(-1, 0)}, {bb, ba});
  CHECK(diff.alpha() == doctest::Approx(2.0));
  CHECK(verify_contract(diff, Mat(hb - ha)) <= diff.epsilon() + 1e-10);
}

TEST_CASE("lcu error composition matches the bound") {
  Rng rng(10);
  for (int trial = 0; trial < 6; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.integer(5));
    std::vector<BlockEncoding> terms;
    std::vector<cplx> ws;
    Mat target = Mat::Zero(n, n);
    const int m = 2 + static_cast<int>(rng.integer(3));
    for (int j = 0; j < m; ++j) {
      Mat a = random_contraction(n, rng, rng.uniform(0.2, 1.0));
      const double alpha = spectral_norm(a) * rng.uniform(1.0, 1.5);
      terms.push_back(dilate(a, alpha));
      const double w = rng.uniform(0.1, 2.0) * (rng.bernoulli(0.5) ? 1 : -1);
      ws.push_back(cplx(w, 0));
      target += w * a;
    }
    BlockEncoding comb = lcu_weighted(ws, terms);
    CHECK(verify_contract(comb, target) <= comb.epsilon() + 1e-9);
  }
}

TEST_CASE("product: identity times B") {
  Rng rng(12);
  Mat b = 0.7 * random_hermitian(4, rng);
  BlockEncoding bi = identity_encoding(4), bb = dilate(b, 1.0);
  BlockEncoding prod = product(bi, bb);
  CHECK(verify_contract(prod, b) <= prod.epsilon() + 1e-10);
}

TEST_CASE("product: dense product oracle") {
  Rng rng(13);
  Mat a = 0.9 * random_hermitian(5, rng), b = 0.8 * random_hermitian(5, rng);
  BlockEncoding ba = dilate(a, 1.0), bb = dilate(b, 1.0);
  BlockEncoding prod = product(ba, bb);
  CHECK(verify_contract(prod, Mat(a * b)) <= prod.epsilon() + 1e-9);
}

TEST_CASE("kron_product: dense Kronecker oracle") {
  Rng rng(14);
  Mat a = random_hermitian(3, rng), b = random_hermitian(4, rng);
  BlockEncoding ba = dilate(a, 1.0), bb = dilate(b, 1.5);
  BlockEncoding prod = kron_product(ba, bb);
  CHECK(prod.alpha() == doctest::Approx(1.5));
  CHECK(verify_contract(prod, kron(a, b)) <= prod.epsilon() + 1e-9);
}

TEST_CASE("randomized contract property (small)") {
  Rng rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.integer(7));
    Mat a = random_contraction(n, rng, rng.uniform(0.1, 2.0));
    const double alpha = std::max(spectral_norm(a), 1e-6) * rng.uniform(1.0, 2.0);
    BlockEncoding be = dilate(a, alpha);
    CHECK(verify_contract(be, a) <= 1e-10);
    CHECK(be.alpha() >= spectral_norm(be.alpha() * be.block()) - be.epsilon() - 1e-9);
  }
}

TEST_CASE("pad_ancilla keeps the contract") {
  Rng rng(16);
  Mat a = 0.4 * random_hermitian(3, rng);
  BlockEncoding be = dilate(a, 1.0);
  BlockEncoding padded = pad_ancilla(be, 6);
  CHECK(padded.ancilla_dim() == 6);
  CHECK(verify_contract(padded, a) <= 1e-10);
}

TEST_CASE("dimension cap errors") {
  CHECK_THROWS_AS(check_dim_cap(max_hilbert_dim() + 1, "test"), dim_cap_error);
}
