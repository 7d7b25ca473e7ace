#include <doctest.h>

#include "liouv/groundstate.hpp"

using namespace liouv;

namespace {
Mat diag2(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}
}  // namespace

TEST_CASE("reflector: two-level") {
  Mat h = diag2(-1, 1);
  BlockEncoding be = dilate(h, 1.0);
  GroundStateConfig cfg{0.0, 2.0, 1.0, 1e-4};
  auto r = reflector(be, cfg, 1e-6);
  CHECK(verify_contract(r.be, diag2(1, -1)) <= 1e-5);
}

TEST_CASE("reflector: three eigenvalues against the dense oracle") {
  Rng rng(31);
  Mat u = random_unitary(3, rng);
  RVec ev(3);
  ev << -0.9, -0.1, 0.5;
  Mat h = u * ev.cast<cplx>().asDiagonal() * u.adjoint();
  BlockEncoding be = dilate(h, 1.0);
  GroundStateConfig cfg{-0.5, 0.8, 1.0, 1e-4};
  auto r = reflector(be, cfg, 1e-5);
  Mat expect = Mat::Zero(3, 3);
  RVec signs(3);
  signs << 1, -1, -1;
  for (int i = 0; i < 3; ++i) expect += signs(i) * u.col(i) * u.col(i).adjoint();
  CHECK(verify_contract(r.be, expect) <= 1e-4);
}

TEST_CASE("reflector: robust to encoding error up to gamma/8") {
  Rng rng(32);
  Mat u = random_unitary(3, rng);
  RVec ev(3);
  ev << -0.9, -0.1, 0.5;
  Mat h = u * ev.cast<cplx>().asDiagonal() * u.adjoint();
  const double gamma = 0.8;
  Mat pert = (gamma / 8.0 * 0.9) * random_hermitian(3, rng);
  BlockEncoding noisy = dilate(Mat(h + pert), 1.0 + gamma / 8.0);
  BlockEncoding declared(noisy.op(), noisy.alpha(), noisy.ancilla_dim(), gamma / 8.0);
  declared.attach_target(h);
  GroundStateConfig cfg{-0.5, gamma, 1.0, 1e-4};
  auto r = reflector(declared, cfg, 1e-5);
  Mat expect = Mat::Zero(3, 3);
  RVec signs(3);
  signs << 1, -1, -1;
  for (int i = 0; i < 3; ++i) expect += signs(i) * u.col(i) * u.col(i).adjoint();
  // Weyl robustness: perturbed spectrum stays on the right side of mu
  CHECK(verify_contract(r.be, expect) <= 4 * std::sqrt(gamma / 8.0) * r.sign_degree + 1e-3);
  CHECK_THROWS_AS(
      reflector(BlockEncoding(noisy.op(), noisy.alpha(), noisy.ancilla_dim(), gamma / 2.0), cfg, 1e-5),
      std::domain_error);
}

TEST_CASE("prepare_ground_state: exact oracle needs no amplification") {
  Mat h = diag2(-0.8, 0.4);
  BlockEncoding be = dilate(h, 1.0);
  auto truth = dense_ground_states({h});
  InitialStateOracle oracle = make_initial_oracle(truth);
  GroundStateConfig cfg{-0.2, 1.0, 1.0, 1e-6};
  auto prep = prepare_ground_state(be, cfg, oracle);
  CHECK(prep.rounds == 0);
  CHECK(prep.fidelities(0) >= 1.0 - 1e-9);
}

TEST_CASE("prepare_ground_state: moderate overlap reaches the fidelity target") {
  Rng rng(33);
  Mat h = diag2(-0.8, 0.4);
  BlockEncoding be = dilate(h, 1.0);
  GroundStateConfig cfg{-0.2, 1.0, 0.6, 1e-4};
  InitialStateOracle oracle = planted_oracle({h}, 0.6, rng);
  auto prep = prepare_ground_state(be, cfg, oracle);
  CHECK(prep.fidelities.minCoeff() >= 1.0 - 1e-4);
  CHECK(prep.rounds <= amplification_round_cap(0.6));
}

TEST_CASE("prepare_ground_state: superposed blocks with distinct gaps") {
  Rng rng(34);
  std::vector<Mat> blocks;
  for (int b = 0; b < 4; ++b) {
    // planted common gap: ground near -0.8, first excited above 0.2
    Mat u = random_unitary(3, rng);
    RVec ev(3);
    ev << -0.8 + 0.05 * rng.uniform(-1, 1), 0.3 + 0.2 * rng.uniform(0, 1), 0.7 + 0.2 * rng.uniform(0, 1);
    blocks.push_back(Mat(u * ev.cast<cplx>().asDiagonal() * u.adjoint()));
  }
  Mat hc = block_controlled(blocks);
  BlockEncoding be = dilate(hc, 1.0);
  GroundStateConfig cfg = config_from_spectrum(blocks, 0.5, 1e-4);
  InitialStateOracle oracle = planted_oracle(blocks, 0.5, rng);
  auto prep = prepare_ground_state_superposed(be, cfg, oracle);
  for (Index b = 0; b < 4; ++b) CHECK(prep.fidelities(b) >= 1.0 - 1e-4);
}

TEST_CASE("prepare_ground_state: identical blocks reduce to the single case") {
  Rng rng(35);
  Mat h = diag2(-0.6, 0.6);
  Mat hc = block_controlled({h, h});
  BlockEncoding be_ctrl = dilate(hc, 1.0);
  BlockEncoding be_one = dilate(h, 1.0);
  GroundStateConfig cfg{0.0, 1.2, 0.7, 1e-5};
  InitialStateOracle oracle1 = planted_oracle({h}, 0.7, rng);
  InitialStateOracle oracle2;
  oracle2.block_preps = {oracle1.block_preps[0], oracle1.block_preps[0]};
  auto p1 = prepare_ground_state(be_one, cfg, oracle1);
  auto p2 = prepare_ground_state_superposed(be_ctrl, cfg, oracle2);
  CHECK(p2.rounds == p1.rounds);
  for (Index b = 0; b < 2; ++b)
    CHECK(std::abs(p2.fidelities(b) - p1.fidelities(0)) <= 1e-9);
}

TEST_CASE("prepare_ground_state: overlap below the bound fails loudly in strict mode") {
  Rng rng(36);
  Mat h = diag2(-0.8, 0.4);
  BlockEncoding be = dilate(h, 1.0);
  GroundStateConfig cfg{-0.2, 1.0, 0.9, 1e-4};
  InitialStateOracle weak = planted_oracle({h}, 0.3, rng);
  CHECK_THROWS_AS(prepare_ground_state(be, cfg, weak, TransformMode::faithful, true), std::domain_error);
  auto lax = prepare_ground_state(be, cfg, weak, TransformMode::faithful, false);
  CHECK(lax.fidelities(0) <= 1.0);
}

TEST_CASE("gap config validation") {
  Mat h = diag2(-1, 1);
  CHECK_THROWS_AS(validate_gap_config(GroundStateConfig{0.9, 0.5, 1.0, 1e-4}, {h}), std::domain_error);
  validate_gap_config(GroundStateConfig{0.0, 2.0, 1.0, 1e-4}, {h});
  auto cfg = config_from_spectrum({h}, 0.5, 1e-4);
  CHECK(cfg.mu == doctest::Approx(0.0));
  CHECK(cfg.gamma == doctest::Approx(1.0));  // half the true gap
}
