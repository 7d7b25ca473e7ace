#include <doctest.h>

#include "liouv/liouvillian.hpp"
#include "liouv/oracle.hpp"

using namespace liouv;

namespace {
ElectronicSpec well_espec() {
  ElectronicSpec e;
  e.n_planewaves = 3;
  e.h_el = 1.0;
  e.ext_positions = RVec::Zero(1);
  e.ext_charges = RVec::Ones(1);
  e.eps_prep = 1e-4;
  return e;
}

PhaseSpaceSpec small_nvt(Index gx = 4, Index gp = 4) {
  PhaseSpaceSpec s;
  s.N = 1;
  s.x = {gx, 0.8, 1};
  s.p = {gp, 0.5, 1};
  s.s = {3, 0.5, 1};
  s.ps = {3, 0.5, 1};
  s.masses = RVec::Ones(1);
  s.charges = RVec::Ones(1);
  s.ensemble = Ensemble::NVT;
  return s;
}
}  // namespace

TEST_CASE("electronic Liouvillian: flat surface gives the zero operator") {
  Rng rng(51);
  ElectronicSpec e = well_espec();
  e.ext_positions.resize(0);
  e.ext_charges.resize(0);  // translation-invariant: E0(x) constant
  PhaseSpaceSpec p = small_nvt();
  auto el = electronic_liouvillian(e, p, rng);
  CHECK(spectral_norm(el.enc.dense) <= el.eps_bound + 1e-8);
}

TEST_CASE("electronic Liouvillian: dense Kronecker oracle and Hermiticity") {
  Rng rng(52);
  ElectronicSpec e = well_espec();
  PhaseSpaceSpec p = small_nvt();
  auto el = electronic_liouvillian(e, p, rng);
  // independent assembly: i * diag(dE/dx) (x) D_p from the reference surface
  RVec ref = hf_force_reference(e, p, 0, 0);
  Mat target = electronic_liouvillian_dense(p, {ref});
  CHECK(spectral_norm(Mat(el.enc.dense - target)) <= el.eps_bound + 1e-8);
  CHECK(spectral_norm(Mat(el.enc.dense - el.enc.dense.adjoint())) <= 1e-10);
  CHECK(verify_contract(el.enc.be, target) <= el.enc.be.epsilon() + 1e-8);
}

TEST_CASE("electronic Liouvillian term equals the product-encoding route at small size") {
  Rng rng(53);
  ElectronicSpec e = well_espec();
  PhaseSpaceSpec p = small_nvt(3, 3);
  auto kb = d_el(e, p, 0, 0, rng);
  // literal route: (D^el encoding) kron (iD_p encoding) via the product lemma
  Mat idp = kI * derivative_matrix(p.p.g, p.p.h, p.p.d);
  const double alpha_dp = stencil(p.p.d).l1() / p.p.h;
  BlockEncoding dp_enc = dilate(idp, alpha_dp);
  BlockEncoding lit = kron_product(kb.be, dp_enc);
  Mat expect = kron(Mat(kb.entries.cast<cplx>().asDiagonal()), idp);
  CHECK(verify_contract(lit, expect) <= lit.epsilon() + kb.eps_bound * alpha_dp + 1e-8);
}

TEST_CASE("full Liouvillian: scaling additivity and the zero-force limit") {
  Rng rng(54);
  ElectronicSpec e = well_espec();
  PhaseSpaceSpec p = small_nvt();
  auto full = full_liouvillian(e, p, rng);
  CHECK(full.enc.be.alpha() == doctest::Approx(full.alpha_el + full.alpha_cl).epsilon(1e-12));
  CHECK(verify_contract(full.enc.be, full.enc.dense) <= full.enc.be.epsilon() + 1e-7);
  CHECK(spectral_norm(Mat(full.enc.dense - full.enc.dense.adjoint())) <= 1e-9);

  // flat surface: L reduces to the classical part
  ElectronicSpec eflat = e;
  eflat.ext_positions.resize(0);
  eflat.ext_charges.resize(0);
  auto lflat = full_liouvillian(eflat, p, rng);
  auto lcl = classical_liouvillian(p);
  CHECK(spectral_norm(Mat(lflat.enc.dense - lcl.dense)) <= lflat.eps_bound + 1e-8);
}

TEST_CASE("evolve: zero time is the identity") {
  Rng rng(55);
  PhaseSpaceSpec p;
  p.N = 1;
  p.x = {8, 1.0, 1};
  p.p = {8, 0.5, 1};
  p.masses = RVec::Ones(1);
  p.charges = RVec::Zero(1);
  p.ensemble = Ensemble::NVE;
  auto l = classical_liouvillian(p);
  RVec centers(2), widths(2);
  centers << 4.0, 1.0;
  widths << 0.8, 0.4;
  KvNState rho0 = gaussian_state(l.layout, centers, widths);
  auto r = evolve(l, rho0, 0.0, 1e-6);
  CHECK((r.state.amplitudes - rho0.amplitudes).norm() <= 1e-12);
}

TEST_CASE("evolve: free-particle translation at rate p/m") {
  PhaseSpaceSpec p;
  p.N = 1;
  p.x = {8, 1.0, 3};
  p.p = {8, 0.5, 1};
  p.masses = RVec::Ones(1);
  p.charges = RVec::Zero(1);
  p.ensemble = Ensemble::NVE;
  auto l = classical_liouvillian(p);
  // momentum eigenslice: tight in p at value 1.0, broad in x
  RVec centers(2), widths(2);
  centers << 4.0, 1.0;
  widths << 1.6, 0.05;
  KvNState rho0 = gaussian_state(l.layout, centers, widths);
  const double t = 2.0;
  auto sem = evolve(l, rho0, t, 1e-8, Engine::qsvt, TransformMode::semantic);
  auto fai = evolve(l, rho0, t, 1e-6, Engine::qsvt, TransformMode::faithful);
  // faithful vs dense exponential
  Vec dense = oracle::expm_evolve(l.dense, rho0.amplitudes, t);
  CHECK((fai.state.amplitudes - dense).norm() <= 1e-6 + 1e-10);
  CHECK(fai.norm_defect <= 1e-6 + 1e-10);
  // displacement read off the circular cross-correlation of the position
  // marginals (wrap-safe): h_x * round(p t / (m h_x))
  RVec m0 = rho0.marginal(0), mt = sem.state.marginal(0);
  Index best_shift = 0;
  double best_corr = -1;
  for (Index sft = 0; sft < 8; ++sft) {
    double corr = 0;
    for (Index i = 0; i < 8; ++i) corr += m0(i) * mt((i + sft) % 8);
    if (corr > best_corr) {
      best_corr = corr;
      best_shift = sft;
    }
  }
  CHECK(best_shift == static_cast<Index>(std::round(1.0 * t / (1.0 * p.x.h))));
  // faithful and semantic displacements agree tightly
  CHECK(std::abs(fai.state.expectation(0) - sem.state.expectation(0)) <= 1e-5);
}

TEST_CASE("evolve: composition on a small NVT system") {
  Rng rng(56);
  PhaseSpaceSpec p = small_nvt(3, 4);
  auto l = classical_liouvillian(p);
  RVec centers(4), widths(4);
  centers << 1.0, 0.0, 0.5, 0.0;
  widths << 0.6, 0.4, 0.4, 0.4;
  KvNState rho0 = gaussian_state(l.layout, centers, widths);
  const double eps = 1e-5;
  auto r1 = evolve(l, rho0, 0.7, eps);
  KvNState mid = r1.state;
  mid.amplitudes.normalize();
  auto r2 = evolve(l, mid, 0.5, eps);
  auto r12 = evolve(l, rho0, 1.2, eps);
  CHECK((r2.state.amplitudes - r12.state.amplitudes).norm() <= 3 * eps);
}

TEST_CASE("evolve: qsvt and angleless engines agree") {
  PhaseSpaceSpec p;
  p.N = 1;
  p.x = {6, 1.0, 1};
  p.p = {6, 0.5, 1};
  p.masses = RVec::Ones(1);
  p.charges = RVec::Zero(1);
  p.ensemble = Ensemble::NVE;
  auto l = classical_liouvillian(p);
  RVec centers(2), widths(2);
  centers << 3.0, 0.5;
  widths << 1.0, 0.4;
  KvNState rho0 = gaussian_state(l.layout, centers, widths);
  const double eps = 1e-4;
  auto rq = evolve(l, rho0, 0.8, eps, Engine::qsvt);
  auto ra = evolve(l, rho0, 0.8, eps, Engine::angleless);
  CHECK((ra.state.amplitudes - rq.state.amplitudes).norm() <= 2 * eps);
  CHECK(std::abs(ra.state.norm() - 1.0) <= eps + 1e-10);
  CHECK(ra.measured_queries <= ra.reported_query_count);
}
