#include "liouv/qsp.hpp"

#include <Eigen/LU>

namespace liouv {

namespace {

using M2 = Eigen::Matrix2cd;

M2 rot(double x) {
  const double s = std::sqrt(std::max(0.0, 1.0 - x * x));
  M2 r;
  r << x, s, s, -x;
  return r;
}

M2 ephase(double phi) {
  M2 e = M2::Zero();
  e(0, 0) = std::polar(1.0, phi);
  e(1, 1) = std::polar(1.0, -phi);
  return e;
}

struct Model {
  // The sequence realizes Re M_00 for even degree and Im M_00 for odd degree
  // (the solvable component under the reflection convention).
  static cplx entry(const RVec& phases, double x) {
    M2 m = ephase(phases(0));
    const M2 r = rot(x);
    for (Index k = 1; k < phases.size(); ++k) m = m * r * ephase(phases(k));
    return m(0, 0);
  }

  static double component(cplx v, bool use_imag) { return use_imag ? v.imag() : v.real(); }

  static void derivs(const RVec& phases, double x, bool use_imag, double& value, RVec& dval) {
    const Index np = phases.size();
    const M2 r = rot(x);
    std::vector<M2> left(np), right(np);
    left[0] = ephase(phases(0));
    for (Index k = 1; k < np; ++k) left[k] = left[k - 1] * r * ephase(phases(k));
    right[np - 1] = M2::Identity();
    for (Index k = np - 2; k >= 0; --k) right[k] = r * ephase(phases(k + 1)) * right[k + 1];
    value = component(left[np - 1](0, 0), use_imag);
    dval.resize(np);
    for (Index k = 0; k < np; ++k) {
      // d/dphi_k M = i L_k sigma_z R_k
      const cplx e = left[k](0, 0) * right[k](0, 0) - left[k](0, 1) * right[k](1, 0);
      dval(k) = component(kI * e, use_imag);
    }
  }
};

struct ParityIndex {
  int degree;
  Parity parity;
  std::vector<int> coeff_idx;  // Chebyshev indices carried by this parity
};

ParityIndex parity_index(int degree, Parity parity) {
  ParityIndex pi{degree, parity, {}};
  const int start = (parity == Parity::even) ? 0 : 1;
  for (int k = start; k <= degree; k += 2) pi.coeff_idx.push_back(k);
  return pi;
}

// One Newton pass at a fixed target; returns achieved residual (inf norm on
// parity coefficients).
double newton_solve(const ParityIndex& pi, const RVec& target_coeffs, RVec& free_phases, int max_iter) {
  const int d = pi.degree;
  const bool use_imag = (pi.parity == Parity::odd);
  const int np = d + 1;
  const int nf = static_cast<int>(free_phases.size());
  const int nodes = d + 1;
  RVec xs(nodes);
  for (int j = 0; j < nodes; ++j) xs(j) = std::cos(kPi * (j + 0.5) / nodes);
  // DCT rows for the parity coefficient subset
  RMat dct(static_cast<Index>(pi.coeff_idx.size()), nodes);
  for (size_t c = 0; c < pi.coeff_idx.size(); ++c) {
    const int k = pi.coeff_idx[c];
    for (int j = 0; j < nodes; ++j) {
      double w = std::cos(k * kPi * (j + 0.5) / nodes) * 2.0 / nodes;
      if (k == 0) w *= 0.5;
      dct(static_cast<Index>(c), j) = w;
    }
  }
  RVec tgt(static_cast<Index>(pi.coeff_idx.size()));
  for (size_t c = 0; c < pi.coeff_idx.size(); ++c) tgt(static_cast<Index>(c)) = target_coeffs(pi.coeff_idx[c]);

  auto expand = [&](const RVec& fp) {
    RVec full(np);
    for (int k = 0; k < np; ++k) full(k) = fp(std::min(k, np - 1 - k));
    return full;
  };
  auto eval_residual = [&](const RVec& fp, RVec& res) {
    const RVec full = expand(fp);
    RVec vals(nodes);
    for (int j = 0; j < nodes; ++j) vals(j) = Model::component(Model::entry(full, xs(j)), use_imag);
    res = dct * vals - tgt;
    return res.cwiseAbs().maxCoeff();
  };

  RVec res;
  double rnorm = eval_residual(free_phases, res);
  for (int it = 0; it < max_iter; ++it) {
    if (rnorm < 1e-13) break;
    const RVec full = expand(free_phases);
    RMat dv(nodes, nf);
    RVec dval;
    double val;
    for (int j = 0; j < nodes; ++j) {
      Model::derivs(full, xs(j), use_imag, val, dval);
      for (int i = 0; i < nf; ++i) {
        double acc = dval(i);
        const int mirror = np - 1 - i;
        if (mirror != i) acc += dval(mirror);
        dv(j, i) = acc;
      }
    }
    RMat jac = dct * dv;
    RVec step = jac.partialPivLu().solve(res);
    double scale = 1.0;
    RVec trial, tres;
    double tnorm = rnorm;
    for (int h = 0; h < 40; ++h) {
      trial = free_phases - scale * step;
      tnorm = eval_residual(trial, tres);
      if (tnorm < rnorm) break;
      scale *= 0.5;
    }
    if (tnorm >= rnorm) break;  // stalled
    free_phases = trial;
    res = tres;
    rnorm = tnorm;
  }
  return rnorm;
}

}  // namespace

cplx qsp_scalar_entry(const RVec& phases, double x) { return Model::entry(phases, x); }

Eigen::Matrix2cd qsp_scalar_model(const RVec& phases, double x) {
  M2 m = ephase(phases(0));
  const M2 r = rot(x);
  for (Index k = 1; k < phases.size(); ++k) m = m * r * ephase(phases(k));
  return m;
}

namespace {
// Neutral starting point: the image of the canonical initialization under the
// rotation-to-reflection convention change.
RVec neutral_init(int nf) {
  RVec fp = RVec::Constant(nf, -kPi / 2);
  fp(0) = 0.0;
  return fp;
}

ChebyshevPolynomial trim_trailing_zeros(const ChebyshevPolynomial& p) {
  Index last = p.coeffs.size() - 1;
  while (last > 0 && p.coeffs(last) == 0.0) --last;
  if (last == p.coeffs.size() - 1) return p;
  ChebyshevPolynomial out = make_chebyshev(p.coeffs.head(last + 1));
  if (out.parity == Parity::none && p.parity != Parity::none) out.parity = p.parity;
  return out;
}
}  // namespace

QspPhases find_qsp_phases(const ChebyshevPolynomial& raw_target, double tol, int max_iter) {
  ChebyshevPolynomial target = trim_trailing_zeros(raw_target);
  if (target.parity == Parity::none) throw std::invalid_argument("find_qsp_phases: target must have definite parity");
  const int d = target.degree();
  if ((target.parity == Parity::even && d % 2 != 0) || (target.parity == Parity::odd && d % 2 != 1))
    throw std::invalid_argument("find_qsp_phases: degree/parity mismatch");
  if (target.sup_bound > 1.0 + 1e-12) {
    throw std::domain_error("find_qsp_phases: sup norm " + std::to_string(target.sup_bound) + " exceeds 1");
  }
  // the solve needs sup strictly below 1; shrink boundary targets by an
  // amount far below the reconstruction tolerance
  double shrink = 1.0;
  if (target.sup_bound > 1.0 - 1e-12) shrink = (1.0 - 1e-12) / target.sup_bound;

  const auto pi = parity_index(d, target.parity);
  const int np = d + 1;
  const int nf = (np + 1) / 2;

  RVec free_phases = neutral_init(nf);
  int iterations = 0;
  auto attempt = [&](const std::vector<double>& scales) {
    free_phases = neutral_init(nf);
    double r = 1;
    for (double s : scales) {
      RVec tc = target.coeffs * (s * shrink);
      r = newton_solve(pi, tc, free_phases, max_iter);
      iterations += max_iter;  // coarse accounting
    }
    return r;
  };

  double r = attempt({1.0});
  if (r > 1e-12) r = attempt({0.25, 0.5, 0.75, 0.9, 0.97, 1.0});
  if (r > 1e-12) r = attempt({0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99, 1.0});

  RVec full(np);
  for (int k = 0; k < np; ++k) full(k) = free_phases(std::min(k, np - 1 - k));

  // dense validation against the (unshrunk) target polynomial
  const bool use_imag = (target.parity == Parity::odd);
  const int m = 4 * (d + 10);
  double worst = 0;
  for (int j = 0; j <= m; ++j) {
    const double x = std::cos(kPi * j / m);
    worst = std::max(worst, std::abs(Model::component(Model::entry(full, x), use_imag) - target.eval(x)));
  }
  if (worst > tol) {
    throw std::runtime_error("find_qsp_phases: reconstruction residual " + fmt_sci(worst) +
                             " above tolerance " + fmt_sci(tol));
  }
  return QspPhases{full, worst, iterations};
}

}  // namespace liouv
