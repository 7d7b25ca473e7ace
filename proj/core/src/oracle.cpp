#include "liouv/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace liouv {
namespace oracle {

Vec expm_evolve(const Mat& l, const Vec& rho0, double t) {
  if (spectral_norm(Mat(l - l.adjoint())) > 1e-9) throw std::invalid_argument("expm_evolve: generator not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(l);
  Vec coeff = es.eigenvectors().adjoint() * rho0;
  for (Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::exp(cplx(0, -es.eigenvalues()(i) * t));
  return es.eigenvectors() * coeff;
}

Vec expm_evolve_pade(const Mat& l, const Vec& rho0, double t) {
  Mat u = Mat(cplx(0, -t) * l).exp();
  return u * rho0;
}

Spectrum ground_truth_spectrum(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("ground_truth_spectrum: eigensolver failed");
  Spectrum sp{es.eigenvalues(), es.eigenvectors()};
  return sp;
}

double fd_gradient(const std::function<double(double)>& f, double x, double step) {
  return (f(x + step) - f(x - step)) / (2.0 * step);
}

std::pair<double, double> fd_gradient_pair(const std::function<double(double)>& f, double x, double step) {
  return {fd_gradient(f, x, step), fd_gradient(f, x, step / 2.0)};
}

double boltzmann_average(const RVec& energies, const RVec& observable, double temperature) {
  if (energies.size() != observable.size()) throw std::invalid_argument("boltzmann_average: size mismatch");
  const double emin = energies.minCoeff();
  double z = 0, acc = 0;
  for (Index i = 0; i < energies.size(); ++i) {
    const double w = std::exp(-(energies(i) - emin) / temperature);
    z += w;
    acc += w * observable(i);
  }
  return acc / z;
}

double boltzmann_delta_f(const RVec& e_a, const RVec& e_b, int n_lambda, double temperature) {
  if (e_a.size() != e_b.size()) throw std::invalid_argument("boltzmann_delta_f: size mismatch");
  if (n_lambda < 1) throw std::invalid_argument("boltzmann_delta_f: need at least one interpolation point");
  const RVec diff = e_b - e_a;
  double acc = 0;
  for (int k = 0; k < n_lambda; ++k) {
    const double lam = static_cast<double>(k) / n_lambda;  // left rectangle rule
    const RVec e_lam = (1.0 - lam) * e_a + lam * e_b;
    acc += boltzmann_average(e_lam, diff, temperature);
  }
  return acc / n_lambda;
}

double boltzmann_delta_f_exact(const RVec& e_a, const RVec& e_b, double temperature) {
  const double shift = std::min(e_a.minCoeff(), e_b.minCoeff());
  double za = 0, zb = 0;
  for (Index i = 0; i < e_a.size(); ++i) {
    za += std::exp(-(e_a(i) - shift) / temperature);
    zb += std::exp(-(e_b(i) - shift) / temperature);
  }
  return -temperature * std::log(zb / za);
}

}  // namespace oracle
}  // namespace liouv
