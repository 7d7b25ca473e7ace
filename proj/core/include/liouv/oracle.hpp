// oracle.hpp — dense brute-force references: matrix exponentials, spectra,
// finite-difference gradients, Boltzmann thermodynamic-integration averages.
// Independent of the encoding pipelines by construction.
#pragma once

#include <functional>

#include "liouv/common.hpp"

namespace liouv {
namespace oracle {

// e^{-iLt} rho0 by eigendecomposition (L Hermitian).
Vec expm_evolve(const Mat& l, const Vec& rho0, double t);

// Same through scaling-and-squaring, as a cross-check route.
Vec expm_evolve_pade(const Mat& l, const Vec& rho0, double t);

struct Spectrum {
  RVec energies;
  Mat vectors;
};
Spectrum ground_truth_spectrum(const Mat& h);

double fd_gradient(const std::function<double(double)>& f, double x, double step);
// Richardson pair: (coarse, fine) central differences at step and step/2.
std::pair<double, double> fd_gradient_pair(const std::function<double(double)>& f, double x, double step);

// Left-Riemann thermodynamic integration over the interpolated microstate
// energies: (1/N) sum_k < e_b - e_a >_{Lambda_k} with Boltzmann weights.
double boltzmann_delta_f(const RVec& e_a, const RVec& e_b, int n_lambda, double temperature);

// Closed form -T ln(Z_b/Z_a).
double boltzmann_delta_f_exact(const RVec& e_a, const RVec& e_b, double temperature);

// Boltzmann average of a diagonal observable at one interpolation point.
double boltzmann_average(const RVec& energies, const RVec& observable, double temperature);

}  // namespace oracle
}  // namespace liouv
