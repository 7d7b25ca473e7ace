// common.hpp — shared scalar/matrix types, dimension guardrail, dense helpers
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace liouv {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kUnitaryTol = 1e-12;

// Total Hilbert-space dimension any constructor may allocate.  Overridable
// through the LIOUV_MAX_DIM environment variable.
Index max_hilbert_dim();

// Unitaries up to this dimension are materialized as dense matrices; larger
// ones stay in structured (apply-only) form.
Index dense_unitary_limit();

struct dim_cap_error : std::runtime_error {
  explicit dim_cap_error(const std::string& what) : std::runtime_error(what) {}
};

void check_dim_cap(Index dim, const std::string& what);

// scientific-notation formatting for error messages
std::string fmt_sci(double v);

// Largest singular value, dense.
double spectral_norm(const Mat& a);

// Hermitian square root of a PSD matrix; eigenvalues in [-1e-14, 0) clip to 0,
// more negative ones throw.
Mat hermitian_sqrt_psd(const Mat& a);

bool is_power_of_two(Index n);
Index next_power_of_two(Index n);
int ceil_log2(Index n);

// In-place radix-2 FFT (forward: e^{-2pi i jk/n}).  n must be a power of two.
void fft_pow2(Vec& data, bool inverse);

// Deterministic RNG wrapper: all stochastic code paths draw from this.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  std::uint64_t integer(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_); }
  bool bernoulli(double p) { return uniform() < p; }
  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

Mat random_unitary(Index n, Rng& rng);
Mat random_hermitian(Index n, Rng& rng);  // spectral norm <= 1 after rescale

}  // namespace liouv
