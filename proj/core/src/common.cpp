#include "liouv/common.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cstdio>
#include <cstdlib>

namespace liouv {

Index max_hilbert_dim() {
  static const Index cap = [] {
    if (const char* env = std::getenv("LIOUV_MAX_DIM")) {
      long long v = std::atoll(env);
      if (v > 0) return static_cast<Index>(v);
    }
    return static_cast<Index>(1) << 16;
  }();
  return cap;
}

Index dense_unitary_limit() {
  static const Index cap = [] {
    if (const char* env = std::getenv("LIOUV_DENSE_LIMIT")) {
      long long v = std::atoll(env);
      if (v > 0) return static_cast<Index>(v);
    }
    return static_cast<Index>(4096);
  }();
  return cap;
}

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

void check_dim_cap(Index dim, const std::string& what) {
  if (dim > max_hilbert_dim()) {
    throw dim_cap_error(what + ": total Hilbert dimension " + std::to_string(dim) +
                        " exceeds cap " + std::to_string(max_hilbert_dim()));
  }
}

double spectral_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::BDCSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

Mat hermitian_sqrt_psd(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success) throw std::runtime_error("hermitian_sqrt_psd: eigensolver failed");
  RVec ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-12) {
      throw std::domain_error("hermitian_sqrt_psd: matrix not PSD, min eigenvalue " + std::to_string(ev(i)));
    }
    if (ev(i) < 0.0) ev(i) = 0.0;
    ev(i) = std::sqrt(ev(i));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

Index next_power_of_two(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

int ceil_log2(Index n) {
  int a = 0;
  Index p = 1;
  while (p < n) {
    p <<= 1;
    ++a;
  }
  return a;
}

void fft_pow2(Vec& data, bool inverse) {
  const Index n = data.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft_pow2: length must be a power of two");
  // bit reversal
  for (Index i = 1, j = 0; i < n; ++i) {
    Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data(i), data(j));
  }
  for (Index len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const cplx wl(std::cos(ang), std::sin(ang));
    for (Index i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (Index k = 0; k < len / 2; ++k) {
        cplx u = data(i + k);
        cplx v = data(i + k + len / 2) * w;
        data(i + k) = u + v;
        data(i + k + len / 2) = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) data /= static_cast<double>(n);
}

Mat random_unitary(Index n, Rng& rng) {
  Mat g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    cplx d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : cplx(1, 0);
  }
  return q;
}

Mat random_hermitian(Index n, Rng& rng) {
  Mat g(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Mat h = 0.5 * (g + g.adjoint());
  double nrm = spectral_norm(h);
  if (nrm > 0) h /= nrm;
  return h;
}

}  // namespace liouv
