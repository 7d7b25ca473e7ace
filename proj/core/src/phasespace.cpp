#include "liouv/phasespace.hpp"

#include <Eigen/LU>

namespace liouv {

void PhaseSpaceSpec::validate() const {
  auto check_grid = [](const VarGrid& v, const char* name) {
    if (v.g < 3) throw std::invalid_argument(std::string("phase space: ") + name + " grid needs at least 3 points");
    if (v.h <= 0) throw std::invalid_argument(std::string("phase space: ") + name + " spacing must be positive");
    if (v.d < 1 || v.d > (v.g - 1) / 2)
      throw std::invalid_argument(std::string("phase space: ") + name + " stencil order out of range");
  };
  if (N < 1) throw std::invalid_argument("phase space: need at least one nucleus");
  if (spatial_dim != 1 && spatial_dim != 3) throw std::invalid_argument("phase space: spatial_dim must be 1 or 3");
  check_grid(x, "x");
  check_grid(p, "p");
  if (ensemble == Ensemble::NVT) {
    check_grid(s, "s");
    check_grid(ps, "p_s");
    if (Q <= 0 || T <= 0 || N_f < 1 || s_min <= 0)
      throw std::invalid_argument("phase space: bath parameters must be positive");
  }
  if (masses.size() != N || charges.size() != N)
    throw std::invalid_argument("phase space: masses/charges must have one entry per nucleus");
  for (int n = 0; n < N; ++n) {
    if (masses(n) <= 0 || charges(n) < 0) throw std::invalid_argument("phase space: masses positive, charges >= 0");
  }
  if (softening <= 0) throw std::invalid_argument("phase space: softening must be positive");
  check_dim_cap(grid_points(), "phase space");
}

Index PhaseSpaceSpec::grid_points() const {
  Index t = 1;
  for (int n = 0; n < N * spatial_dim; ++n) t *= x.g * p.g;
  if (ensemble == Ensemble::NVT) t *= s.g * ps.g;
  return t;
}

Layout layout_of(const PhaseSpaceSpec& spec) {
  Layout lay;
  for (int n = 0; n < spec.N; ++n)
    for (int j = 0; j < spec.spatial_dim; ++j) {
      lay.axes.push_back({Var::x, n, j, spec.x.g, spec.x.h, 0.0});
      lay.dims.push_back(spec.x.g);
    }
  for (int n = 0; n < spec.N; ++n)
    for (int j = 0; j < spec.spatial_dim; ++j) {
      lay.axes.push_back({Var::p, n, j, spec.p.g, spec.p.h, spec.p.h * static_cast<double>(spec.p.g / 2)});
      lay.dims.push_back(spec.p.g);
    }
  if (spec.ensemble == Ensemble::NVT) {
    lay.axes.push_back({Var::s, 0, 0, spec.s.g, spec.s.h, 0.0});
    lay.dims.push_back(spec.s.g);
    lay.axes.push_back({Var::ps, 0, 0, spec.ps.g, spec.ps.h, spec.ps.h * static_cast<double>(spec.ps.g / 2)});
    lay.dims.push_back(spec.ps.g);
  }
  return lay;
}

int Layout::axis_x(int n, int j) const {
  for (size_t a = 0; a < axes.size(); ++a)
    if (axes[a].var == Var::x && axes[a].n == n && axes[a].j == j) return static_cast<int>(a);
  throw std::out_of_range("layout: no such x axis");
}
int Layout::axis_p(int n, int j) const {
  for (size_t a = 0; a < axes.size(); ++a)
    if (axes[a].var == Var::p && axes[a].n == n && axes[a].j == j) return static_cast<int>(a);
  throw std::out_of_range("layout: no such p axis");
}
int Layout::axis_s() const {
  for (size_t a = 0; a < axes.size(); ++a)
    if (axes[a].var == Var::s) return static_cast<int>(a);
  throw std::out_of_range("layout: no bath axis in this ensemble");
}
int Layout::axis_ps() const {
  for (size_t a = 0; a < axes.size(); ++a)
    if (axes[a].var == Var::ps) return static_cast<int>(a);
  throw std::out_of_range("layout: no bath momentum axis in this ensemble");
}
std::vector<int> Layout::axes_of(Var v) const {
  std::vector<int> out;
  for (size_t a = 0; a < axes.size(); ++a)
    if (axes[a].var == v) out.push_back(static_cast<int>(a));
  return out;
}

double KvNState::expectation(int axis) const {
  const auto st = strides(layout.dims);
  const AxisInfo& ax = layout.axes[axis];
  double acc = 0, tot = 0;
  for (Index i = 0; i < amplitudes.size(); ++i) {
    const double w = std::norm(amplitudes(i));
    acc += w * ax.value((i / st[axis]) % ax.g);
    tot += w;
  }
  return (tot > 0) ? acc / tot : 0.0;
}

RVec KvNState::marginal(int axis) const {
  const auto st = strides(layout.dims);
  const AxisInfo& ax = layout.axes[axis];
  RVec m = RVec::Zero(ax.g);
  for (Index i = 0; i < amplitudes.size(); ++i) m((i / st[axis]) % ax.g) += std::norm(amplitudes(i));
  return m;
}

KvNState gaussian_state(const Layout& layout, const RVec& centers, const RVec& widths) {
  const int na = static_cast<int>(layout.axes.size());
  if (centers.size() != na || widths.size() != na)
    throw std::invalid_argument("gaussian_state: need one center and width per axis");
  KvNState st;
  st.layout = layout;
  st.amplitudes.resize(layout.total());
  const auto str = strides(layout.dims);
  for (Index i = 0; i < st.amplitudes.size(); ++i) {
    double logw = 0;
    for (int a = 0; a < na; ++a) {
      const AxisInfo& ax = layout.axes[a];
      const double v = ax.value((i / str[a]) % ax.g);
      // nearest periodic image of the displacement
      const double span = ax.g * ax.h;
      double dv = v - centers(a);
      dv -= span * std::round(dv / span);
      logw += -dv * dv / (4.0 * widths(a) * widths(a));
    }
    st.amplitudes(i) = std::exp(logw);
  }
  st.amplitudes.normalize();
  return st;
}

KvNState thermal_state(const Layout& layout, const RVec& energies, double temperature) {
  if (energies.size() != layout.total()) throw std::invalid_argument("thermal_state: energy vector size mismatch");
  KvNState st;
  st.layout = layout;
  st.amplitudes.resize(energies.size());
  const double emin = energies.minCoeff();
  for (Index i = 0; i < energies.size(); ++i)
    st.amplitudes(i) = std::exp(-(energies(i) - emin) / (2.0 * temperature));
  st.amplitudes.normalize();
  return st;
}

FDStencil stencil(int d) {
  if (d < 1) throw std::invalid_argument("stencil: order must be at least 1");
  // Solve sum_k 2 c_k k^(2m-1) = delta_{m,1}, m = 1..d (odd-monomial exactness).
  RMat a(d, d);
  RVec b = RVec::Zero(d);
  b(0) = 1.0;
  for (int m = 1; m <= d; ++m)
    for (int k = 1; k <= d; ++k) a(m - 1, k - 1) = 2.0 * std::pow(static_cast<double>(k), 2 * m - 1);
  RVec c = a.fullPivLu().solve(b);
  FDStencil st;
  st.d = d;
  st.coeffs = RVec::Zero(2 * d + 1);
  for (int k = 1; k <= d; ++k) {
    st.coeffs(d + k) = c(k - 1);
    st.coeffs(d - k) = -c(k - 1);
  }
  return st;
}

double FDStencil::l1() const { return coeffs.cwiseAbs().sum(); }

Mat derivative_matrix(Index g, double h, int d) {
  const FDStencil st = stencil(d);
  Mat m = Mat::Zero(g, g);
  for (Index col = 0; col < g; ++col) {
    for (int k = -d; k <= d; ++k) {
      if (k == 0) continue;
      const Index row = ((col - k) % g + g) % g;
      m(row, col) += st.coeff(k) / h;
    }
  }
  return m;
}

Mat derivative_operator(const PhaseSpaceSpec& spec, Var v, int n, int j) {
  const Layout lay = layout_of(spec);
  int axis;
  VarGrid grid;
  switch (v) {
    case Var::x: axis = lay.axis_x(n, j); grid = spec.x; break;
    case Var::p: axis = lay.axis_p(n, j); grid = spec.p; break;
    case Var::s: axis = lay.axis_s(); grid = spec.s; break;
    case Var::ps: axis = lay.axis_ps(); grid = spec.ps; break;
    default: throw std::invalid_argument("derivative_operator: unknown variable");
  }
  return embed_op(derivative_matrix(grid.g, grid.h, grid.d), lay.dims, {axis});
}

namespace {

double pair_force_1d(double zn, double zk, double dx, double delta) {
  const double r2 = dx * dx + delta * delta;
  return -zn * zk * dx / std::pow(r2, 1.5);
}

// values of a function of several axes, enumerated slowest-first
RVec tabulate(const Layout& lay, const std::vector<int>& axes, const std::function<double(const std::vector<double>&)>& f) {
  Dims sub;
  for (int a : axes) sub.push_back(lay.dims[a]);
  const Index n = total_dim(sub);
  RVec out(n);
  std::vector<double> vals(axes.size());
  for (Index i = 0; i < n; ++i) {
    const auto idx = unflatten(i, sub);
    for (size_t k = 0; k < axes.size(); ++k) vals[k] = lay.axes[axes[k]].value(idx[k]);
    out(i) = f(vals);
  }
  return out;
}

}  // namespace

DiagTerm partial_x(const PhaseSpaceSpec& spec, int n, int j) {
  spec.validate();
  const Layout lay = layout_of(spec);
  std::vector<int> axes = lay.axes_of(Var::x);
  DiagTerm t;
  t.axes = axes;
  t.values = tabulate(lay, axes, [&](const std::vector<double>& xs) {
    double acc = 0;
    for (int k = 0; k < spec.N; ++k) {
      if (k == n) continue;
      // 1D: component j of the pair separation
      double d2 = 0;
      for (int jj = 0; jj < spec.spatial_dim; ++jj) {
        const double dd = xs[n * spec.spatial_dim + jj] - xs[k * spec.spatial_dim + jj];
        d2 += dd * dd;
      }
      const double dxj = xs[n * spec.spatial_dim + j] - xs[k * spec.spatial_dim + j];
      acc += -spec.charges(n) * spec.charges(k) * dxj / std::pow(d2 + spec.softening * spec.softening, 1.5);
    }
    return acc;
  });
  return t;
}

DiagTerm partial_p(const PhaseSpaceSpec& spec, int n, int j) {
  spec.validate();
  const Layout lay = layout_of(spec);
  DiagTerm t;
  if (spec.ensemble == Ensemble::NVT) {
    t.axes = {lay.axis_p(n, j), lay.axis_s()};
    t.values = tabulate(lay, t.axes, [&](const std::vector<double>& v) {
      const double sshift = v[1] + spec.s_min;
      return v[0] / (spec.masses(n) * sshift * sshift);
    });
  } else {
    t.axes = {lay.axis_p(n, j)};
    t.values = tabulate(lay, t.axes, [&](const std::vector<double>& v) { return v[0] / spec.masses(n); });
  }
  return t;
}

DiagTerm partial_s(const PhaseSpaceSpec& spec) {
  spec.validate();
  if (spec.ensemble != Ensemble::NVT) throw std::invalid_argument("partial_s: bath terms need the NVT ensemble");
  const Layout lay = layout_of(spec);
  DiagTerm t;
  t.axes = lay.axes_of(Var::p);
  t.axes.push_back(lay.axis_s());
  t.values = tabulate(lay, t.axes, [&](const std::vector<double>& v) {
    const double sshift = v.back() + spec.s_min;
    double acc = spec.N_f * spec.T / sshift;  // k_B = 1
    int idx = 0;
    for (int n = 0; n < spec.N; ++n)
      for (int j = 0; j < spec.spatial_dim; ++j, ++idx)
        acc += -v[idx] * v[idx] / (spec.masses(n) * sshift * sshift * sshift);
    return acc;
  });
  return t;
}

DiagTerm partial_ps(const PhaseSpaceSpec& spec) {
  spec.validate();
  if (spec.ensemble != Ensemble::NVT) throw std::invalid_argument("partial_ps: bath terms need the NVT ensemble");
  const Layout lay = layout_of(spec);
  DiagTerm t;
  t.axes = {lay.axis_ps()};
  t.values = tabulate(lay, t.axes, [&](const std::vector<double>& v) { return v[0] / spec.Q; });
  return t;
}

DiagTerm kinetic_entries(const PhaseSpaceSpec& spec) {
  spec.validate();
  const Layout lay = layout_of(spec);
  DiagTerm t;
  t.axes = lay.axes_of(Var::p);
  if (spec.ensemble == Ensemble::NVT) t.axes.push_back(lay.axis_s());
  t.values = tabulate(lay, t.axes, [&](const std::vector<double>& v) {
    const double sshift = (spec.ensemble == Ensemble::NVT) ? v.back() + spec.s_min : 1.0;
    double acc = 0;
    int idx = 0;
    for (int n = 0; n < spec.N; ++n)
      for (int j = 0; j < spec.spatial_dim; ++j, ++idx) acc += v[idx] * v[idx] / (2.0 * spec.masses(n) * sshift * sshift);
    return acc;
  });
  return t;
}

DiagTerm potential_entries(const PhaseSpaceSpec& spec) {
  spec.validate();
  const Layout lay = layout_of(spec);
  DiagTerm t;
  t.axes = lay.axes_of(Var::x);
  t.values = tabulate(lay, t.axes, [&](const std::vector<double>& xs) {
    double acc = 0;
    for (int k = 0; k < spec.N - 1; ++k)
      for (int n = k + 1; n < spec.N; ++n) {
        double d2 = 0;
        for (int jj = 0; jj < spec.spatial_dim; ++jj) {
          const double dd = xs[n * spec.spatial_dim + jj] - xs[k * spec.spatial_dim + jj];
          d2 += dd * dd;
        }
        acc += spec.charges(n) * spec.charges(k) / std::sqrt(d2 + spec.softening * spec.softening);
      }
    return acc;
  });
  return t;
}

DiagTerm bath_entries(const PhaseSpaceSpec& spec) {
  spec.validate();
  if (spec.ensemble != Ensemble::NVT) throw std::invalid_argument("bath_entries: NVT only");
  const Layout lay = layout_of(spec);
  DiagTerm t;
  t.axes = {lay.axis_s(), lay.axis_ps()};
  t.values = tabulate(lay, t.axes, [&](const std::vector<double>& v) {
    return v[1] * v[1] / (2.0 * spec.Q) + spec.N_f * spec.T * std::log(v[0] + spec.s_min);
  });
  return t;
}

namespace {

struct LiouvTerm {
  Mat axis_op;  // Hermitian operator on one axis (i * derivative)
  int axis;
  DiagTerm diag;
  double coeff;  // +-1
  double alpha;  // stencil l1 / h times sup |diag|
};

std::vector<LiouvTerm> liouvillian_terms(const PhaseSpaceSpec& spec) {
  const Layout lay = layout_of(spec);
  std::vector<LiouvTerm> terms;
  auto add = [&](Var v, int n, int j, DiagTerm diag, double coeff) {
    const VarGrid grid = (v == Var::x) ? spec.x : (v == Var::p) ? spec.p : (v == Var::s) ? spec.s : spec.ps;
    int axis;
    switch (v) {
      case Var::x: axis = lay.axis_x(n, j); break;
      case Var::p: axis = lay.axis_p(n, j); break;
      case Var::s: axis = lay.axis_s(); break;
      default: axis = lay.axis_ps(); break;
    }
    LiouvTerm t;
    t.axis_op = kI * derivative_matrix(grid.g, grid.h, grid.d);  // Hermitian
    t.axis = axis;
    t.diag = std::move(diag);
    t.coeff = coeff;
    const double sup = t.diag.values.cwiseAbs().maxCoeff();
    t.alpha = (stencil(grid.d).l1() / grid.h) * sup;
    terms.push_back(std::move(t));
  };
  // L = -i sum_nj (D_x dH/dp - dH/dx D_p) - i (D_s dH/dps - dH/ds D_ps)
  // with D = -i (iD): the coefficients on the Hermitian factors are -+1.
  for (int n = 0; n < spec.N; ++n)
    for (int j = 0; j < spec.spatial_dim; ++j) {
      add(Var::x, n, j, partial_p(spec, n, j), -1.0);
      if (spec.N > 1) add(Var::p, n, j, partial_x(spec, n, j), +1.0);
    }
  if (spec.ensemble == Ensemble::NVT) {
    add(Var::s, 0, 0, partial_ps(spec), -1.0);
    add(Var::ps, 0, 0, partial_s(spec), +1.0);
  }
  return terms;
}

}  // namespace

Mat classical_liouvillian_dense(const PhaseSpaceSpec& spec) {
  spec.validate();
  const Layout lay = layout_of(spec);
  const Index n = lay.total();
  Mat l = Mat::Zero(n, n);
  for (const auto& t : liouvillian_terms(spec)) {
    const Vec diag_full = expand_axes_diag(t.diag.values.cast<cplx>(), lay.dims, t.diag.axes);
    Mat a = embed_op(t.axis_op, lay.dims, {t.axis});
    // the diagonal factor lives on disjoint axes, so A*D = D*A
    for (Index c = 0; c < n; ++c) a.col(c) *= t.coeff * diag_full(c);
    l += a;
  }
  if (spectral_norm(Mat(l - l.adjoint())) > 1e-9)
    throw std::runtime_error("classical_liouvillian_dense: assembled operator is not Hermitian");
  return l;
}

LiouvillianEncoding classical_liouvillian(const PhaseSpaceSpec& spec) {
  spec.validate();
  const Layout lay = layout_of(spec);
  const auto terms = liouvillian_terms(spec);
  std::vector<BlockEncoding> encs;
  std::vector<cplx> weights;
  for (const auto& t : terms) {
    auto op = std::make_shared<DilatedTermU>(t.axis_op, t.axis, t.diag.values, t.diag.axes, lay.dims, t.coeff,
                                             t.alpha);
    encs.emplace_back(op, t.alpha, 2, 1e-12, true);
    weights.push_back(cplx(1, 0));
  }
  LiouvillianEncoding out{lcu_weighted(weights, encs), Mat(), lay, 0.0, 0.0};
  out.alpha_cl = out.be.alpha();
  if (lay.total() <= dense_unitary_limit()) {
    out.dense = classical_liouvillian_dense(spec);
    if (lay.total() <= 1024) out.be.attach_target(out.dense);
  }
  return out;
}

namespace {
BlockEncoding diagonal_encoding(const PhaseSpaceSpec& spec, const DiagTerm& term) {
  const Layout lay = layout_of(spec);
  const Vec full = expand_axes_diag(term.values.cast<cplx>(), lay.dims, term.axes);
  RVec rf(full.size());
  for (Index i = 0; i < full.size(); ++i) rf(i) = full(i).real();
  const double alpha = std::max(1e-9, rf.cwiseAbs().maxCoeff());
  auto op = std::make_shared<DilatedTermU>(rf, lay.dims, alpha);
  BlockEncoding be(op, alpha, 2, alpha * 1e-13, true);
  be.attach_target(Mat(full.asDiagonal()));
  return be;
}
}  // namespace

BlockEncoding kinetic_hamiltonian(const PhaseSpaceSpec& spec) { return diagonal_encoding(spec, kinetic_entries(spec)); }

BlockEncoding potential_hamiltonian(const PhaseSpaceSpec& spec) {
  return diagonal_encoding(spec, potential_entries(spec));
}

}  // namespace liouv
