// phasespace.hpp — discretized nuclear phase space: periodic grids,
// central-difference derivative operators, extended-thermostat Hamiltonian
// partials, classical Liouvillian assembly, and diagonal kinetic/potential
// nuclear Hamiltonians.  Internal units are atomic with k_B = 1.
#pragma once

#include "liouv/bea.hpp"
#include "liouv/tensor.hpp"

namespace liouv {

enum class Ensemble { NVT, NVE };
enum class Var { x, p, s, ps };

struct VarGrid {
  Index g = 3;     // points
  double h = 1.0;  // spacing
  int d = 1;       // finite-difference order
};

struct PhaseSpaceSpec {
  int N = 1;
  int spatial_dim = 1;
  VarGrid x, p, s, ps;
  RVec masses;   // length N
  RVec charges;  // length N
  double softening = 1.0;  // Coulomb regularization
  double Q = 1.0;
  double T = 1.0;
  int N_f = 1;
  double s_min = 1.0;
  Ensemble ensemble = Ensemble::NVT;

  void validate() const;
  Index grid_points() const;  // total phase-space dimension
};

struct AxisInfo {
  Var var;
  int n = 0, j = 0;
  Index g = 0;
  double h = 0;
  double origin = 0;  // value = index*h - origin
  double value(Index i) const { return i * h - origin; }
};

struct Layout {
  Dims dims;
  std::vector<AxisInfo> axes;
  int axis_x(int n, int j) const;
  int axis_p(int n, int j) const;
  int axis_s() const;
  int axis_ps() const;
  std::vector<int> axes_of(Var v) const;
  Index total() const { return total_dim(dims); }
};

Layout layout_of(const PhaseSpaceSpec& spec);

struct KvNState {
  Vec amplitudes;
  Layout layout;
  double norm() const { return amplitudes.norm(); }
  double expectation(int axis) const;  // <value> along one axis
  RVec marginal(int axis) const;       // probability marginal along one axis
};

// |amplitude|^2 Gaussian per axis, periodic evaluation, normalized.
KvNState gaussian_state(const Layout& layout, const RVec& centers, const RVec& widths);

// Boltzmann-weighted amplitudes sqrt(exp(-E/T)/Z) for a diagonal energy vector.
KvNState thermal_state(const Layout& layout, const RVec& energies, double temperature);

struct FDStencil {
  int d = 1;
  RVec coeffs;  // c_{-d}..c_{d}, antisymmetric, c_0 = 0
  double coeff(int k) const { return coeffs(k + d); }
  double l1() const;  // sum_k |c_k|
};

FDStencil stencil(int d);

// Periodic circulant (1/h) sum_k c_k |i-k><i| on a g-point axis.
Mat derivative_matrix(Index g, double h, int d);

// The same operator embedded on the axis for (variable, n, j); dense, for
// desk-scale verification.
Mat derivative_operator(const PhaseSpaceSpec& spec, Var v, int n, int j);

// Diagonal factor over a subset of axes.
struct DiagTerm {
  std::vector<int> axes;
  RVec values;  // over kron of those axes, slowest first
};

// Partial derivatives of the classical (bath-extended) Hamiltonian.
DiagTerm partial_x(const PhaseSpaceSpec& spec, int n, int j);
DiagTerm partial_p(const PhaseSpaceSpec& spec, int n, int j);
DiagTerm partial_s(const PhaseSpaceSpec& spec);
DiagTerm partial_ps(const PhaseSpaceSpec& spec);

DiagTerm kinetic_entries(const PhaseSpaceSpec& spec);
DiagTerm potential_entries(const PhaseSpaceSpec& spec);
// Bath energy p_s^2/2Q + N_f T ln(s + s_min) (diagnostics and oracles).
DiagTerm bath_entries(const PhaseSpaceSpec& spec);

struct LiouvillianEncoding {
  BlockEncoding be = identity_encoding(1);
  Mat dense;        // independently assembled target
  Layout layout;
  double alpha_el = 0, alpha_cl = 0;
};

// LCU of structured dilated terms; dense target attached for verification.
LiouvillianEncoding classical_liouvillian(const PhaseSpaceSpec& spec);
Mat classical_liouvillian_dense(const PhaseSpaceSpec& spec);

BlockEncoding kinetic_hamiltonian(const PhaseSpaceSpec& spec);
BlockEncoding potential_hamiltonian(const PhaseSpaceSpec& spec);

}  // namespace liouv
