// electronic.hpp — toy first-quantized plane-wave electronic structure:
// position-dependent Hamiltonian, analytic force operator, and the diagonal
// force/energy encodings produced by ground-state phase kickback.
#pragma once

#include "liouv/groundstate.hpp"
#include "liouv/phasespace.hpp"

namespace liouv {

enum class GsSource { faithful, exact };

struct ElectronicSpec {
  int n_electrons = 1;
  int n_planewaves = 3;  // odd
  double h_el = 1.0;
  int spatial_dim = 1;
  GsSource mode = GsSource::faithful;
  double delta_overlap = 0.6;  // planted initial-state overlap
  double eps_prep = 1e-4;      // ground-state preparation infidelity target
  // fixed external charges shaping the electronic landscape; without at least
  // one, a single-nucleus surface is flat by translation invariance
  RVec ext_positions;
  RVec ext_charges;

  void validate() const;
  double omega() const { return n_planewaves * std::pow(h_el, spatial_dim); }
  Index basis_dim() const;
  int half_width() const { return (n_planewaves - 1) / 2; }
  double kappa(int b) const { return 2.0 * kPi * b / omega(); }  // 1D wave number
};

// Dense Hamiltonian at nuclear configuration x (one scalar per nucleus in 1D).
Mat electronic_hamiltonian_dense(const ElectronicSpec& espec, const RVec& x, const RVec& charges);

// Exact l1 scaling of the term decomposition (kinetic sup + shift-term sums).
double electronic_lambda(const ElectronicSpec& espec, const RVec& charges);

BlockEncoding electronic_hamiltonian(const ElectronicSpec& espec, const RVec& x, const RVec& charges);

// Analytic dH/dx_{n,j} with periodic wrap-sign structure.
Mat force_operator_dense(const ElectronicSpec& espec, const RVec& x, const RVec& charges, int n, int j);

double force_tau(const ElectronicSpec& espec, double z_n);

BlockEncoding force_operator(const ElectronicSpec& espec, const RVec& x, const RVec& charges, int n, int j);

// Nuclear configurations enumerated over the position axes of the layout
// (flat index matches the control-register index everywhere below).
std::vector<RVec> grid_configs(const PhaseSpaceSpec& pspec);

// Per-configuration Hamiltonian blocks and the block-controlled encoding.
std::vector<Mat> electronic_blocks(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec);
BlockEncoding controlled_electronic_hamiltonian(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec);

struct DiagonalKickback {
  RVec entries;        // encoded diagonal values (unscaled physical units)
  BlockEncoding be = identity_encoding(1);  // system = position register
  double scale = 0;    // tau_n or lambda
  double eps_bound = 0;  // budget 2*scale*sqrt(2 eps_prep) + encoding slack
  long queries_uh = 0, queries_ui = 0, queries_force = 0;
  int rounds = 0;
  double min_fidelity = 1.0;
  double uncompute_residual = 0;  // electronic-register leakage per position
};

// Hellmann-Feynman force diagonal <psi0(x)| dH/dx_{n,j} |psi0(x)> by
// prepare / apply-force / unprepare phase kickback.
DiagonalKickback d_el(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec, int n, int j, Rng& rng,
                      const GroundStateConfig* cfg_override = nullptr);

// Ground-state energy diagonal E0(x) by the same pipeline with the
// Hamiltonian encoding in the middle.
DiagonalKickback h_gse(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec, Rng& rng,
                       const GroundStateConfig* cfg_override = nullptr);

// Dense-eigensolver reference paths (independent of the encodings).
RVec hf_force_reference(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec, int n, int j);
RVec gse_reference(const ElectronicSpec& espec, const PhaseSpaceSpec& pspec);

}  // namespace liouv
