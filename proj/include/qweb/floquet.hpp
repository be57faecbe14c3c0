#pragma once

// Zeroth-order (resonance approximation) quasienergy problem of one cell.

#include <optional>
#include <vector>

#include "qweb/params.hpp"
#include "qweb/specfun.hpp"

namespace qweb {

/// Symmetric tridiagonal block of one cell, in units of hbar*omega.
///
/// offdiag[j] = (eps / (2 hbar0)) g_mu(level(m_lo + j)); the diagonal vanishes
/// at exact resonance.
struct CellHamiltonian {
  Cell cell;
  std::vector<double> diag;
  std::vector<double> offdiag;

  int dim() const { return static_cast<int>(diag.size()); }
  double norm_inf() const;
};

enum class StateKind { kUpperGround, kLowerGround, kInterior };

const char* to_string(StateKind kind);

/// Quasienergy state of a cell: energy (units hbar*omega) and real unit-norm
/// coefficients over the cell's ladder indices m_lo..m_hi.
struct QEState {
  Cell cell;
  double energy = 0.0;
  std::vector<double> coeffs;
  StateKind kind = StateKind::kInterior;
};

struct GroundPair {
  QEState upper;
  QEState lower;
};

/// Gaussian wave-packet model of the extreme QE state.
struct GaussianAnsatz {
  int mu = 1;
  int n_peak = 0;     ///< ladder level with the largest |g| in the cell
  double n_e = 0.0;   ///< packet centre (continuous level)
  double r_e = 0.0;   ///< sqrt(2 n_e hbar0)
  double a_e = 0.0;   ///< packet width in level index (discrete g'')
  int delta_m = 1;    ///< ceil(2 a_e)
  double norm = 1.0;  ///< Gamma: unit norm over the cell's ladder levels

  /// Half width in action implied by the width: sqrt(2) hbar0 a_e^2.
  double delta_action(double hbar0) const;
};

CellHamiltonian build_cell_hamiltonian(const Params& params, const Cell& cell);

/// Hamiltonian of the whole ladder chain 0..m_max with every link kept,
/// including the ones cut by cell_boundaries.
CellHamiltonian build_chain_hamiltonian(const Params& params, int ladder, int m_max);

/// Full eigendecomposition; energies ascending, largest-|component| of each
/// vector made positive. Throws NumericError if the residual check fails.
std::vector<QEState> solve_cell(const CellHamiltonian& h);

/// Extreme pair of a solved cell. Throws DegenerateSpectrumError on a tie.
GroundPair ground_states(const std::vector<QEState>& states);

/// C_{mu m} -> (-1)^m C_{mu m}, E -> -E.
QEState parity_transform(const QEState& state);

GaussianAnsatz gaussian_ansatz(const Params& params, const Cell& cell);

/// Width from the Bessel form at an elliptic point r_e (where J_mu' = 0):
/// a_e = ((r_e^2/hbar0^2) |J_mu/J_mu''|)^{1/4}, J_mu'' = -(1 - mu^2/r_e^2) J_mu.
double packet_width_quasiclassical(const Params& params, double r_e);

/// Normalised Gaussian exp(-(n - n_e)^2 / 2 a_e^2) sampled on the cell's levels.
std::vector<double> sampled_gaussian(const Cell& cell, const GaussianAnsatz& ansatz);

/// |<state, sampled Gaussian>|^2.
double gaussian_overlap(const QEState& state, const GaussianAnsatz& ansatz);

struct EdgeSpacing {
  double mean = 0.0;
  double rel_std = 0.0;
};

/// Mean and relative (population) standard deviation of the top `count` gaps.
EdgeSpacing edge_spacing(const std::vector<QEState>& states, int count);

/// ||H v - E v||_2 for one state.
double eigen_residual(const CellHamiltonian& h, const QEState& state);

/// Cells of a ladder up to the basis truncation; index is 1-based.
std::vector<Cell> ladder_cells(const Params& params, int ladder);

/// Cell `index` (1-based) of a ladder. Throws ConfigError if absent.
Cell find_cell(const Params& params, int ladder, int index);

}  // namespace qweb
