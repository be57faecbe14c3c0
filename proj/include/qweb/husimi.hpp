#pragma once

// Husimi quasiprobability fields of Fock-coefficient states and QE states.

#include <complex>
#include <vector>

#include "qweb/floquet.hpp"
#include "qweb/params.hpp"

namespace qweb {

/// Coefficients C_n, n = 0..size-1, over oscillator eigenstates.
struct FockState {
  std::vector<std::complex<double>> coeffs;

  double norm() const;
};

/// Unit vector |n0> in a basis of n_max + 1 levels.
FockState fock_basis_state(int n_max, int n0);

/// Embeds ladder coefficients of a QE state at levels n = ladder + mu*m.
FockState embed(const Params& params, const QEState& state);

/// Polar sampling grid: ascending radii and n_phi uniform angles 2 pi j / n_phi.
struct PolarGrid {
  std::vector<double> r_values;
  int n_phi = 0;

  static PolarGrid uniform(double r_max, int n_r, int n_phi);

  int n_r() const { return static_cast<int>(r_values.size()); }
  double phi(int j) const;
  void validate() const;
};

/// Default grid for a cell: 400 radii up to 1.5x the outer cell radius and
/// 120*mu angles.
PolarGrid default_grid(const Params& params, const Cell& cell);

/// Nonnegative field values on a polar grid, row-major in (r, phi).
struct HusimiField {
  PolarGrid grid;
  std::vector<double> values;
  int strobo_index = 0;
  Params params;

  double at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n_phi + j]; }
  double peak() const;
};

/// Stroboscopic phase rule exp(2 pi i n s / mu) at t = sT (omega/Omega = 1/mu).
struct StroboPhase {
  int mu = 1;
  int s = 0;
};

/// Coherent-state expansion at (X, P); throws TruncationError if more than
/// 1e-10 of the norm falls beyond n_max.
FockState coherent_coefficients(const Params& params, double x, double p);

/// (1/2pi) |sum_m C*_m exp(t_m + i m phi + i theta_m)|^2, log-domain terms.
double husimi_point(const Params& params, const FockState& state, double r, double phi,
                    StroboPhase phase = {});

/// Closed form for a single Fock state n0.
double husimi_fock(const Params& params, int n0, double r);

/// Field of an arbitrary Fock state over a grid. Output is bitwise identical
/// for any worker count.
HusimiField husimi_field(const Params& params, const FockState& state, const PolarGrid& grid,
                         StroboPhase phase = {}, int workers = 0);

/// Stroboscopic field of a QE state at t = sT.
HusimiField husimi_qe(const Params& params, const QEState& state, const PolarGrid& grid, int s,
                      int workers = 0);

/// Radial factor gamma(r) of the separable approximation.
double gamma_radial(const Params& params, const GaussianAnsatz& ansatz, double r);

enum class Branch { kUpper, kLower };

/// Angular factor xi(phi) of the upper or lower ground state.
double xi_angular(int mu, const GaussianAnsatz& ansatz, double phi, Branch which);

/// gamma(r) xi(phi) on a grid, normalised to unit peak.
HusimiField factored_field(const Params& params, const GaussianAnsatz& ansatz, const PolarGrid& grid,
                           Branch which);

struct Maximum {
  double r = 0.0;
  double phi = 0.0;
  double value = 0.0;
};

/// Local maxima with 8-neighbour comparison (phi periodic), sorted by value,
/// refined by 3-point quadratic fits. Points below min_relative * peak are
/// ignored. Throws NumericError when none are found.
std::vector<Maximum> find_maxima(const HusimiField& field, double min_relative = 1e-8);

/// ||field - rotate(field, 2 pi / fold)||_1 / ||field||_1 by exact index shift.
double rotational_symmetry_error(const HusimiField& field, int fold);

/// ||to(phi) - from(phi + angle)||_1 / ||to||_1; angle must be a whole number of phi steps.
double rotation_pair_defect(const HusimiField& from, const HusimiField& to, double angle);

/// L1 defect under X -> -X (phi -> pi - phi).
double mirror_x_defect(const HusimiField& field);

/// L1 defect under P -> -P (phi -> -phi).
double mirror_p_defect(const HusimiField& field);

/// Trapezoid in r, periodic rectangle rule in phi, of values * r.
/// Equals hbar0 * ||state||^2 when the grid covers the field.
double normalization_integral(const HusimiField& field);

/// Radius of the maximum of the phi-averaged profile, quadratically refined.
double radial_peak(const HusimiField& field);

/// max |a/peak(a) - b/peak(b)| over grid rows with r in [r_lo, r_hi].
double peak_normalized_difference(const HusimiField& a, const HusimiField& b, double r_lo, double r_hi);

}  // namespace qweb
