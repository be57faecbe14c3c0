#pragma once

// Classical stroboscopic sections of X'' = -X + eps sin(X - mu tau).

#include <array>
#include <cstddef>
#include <vector>

#include "qweb/errors.hpp"
#include "qweb/params.hpp"

namespace qweb {

/// Dimensionless coordinate X = kx, momentum P = pk/(m omega), time tau = omega t.
struct ClassicalState {
  double x = 0.0;
  double p = 0.0;
  double tau = 0.0;
};

class EscapeError : public NumericError {
 public:
  using NumericError::NumericError;
};

inline constexpr double kDefaultEscapeRadius = 1e3;
inline constexpr int kDefaultStepsPerPeriod = 256;

/// Advances one wave period 2 pi / mu (direction = -1 goes back one period)
/// with kick-rotate-kick splitting; the oscillator rotation is exact.
/// Throws EscapeError when the orbit leaves escape_radius.
ClassicalState strobo_step(const Params& params, const ClassicalState& state, int steps_per_period,
                           double escape_radius = kDefaultEscapeRadius, int direction = 1);

struct Orbit {
  ClassicalState initial;
  std::vector<std::array<double, 2>> samples;  ///< (X, P) at tau = s 2 pi / mu
  bool escaped = false;
  int escape_period = -1;
};

struct SectionSet {
  Params params;
  int n_periods = 0;
  int steps_per_period = kDefaultStepsPerPeriod;
  double escape_radius = kDefaultEscapeRadius;
  std::vector<Orbit> orbits;

  std::size_t total_points() const;
  std::size_t escaped_count() const;
};

/// Stroboscopic samples for every initial condition; orbits run independently
/// and the output order follows the input order.
SectionSet poincare_section(const Params& params, const std::vector<ClassicalState>& initials, int n_periods,
                            int steps_per_period = kDefaultStepsPerPeriod, int workers = 0,
                            double escape_radius = kDefaultEscapeRadius);

/// n_rings radii from r_min to the second zero of J_mu (first two cells),
/// n_angles uniform angles each.
std::vector<ClassicalState> default_initial_conditions(const Params& params, int n_rings = 12, int n_angles = 8,
                                                       double r_min = 0.5);

/// L1 distance between the normalised bins x bins histogram of all section
/// points and that of the points rotated by 2 pi / fold. Needs >= 1000 points.
double section_symmetry_error(const SectionSet& sections, int fold, int bins);

/// |x_0 - B^n F^n x_0| after n periods forward (F) and n back (B).
double reversibility_defect(const Params& params, const ClassicalState& start, int n_periods, int steps_per_period);

/// Determinant of the finite-difference Jacobian of the one-period map.
double strobo_jacobian_det(const Params& params, const ClassicalState& at, int steps_per_period, double delta = 1e-6);

}  // namespace qweb
