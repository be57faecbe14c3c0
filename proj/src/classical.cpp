#include "qweb/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qweb/parallel.hpp"
#include "qweb/specfun.hpp"

namespace qweb {

ClassicalState strobo_step(const Params& params, const ClassicalState& state, int steps_per_period,
                           double escape_radius, int direction) {
  if (steps_per_period < 16) throw ConfigError("steps_per_period must be >= 16");
  if (direction != 1 && direction != -1) throw ConfigError("direction must be +1 or -1");
  const double period = kTwoPi / params.mu;
  const double h = direction * period / steps_per_period;
  const double c = std::cos(h);
  const double s = std::sin(h);
  const double half_kick = 0.5 * h * params.eps;
  const double mu = params.mu;

  double x = state.x;
  double p = state.p;
  if (params.eps == 0.0) {
    // no kicks: the substeps compose to one rotation, applied once to avoid roundoff drift
    const double cp = std::cos(direction * period), sp = std::sin(direction * period);
    const double xr = cp * x + sp * p;
    p = -sp * x + cp * p;
    x = xr;
  }
  for (int k = 0; k < steps_per_period && params.eps != 0.0; ++k) {
    const double t = state.tau + k * h;
    p += half_kick * std::sin(x - mu * t);
    const double xr = c * x + s * p;
    p = -s * x + c * p;
    x = xr;
    p += half_kick * std::sin(x - mu * (t + h));
  }
  if (!std::isfinite(x) || !std::isfinite(p) || x * x + p * p > escape_radius * escape_radius)
    throw EscapeError("orbit left the escape radius " + std::to_string(escape_radius));
  return {x, p, state.tau + direction * period};
}

std::size_t SectionSet::total_points() const {
  std::size_t n = 0;
  for (const auto& o : orbits) n += o.samples.size();
  return n;
}

std::size_t SectionSet::escaped_count() const {
  return static_cast<std::size_t>(std::count_if(orbits.begin(), orbits.end(), [](const Orbit& o) { return o.escaped; }));
}

SectionSet poincare_section(const Params& params, const std::vector<ClassicalState>& initials, int n_periods,
                            int steps_per_period, int workers, double escape_radius) {
  params.validate();
  if (n_periods < 1) throw ConfigError("n_periods must be >= 1");
  if (steps_per_period < 16) throw ConfigError("steps_per_period must be >= 16");

  SectionSet set;
  set.params = params;
  set.n_periods = n_periods;
  set.steps_per_period = steps_per_period;
  set.escape_radius = escape_radius;
  set.orbits.resize(initials.size());

  parallel_for(initials.size(), workers, [&](std::size_t i) {
    Orbit& orbit = set.orbits[i];
    orbit.initial = initials[i];
    orbit.samples.reserve(static_cast<std::size_t>(n_periods) + 1);
    ClassicalState st = initials[i];
    orbit.samples.push_back({st.x, st.p});
    for (int s = 1; s <= n_periods; ++s) {
      try {
        st = strobo_step(params, st, steps_per_period, escape_radius);
      } catch (const EscapeError&) {
        orbit.escaped = true;
        orbit.escape_period = s;
        return;
      }
      orbit.samples.push_back({st.x, st.p});
    }
  });
  return set;
}

std::vector<ClassicalState> default_initial_conditions(const Params& params, int n_rings, int n_angles, double r_min) {
  if (n_rings < 1 || n_angles < 1) throw ConfigError("need at least one ring and one angle");
  const double r_max = bessel_j_zero(params.mu, 2);
  std::vector<ClassicalState> out;
  out.reserve(static_cast<std::size_t>(n_rings) * n_angles);
  for (int i = 0; i < n_rings; ++i) {
    const double r = n_rings == 1 ? r_min : r_min + (r_max - r_min) * i / (n_rings - 1);
    for (int k = 0; k < n_angles; ++k) {
      const double a = kTwoPi * k / n_angles;
      out.push_back({r * std::cos(a), r * std::sin(a), 0.0});
    }
  }
  return out;
}

double section_symmetry_error(const SectionSet& sections, int fold, int bins) {
  if (fold < 1) throw ConfigError("fold must be >= 1");
  if (bins < 2) throw ConfigError("bins must be >= 2");
  const std::size_t total = sections.total_points();
  if (total < 1000) throw ConfigError("section_symmetry_error needs at least 1000 points, got " + std::to_string(total));

  double r_max = 0.0;
  for (const auto& o : sections.orbits)
    for (const auto& pt : o.samples) r_max = std::max(r_max, std::hypot(pt[0], pt[1]));
  const double half = r_max > 0.0 ? r_max * (1.0 + 1e-9) : 1.0;

  auto bin_of = [half, bins](double v) {
    const int k = static_cast<int>(std::floor((v + half) / (2.0 * half) * bins));
    return std::clamp(k, 0, bins - 1);
  };
  const double angle = kTwoPi / fold;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  std::vector<double> plain(static_cast<std::size_t>(bins) * bins, 0.0);
  std::vector<double> rotated(plain.size(), 0.0);
  for (const auto& o : sections.orbits) {
    for (const auto& pt : o.samples) {
      plain[static_cast<std::size_t>(bin_of(pt[0])) * bins + bin_of(pt[1])] += 1.0;
      const double xr = c * pt[0] - s * pt[1];
      const double pr = s * pt[0] + c * pt[1];
      rotated[static_cast<std::size_t>(bin_of(xr)) * bins + bin_of(pr)] += 1.0;
    }
  }
  double l1 = 0.0;
  for (std::size_t k = 0; k < plain.size(); ++k) l1 += std::abs(plain[k] - rotated[k]);
  return l1 / static_cast<double>(total);
}

double reversibility_defect(const Params& params, const ClassicalState& start, int n_periods, int steps_per_period) {
  ClassicalState st = start;
  for (int k = 0; k < n_periods; ++k) st = strobo_step(params, st, steps_per_period);
  for (int k = 0; k < n_periods; ++k) st = strobo_step(params, st, steps_per_period, kDefaultEscapeRadius, -1);
  return std::hypot(st.x - start.x, st.p - start.p);
}

double strobo_jacobian_det(const Params& params, const ClassicalState& at, int steps_per_period, double delta) {
  auto step = [&](double dx, double dp) {
    return strobo_step(params, {at.x + dx, at.p + dp, at.tau}, steps_per_period);
  };
  const auto xp = step(delta, 0.0), xm = step(-delta, 0.0);
  const auto pp = step(0.0, delta), pm = step(0.0, -delta);
  const double a = (xp.x - xm.x) / (2.0 * delta);
  const double b = (pp.x - pm.x) / (2.0 * delta);
  const double c = (xp.p - xm.p) / (2.0 * delta);
  const double d = (pp.p - pm.p) / (2.0 * delta);
  return a * d - b * c;
}

}  // namespace qweb
