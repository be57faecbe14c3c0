#include "qweb/husimi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qweb/errors.hpp"
#include "qweb/parallel.hpp"
#include "qweb/specfun.hpp"

namespace qweb {

namespace {

constexpr double kLogTwoPi = 1.8378770664093454836;  // ln(2 pi)

// One nonzero coefficient, pre-split into log-magnitude and unit phase of C*_m.
struct Term {
  int m = 0;
  double log_abs = 0.0;
  std::complex<double> unit;
};

std::vector<Term> collect_terms(const FockState& state) {
  std::vector<Term> terms;
  for (std::size_t m = 0; m < state.coeffs.size(); ++m) {
    const auto c = state.coeffs[m];
    const double a = std::abs(c);
    if (a == 0.0) continue;
    terms.push_back({static_cast<int>(m), std::log(a), std::conj(c) / a});
  }
  return terms;
}

// t_m = m ln r - (m/2) ln(2 hbar0) - (1/2) ln m! - r^2 / (4 hbar0) + ln|C_m|.
// Returns -inf for terms that vanish (r = 0, m > 0).
void radial_logs(const std::vector<Term>& terms, double hbar0, double r, std::vector<double>& out) {
  const double log_r = r > 0.0 ? std::log(r) : -std::numeric_limits<double>::infinity();
  const double log_2h = std::log(2.0 * hbar0);
  const double gauss = -r * r / (4.0 * hbar0);
  out.resize(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const int m = terms[k].m;
    if (m == 0) {
      out[k] = gauss + terms[k].log_abs;
    } else if (r == 0.0) {
      out[k] = -std::numeric_limits<double>::infinity();
    } else {
      out[k] = m * log_r - 0.5 * m * log_2h - 0.5 * log_factorial(m) + gauss + terms[k].log_abs;
    }
  }
}

double max_finite(const std::vector<double>& v) {
  double best = -std::numeric_limits<double>::infinity();
  for (double x : v) best = std::max(best, x);
  return best;
}

int strobo_offset(int m, StroboPhase phase) {
  if (phase.mu <= 0) return 0;
  return static_cast<int>((static_cast<long long>(m) * phase.s % phase.mu + phase.mu) % phase.mu);
}

std::size_t checked_shift(const PolarGrid& grid, double angle) {
  const double steps = angle * grid.n_phi / kTwoPi;
  const double rounded = std::round(steps);
  if (std::abs(steps - rounded) > 1e-9)
    throw ConfigError("rotation angle is not a whole number of phi steps on this grid");
  const long long n = grid.n_phi;
  return static_cast<std::size_t>(((static_cast<long long>(rounded) % n) + n) % n);
}

double l1_mass(const HusimiField& f) {
  double s = 0.0;
  for (double v : f.values) s += std::abs(v);
  return s;
}

// sum_ij |to(i, j) - from(i, map(j))| / sum |to|
template <typename Map>
double mapped_defect(const HusimiField& from, const HusimiField& to, Map&& map) {
  if (from.grid.n_phi != to.grid.n_phi || from.grid.r_values != to.grid.r_values)
    throw ConfigError("fields live on different grids");
  const int n = to.grid.n_phi;
  double diff = 0.0;
  for (int i = 0; i < to.grid.n_r(); ++i)
    for (int j = 0; j < n; ++j) diff += std::abs(to.at(i, j) - from.at(i, map(j)));
  const double mass = l1_mass(to);
  return mass > 0.0 ? diff / mass : 0.0;
}

}  // namespace

double FockState::norm() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::norm(c);
  return std::sqrt(s);
}

FockState fock_basis_state(int n_max, int n0) {
  if (n0 < 0 || n0 > n_max) throw ConfigError("fock_basis_state: n0 outside [0, n_max]");
  FockState s;
  s.coeffs.assign(n_max + 1, 0.0);
  s.coeffs[n0] = 1.0;
  return s;
}

FockState embed(const Params& params, const QEState& state) {
  if (state.cell.n_hi() > params.n_max) throw TruncationError("QE state extends beyond n_max");
  FockState s;
  s.coeffs.assign(params.n_max + 1, 0.0);
  for (std::size_t j = 0; j < state.coeffs.size(); ++j)
    s.coeffs[state.cell.level(state.cell.m_lo + static_cast<int>(j))] = state.coeffs[j];
  return s;
}

PolarGrid PolarGrid::uniform(double r_max, int n_r, int n_phi) {
  if (!(r_max > 0.0) || n_r < 2) throw ConfigError("polar grid needs r_max > 0 and at least 2 radii");
  PolarGrid g;
  g.r_values.resize(n_r);
  for (int i = 0; i < n_r; ++i) g.r_values[i] = r_max * i / (n_r - 1);
  g.n_phi = n_phi;
  g.validate();
  return g;
}

double PolarGrid::phi(int j) const { return kTwoPi * j / n_phi; }

void PolarGrid::validate() const {
  if (n_phi < 4) throw ConfigError("polar grid needs n_phi >= 4");
  if (r_values.empty()) throw ConfigError("polar grid has no radii");
  if (r_values.front() < 0.0) throw ConfigError("polar grid radii must be nonnegative");
  for (std::size_t i = 1; i < r_values.size(); ++i)
    if (!(r_values[i] > r_values[i - 1])) throw ConfigError("polar grid radii must be strictly ascending");
}

PolarGrid default_grid(const Params& params, const Cell& cell) {
  const double r_outer = std::sqrt(2.0 * params.hbar0 * cell.n_hi());
  const int n_phi = ((120 * params.mu + params.mu - 1) / params.mu) * params.mu;
  return PolarGrid::uniform(1.5 * r_outer, 400, n_phi);
}

double HusimiField::peak() const {
  return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end());
}

FockState coherent_coefficients(const Params& params, double x, double p) {
  params.validate();
  const double rho2 = x * x + p * p;
  FockState s;
  s.coeffs.assign(params.n_max + 1, 0.0);
  if (rho2 == 0.0) {
    s.coeffs[0] = 1.0;
    return s;
  }
  const double log_rho = 0.5 * std::log(rho2);
  const double theta = std::atan2(p, x);
  const double log_2h = std::log(2.0 * params.hbar0);
  double kept = 0.0;
  for (int m = 0; m <= params.n_max; ++m) {
    const double log_abs = -rho2 / (4.0 * params.hbar0) + m * log_rho - 0.5 * m * log_2h - 0.5 * log_factorial(m);
    s.coeffs[m] = std::polar(std::exp(log_abs), m * theta);
    kept += std::norm(s.coeffs[m]);
  }
  if (1.0 - kept > 1e-10)
    throw TruncationError("coherent state at radius " + std::to_string(std::sqrt(rho2)) +
                          " is not contained in n_max = " + std::to_string(params.n_max));
  return s;
}

double husimi_point(const Params& params, const FockState& state, double r, double phi, StroboPhase phase) {
  if (!(r >= 0.0)) throw ConfigError("husimi_point: r must be >= 0");
  const auto terms = collect_terms(state);
  if (terms.empty()) return 0.0;
  std::vector<double> logs;
  radial_logs(terms, params.hbar0, r, logs);
  const double top = max_finite(logs);
  if (!std::isfinite(top)) return 0.0;

  std::complex<double> sum = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    if (!std::isfinite(logs[k])) continue;
    const int m = terms[k].m;
    const double angle = m * phi + kTwoPi * strobo_offset(m, phase) / std::max(phase.mu, 1);
    sum += std::exp(logs[k] - top) * terms[k].unit * std::polar(1.0, angle);
  }
  return std::exp(2.0 * top - kLogTwoPi) * std::norm(sum);
}

double husimi_fock(const Params& params, int n0, double r) {
  if (n0 < 0) throw ConfigError("husimi_fock: n0 must be >= 0");
  if (!(r >= 0.0)) throw ConfigError("husimi_fock: r must be >= 0");
  const double h = params.hbar0;
  if (r == 0.0) return n0 == 0 ? 1.0 / kTwoPi : 0.0;
  const double log_value = -r * r / (2.0 * h) + 2.0 * n0 * std::log(r) - n0 * std::log(2.0 * h) -
                           log_factorial(n0) - kLogTwoPi;
  return std::exp(log_value);
}

HusimiField husimi_field(const Params& params, const FockState& state, const PolarGrid& grid, StroboPhase phase,
                         int workers) {
  params.validate();
  grid.validate();
  HusimiField field;
  field.grid = grid;
  field.params = params;
  field.strobo_index = phase.s;
  const int n_r = grid.n_r();
  const int n_phi = grid.n_phi;
  field.values.assign(static_cast<std::size_t>(n_r) * n_phi, 0.0);

  const auto terms = collect_terms(state);
  if (terms.empty()) return field;

  // Integer phase indices when the stroboscopic offsets land on grid angles.
  const bool exact = phase.mu >= 1 && n_phi % std::max(phase.mu, 1) == 0;
  std::vector<std::complex<double>> table;
  if (exact) {
    table.resize(n_phi);
    for (int k = 0; k < n_phi; ++k) table[k] = std::polar(1.0, kTwoPi * k / n_phi);
  }

  parallel_for(static_cast<std::size_t>(n_r), workers, [&](std::size_t i) {
    std::vector<double> logs;
    radial_logs(terms, params.hbar0, grid.r_values[i], logs);
    const double top = max_finite(logs);
    if (!std::isfinite(top)) return;
    std::vector<std::complex<double>> w(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k)
      w[k] = std::isfinite(logs[k]) ? std::exp(logs[k] - top) * terms[k].unit : 0.0;
    const double scale = std::exp(2.0 * top - kLogTwoPi);
    double* row = field.values.data() + i * n_phi;
    for (int j = 0; j < n_phi; ++j) {
      std::complex<double> sum = 0.0;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        if (w[k] == 0.0) continue;
        const long long m = terms[k].m;
        if (exact) {
          const long long off = static_cast<long long>(strobo_offset(static_cast<int>(m), phase)) * (n_phi / phase.mu);
          sum += w[k] * table[static_cast<std::size_t>((m * j + off) % n_phi)];
        } else {
          const double angle = m * grid.phi(j) + kTwoPi * strobo_offset(static_cast<int>(m), phase) / std::max(phase.mu, 1);
          sum += w[k] * std::polar(1.0, angle);
        }
      }
      row[j] = scale * std::norm(sum);
    }
  });
  return field;
}

HusimiField husimi_qe(const Params& params, const QEState& state, const PolarGrid& grid, int s, int workers) {
  return husimi_field(params, embed(params, state), grid, StroboPhase{params.mu, s}, workers);
}

double gamma_radial(const Params& params, const GaussianAnsatz& ansatz, double r) {
  if (!(r >= 0.0)) throw ConfigError("gamma_radial: r must be >= 0");
  if (r == 0.0) return 0.0;
  const double h = params.hbar0;
  const double n_e = ansatz.n_e;
  const double log_pref = -r * r / (2.0 * h) + 2.0 * n_e * std::log(r) + 2.0 * std::log(ansatz.norm) -
                          n_e * std::log(2.0 * h) - std::lgamma(n_e + 1.0) - kLogTwoPi;
  const double log_ratio = std::log(r / std::sqrt(2.0 * h * n_e));
  const double inv4a2 = 1.0 / (4.0 * ansatz.a_e * ansatz.a_e);
  const int jmax = 2 * ansatz.delta_m;

  double top = -std::numeric_limits<double>::infinity();
  for (int j = -jmax; j <= jmax; ++j) top = std::max(top, j * log_ratio - j * j * inv4a2);
  double sum = 0.0;
  for (int j = -jmax; j <= jmax; ++j) sum += std::exp(j * log_ratio - j * j * inv4a2 - top);
  return std::exp(log_pref + top) * sum;
}

double xi_angular(int mu, const GaussianAnsatz& ansatz, double phi, Branch which) {
  const int terms = (2 * ansatz.delta_m + mu - 1) / mu;
  const double inv4a2 = 1.0 / (4.0 * ansatz.a_e * ansatz.a_e);
  double sum = 1.0;
  for (int m = 1; m <= terms; ++m) {
    const double k = static_cast<double>(mu) * m;
    const double arg = which == Branch::kUpper ? k * phi : (mu * phi - kPi) * m;
    sum += 2.0 * std::cos(arg) * std::exp(-k * k * inv4a2);
  }
  return sum;
}

HusimiField factored_field(const Params& params, const GaussianAnsatz& ansatz, const PolarGrid& grid, Branch which) {
  grid.validate();
  HusimiField f;
  f.grid = grid;
  f.params = params;
  const int n_phi = grid.n_phi;
  std::vector<double> xi(n_phi);
  for (int j = 0; j < n_phi; ++j) xi[j] = xi_angular(params.mu, ansatz, grid.phi(j), which);
  f.values.resize(static_cast<std::size_t>(grid.n_r()) * n_phi);
  for (int i = 0; i < grid.n_r(); ++i) {
    const double g = gamma_radial(params, ansatz, grid.r_values[i]);
    for (int j = 0; j < n_phi; ++j) f.values[static_cast<std::size_t>(i) * n_phi + j] = g * xi[j];
  }
  const double peak = f.peak();
  if (peak > 0.0)
    for (double& v : f.values) v /= peak;
  return f;
}

std::vector<Maximum> find_maxima(const HusimiField& field, double min_relative) {
  const auto& grid = field.grid;
  const int n_r = grid.n_r();
  const int n_phi = grid.n_phi;
  const double peak = field.peak();
  if (!(peak > 0.0)) throw NumericError("find_maxima: field has no positive values");
  const double floor = min_relative * peak;
  const double tie = 1e-12 * peak;
  const bool origin_row = grid.r_values.front() == 0.0;

  std::vector<Maximum> out;
  auto wrap = [n_phi](int j) { return (j % n_phi + n_phi) % n_phi; };

  for (int i = 0; i < n_r; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      const double v = field.at(i, j);
      if (v < floor) continue;
      bool dominates = true;
      bool exceeds = false;
      auto compare = [&](double nb) {
        if (v < nb - tie) dominates = false;
        if (v > nb + tie) exceeds = true;
      };
      if (i == 0 && origin_row) {
        // the whole first row is one point: the origin
        if (j != 0) continue;
        if (n_r > 1)
          for (int jj = 0; jj < n_phi; ++jj) compare(field.at(1, jj));
      } else {
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          if (ii < 0 || ii >= n_r) continue;
          for (int dj = -1; dj <= 1; ++dj) {
            if (di == 0 && dj == 0) continue;
            compare(field.at(ii, wrap(j + dj)));
          }
        }
      }
      if (!dominates || !exceeds) continue;

      Maximum mx{grid.r_values[i], grid.phi(j), v};
      if (!(i == 0 && origin_row)) {
        const double a = field.at(i, wrap(j - 1));
        const double c = field.at(i, wrap(j + 1));
        const double denom = a - 2.0 * v + c;
        if (denom < 0.0) {
          const double delta = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
          mx.phi = std::fmod(grid.phi(j) + delta * kTwoPi / n_phi + kTwoPi, kTwoPi);
        }
      }
      if (i > 0 && i + 1 < n_r) {
        const double x0 = grid.r_values[i - 1], x1 = grid.r_values[i], x2 = grid.r_values[i + 1];
        const double y0 = field.at(i - 1, j), y2 = field.at(i + 1, j);
        const double num = (x1 - x0) * (x1 - x0) * (v - y2) - (x1 - x2) * (x1 - x2) * (v - y0);
        const double den = (x1 - x0) * (v - y2) - (x1 - x2) * (v - y0);
        if (den != 0.0) {
          const double vertex = x1 - 0.5 * num / den;
          if (vertex > x0 && vertex < x2) mx.r = vertex;
        }
      }
      out.push_back(mx);
    }
  }
  if (out.empty()) throw NumericError("find_maxima: no strict local maxima above the noise floor");
  std::stable_sort(out.begin(), out.end(), [](const Maximum& a, const Maximum& b) { return a.value > b.value; });
  return out;
}

double rotational_symmetry_error(const HusimiField& field, int fold) {
  if (fold < 1) throw ConfigError("fold must be >= 1");
  const int n = field.grid.n_phi;
  if (n % fold != 0)
    throw ConfigError("n_phi = " + std::to_string(n) + " is not divisible by fold " + std::to_string(fold));
  const int shift = n / fold;
  return mapped_defect(field, field, [shift, n](int j) { return (j + shift) % n; });
}

double rotation_pair_defect(const HusimiField& from, const HusimiField& to, double angle) {
  const std::size_t shift = checked_shift(to.grid, angle);
  const int n = to.grid.n_phi;
  return mapped_defect(from, to, [shift, n](int j) { return static_cast<int>((j + shift) % n); });
}

double mirror_x_defect(const HusimiField& field) {
  const int n = field.grid.n_phi;
  if (n % 2 != 0) throw ConfigError("mirror_x_defect needs an even n_phi");
  return mapped_defect(field, field, [n](int j) { return ((n / 2 - j) % n + n) % n; });
}

double mirror_p_defect(const HusimiField& field) {
  const int n = field.grid.n_phi;
  return mapped_defect(field, field, [n](int j) { return (n - j) % n; });
}

double normalization_integral(const HusimiField& field) {
  const auto& r = field.grid.r_values;
  const int n_r = field.grid.n_r();
  const int n_phi = field.grid.n_phi;
  if (n_r < 2) throw ConfigError("normalization_integral needs at least 2 radii");
  const double peak = field.peak();
  double outer = 0.0;
  for (int j = 0; j < n_phi; ++j) outer = std::max(outer, field.at(n_r - 1, j));
  if (outer > 1e-14 * peak)
    throw ConfigError("normalization_integral: grid does not cover the field (edge value " +
                      std::to_string(outer / peak) + " of peak)");

  double total = 0.0;
  for (int i = 0; i < n_r; ++i) {
    double w = 0.0;
    if (i > 0) w += 0.5 * (r[i] - r[i - 1]);
    if (i + 1 < n_r) w += 0.5 * (r[i + 1] - r[i]);
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) ring += field.at(i, j);
    total += w * r[i] * ring;
  }
  return total * kTwoPi / n_phi;
}

double radial_peak(const HusimiField& field) {
  const int n_r = field.grid.n_r();
  const int n_phi = field.grid.n_phi;
  std::vector<double> prof(n_r, 0.0);
  for (int i = 0; i < n_r; ++i) {
    for (int j = 0; j < n_phi; ++j) prof[i] += field.at(i, j);
    prof[i] /= n_phi;
  }
  const int i = static_cast<int>(std::max_element(prof.begin(), prof.end()) - prof.begin());
  const auto& r = field.grid.r_values;
  if (i == 0 || i + 1 >= n_r) return r[i];
  const double x0 = r[i - 1], x1 = r[i], x2 = r[i + 1];
  const double y0 = prof[i - 1], y1 = prof[i], y2 = prof[i + 1];
  const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
  const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  return den != 0.0 ? x1 - 0.5 * num / den : x1;
}

double peak_normalized_difference(const HusimiField& a, const HusimiField& b, double r_lo, double r_hi) {
  if (a.grid.n_phi != b.grid.n_phi || a.grid.r_values != b.grid.r_values)
    throw ConfigError("fields live on different grids");
  const double pa = a.peak();
  const double pb = b.peak();
  if (!(pa > 0.0) || !(pb > 0.0)) return 0.0;
  double worst = 0.0;
  for (int i = 0; i < a.grid.n_r(); ++i) {
    const double r = a.grid.r_values[i];
    if (r < r_lo || r > r_hi) continue;
    for (int j = 0; j < a.grid.n_phi; ++j) worst = std::max(worst, std::abs(a.at(i, j) / pa - b.at(i, j) / pb));
  }
  return worst;
}

}  // namespace qweb
