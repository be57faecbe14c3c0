#include "qweb/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qweb/errors.hpp"

namespace qweb {

namespace {

// J_{-k}(x) = (-1)^k J_k(x)
double bessel_j_signed(int order, double x) {
  if (order >= 0) return bessel_j(order, x);
  const double v = bessel_j(-order, x);
  return (order % 2 == 0) ? v : -v;
}

double bessel_series(int mu, double x) {
  const double q = -0.25 * x * x;
  double term = std::exp(mu * std::log(0.5 * x) - std::lgamma(mu + 1.0));
  double sum = term;
  for (int k = 0; k < 200; ++k) {
    term *= q / ((k + 1.0) * (mu + k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Miller's algorithm: backward recurrence from a large even start index,
// normalised by J_0 + 2 (J_2 + J_4 + ...) = 1.
double bessel_miller(int mu, double x) {
  const double scale = std::max(static_cast<double>(mu), x);
  int start = static_cast<int>(scale + 20.0 + 12.0 * std::cbrt(scale));
  start += start % 2;
  constexpr double kBig = 1e250;

  double j_next = 0.0;
  double j_cur = 1e-300;
  double sum = 0.0;
  double result = 0.0;
  for (int k = start; k >= 1; --k) {
    const double j_prev = (2.0 * k / x) * j_cur - j_next;
    j_next = j_cur;
    j_cur = j_prev;  // now holds J_{k-1} (unnormalised)
    if (std::abs(j_cur) > kBig) {
      j_cur /= kBig;
      j_next /= kBig;
      sum /= kBig;
      result /= kBig;
    }
    const int idx = k - 1;
    if (idx == mu) result = j_cur;
    if (idx % 2 == 0) sum += (idx == 0) ? j_cur : 2.0 * j_cur;
  }
  return result / sum;
}

template <typename F>
double bisect(F&& f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

template <typename F>
double kth_sign_change(F&& f, double start, int k) {
  constexpr double kStep = 0.05;
  double x0 = start;
  double f0 = f(x0);
  int found = 0;
  for (int it = 0; it < 1000000; ++it) {
    const double x1 = x0 + kStep;
    const double f1 = f(x1);
    if ((f0 < 0.0) != (f1 < 0.0)) {
      if (++found == k) return bisect(f, x0, x1);
    }
    x0 = x1;
    f0 = f1;
  }
  throw NumericError("sign change not found");
}

}  // namespace

double log_factorial(int n) {
  if (n < 0) throw ConfigError("log_factorial: negative argument");
  if (n < 2) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double laguerre_assoc(int n, int alpha, double x) {
  if (n < 0 || alpha < 0) throw ConfigError("laguerre_assoc: negative degree or order");
  double l_prev = 1.0;
  if (n == 0) return l_prev;
  double l_cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double l_next = ((2.0 * k + 1.0 + alpha - x) * l_cur - (k + alpha) * l_prev) / (k + 1.0);
    l_prev = l_cur;
    l_cur = l_next;
  }
  return l_cur;
}

double bessel_j(int mu, double x) {
  if (mu < 0) throw ConfigError("bessel_j: negative order");
  if (!(x >= 0.0)) throw ConfigError("bessel_j: negative argument");
  if (x == 0.0) return mu == 0 ? 1.0 : 0.0;
  if (x < 2.0) return bessel_series(mu, x);
  return bessel_miller(mu, x);
}

double bessel_j_derivative(int mu, double x) {
  return 0.5 * (bessel_j_signed(mu - 1, x) - bessel_j_signed(mu + 1, x));
}

double bessel_j_second_derivative(int mu, double x) {
  return 0.25 * (bessel_j_signed(mu - 2, x) - 2.0 * bessel_j(mu, x) + bessel_j_signed(mu + 2, x));
}

double bessel_j_zero(int mu, int k) {
  if (k < 1) throw ConfigError("bessel_j_zero: k must be >= 1");
  return kth_sign_change([mu](double x) { return bessel_j(mu, x); }, std::max(1e-3, 0.5 * mu), k);
}

double bessel_j_extremum(int mu, int k) {
  if (k < 1) throw ConfigError("bessel_j_extremum: k must be >= 1");
  return kth_sign_change([mu](double x) { return bessel_j_derivative(mu, x); }, 1e-3, k);
}

double bessel_abs_max_in(int mu, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [mu](double x) { return std::abs(bessel_j(mu, x)); };
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-12 * std::max(1.0, b)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double coupling_g(const Params& params, int n) {
  if (n < 0) throw ConfigError("coupling_g: negative level");
  if (n + params.mu > params.n_max) {
    throw TruncationError("coupling_g: level " + std::to_string(n) + " + mu exceeds n_max " +
                          std::to_string(params.n_max));
  }
  const double half = 0.5 * params.hbar0;
  const double log_prefactor = -0.25 * params.hbar0 + 0.5 * params.mu * std::log(half) +
                               0.5 * (log_factorial(n) - log_factorial(n + params.mu));
  return std::exp(log_prefactor) * laguerre_assoc(n, params.mu, half);
}

int Cell::level(int m) const { return ladder + mu * m; }
int Cell::n_lo() const { return level(m_lo); }
int Cell::n_hi() const { return level(m_hi); }

int max_scan_index(const Params& params, int ladder) {
  return (params.n_max - params.mu - ladder) / params.mu;
}

std::vector<Cell> cell_boundaries(const Params& params, int ladder, int m_max) {
  params.validate();
  if (ladder < 0 || ladder >= params.mu)
    throw ConfigError("cell_boundaries: ladder must lie in [0, mu)");
  if (m_max < 1) throw ConfigError("cell_boundaries: need at least 2 ladder states");
  if (ladder + params.mu * m_max > params.n_max - params.mu) {
    throw TruncationError("cell_boundaries: scan to m_max=" + std::to_string(m_max) +
                          " exceeds the basis truncation");
  }

  std::vector<bool> negative(m_max + 1);
  for (int m = 0; m <= m_max; ++m) negative[m] = std::signbit(coupling_g(params, ladder + params.mu * m));

  std::vector<Cell> cells;
  int start = 0;
  int index = 1;
  while (start <= m_max) {
    Cell cell{params.mu, ladder, start, start, index++, false};
    if (start == m_max) {
      cell.truncated = true;
      cells.push_back(cell);
      break;
    }
    const bool sign = negative[start];
    int m = start;
    while (m < m_max && negative[m] == sign) ++m;
    if (m == m_max) {
      cell.m_hi = m_max;
      cell.truncated = (negative[m_max] == sign);
      cells.push_back(cell);
      break;
    }
    // link m has the opposite sign: it is cut, and state m closes this cell
    cell.m_hi = m;
    cells.push_back(cell);
    start = m + 1;
  }
  return cells;
}

double lamb_dicke_to_hbar0(double eta) {
  if (!(eta >= 0.0)) throw ConfigError("lamb_dicke_to_hbar0: eta must be >= 0");
  return 2.0 * eta * eta;
}

}  // namespace qweb
