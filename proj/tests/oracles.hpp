#pragma once

// Independent reference computations for the test suites. None of these call
// into the library; they use textbook definitions and brute-force quadrature.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

/// ln(n!) as a running sum of ln k.
inline double log_factorial(int n) {
  double s = 0.0;
  for (int k = 2; k <= n; ++k) s += std::log(static_cast<double>(k));
  return s;
}

/// L_n^alpha(x) = sum_k (-1)^k C(n+alpha, n-k) x^k / k!.
inline double laguerre(int n, int alpha, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double log_binom = log_factorial(n + alpha) - log_factorial(n - k) - log_factorial(alpha + k);
    const double term = std::exp(log_binom - log_factorial(k)) * std::pow(x, k);
    s += (k % 2 == 0 ? term : -term);
  }
  return s;
}

/// Bessel's integral J_n(x) = (1/2pi) int_0^{2pi} cos(n t - x sin t) dt.
/// The integrand is periodic and smooth, so the trapezoid rule converges
/// geometrically once the number of nodes exceeds n + x by a margin.
inline double bessel_integral(int n, double x) {
  const int nodes = 64 + 2 * static_cast<int>(n + x + 20);
  double s = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double t = 2.0 * kPi * k / nodes;
    s += std::cos(n * t - x * std::sin(t));
  }
  return s / nodes;
}

/// Root of f in [a, b] by bisection; f(a) and f(b) must differ in sign.
inline double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    const double c = 0.5 * (a + b);
    const double fc = f(c);
    if ((fc < 0) == (fa < 0)) {
      a = c;
      fa = fc;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

/// k-th positive zero of J_n from the integral representation.
inline double bessel_zero(int n, int k) {
  const auto f = [n](double x) { return bessel_integral(n, x); };
  double x = 0.05 + n;
  int found = 0;
  while (true) {
    const double y = x + 0.05;
    if ((f(x) < 0) != (f(y) < 0) && ++found == k) return bisect(f, x, y);
    x = y;
  }
}

/// Location of the first maximum of J_n by a dense scan and golden section.
inline double bessel_first_max(int n) {
  const auto f = [n](double x) { return bessel_integral(n, x); };
  double best = 0.01;
  for (double x = 0.01; x < n + 10.0; x += 0.01)
    if (f(x) > f(best)) best = x;
  double a = best - 0.01, b = best + 0.01;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  while (b - a > 1e-12) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) > f(d)) b = d;
    else a = c;
  }
  return 0.5 * (a + b);
}

/// Normalised Hermite functions psi_0..psi_n at xi by the stable recurrence.
inline std::vector<double> hermite_functions(int n, double xi) {
  std::vector<double> psi(n + 1);
  psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * xi * xi);
  if (n >= 1) psi[1] = std::sqrt(2.0) * xi * psi[0];
  for (int k = 1; k < n; ++k)
    psi[k + 1] = std::sqrt(2.0 / (k + 1)) * xi * psi[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * psi[k - 1];
  return psi;
}

/// <n| exp(i sqrt(hbar0) xi) |n+mu> by trapezoid quadrature over xi.
inline std::complex<double> exp_ix_element(int n, int mu, double hbar0) {
  const int top = n + mu;
  const double half_width = std::sqrt(2.0 * top + 1.0) + 12.0;
  const int nodes = 6000;
  const double h = 2.0 * half_width / nodes;
  std::complex<double> s = 0.0;
  for (int k = 0; k <= nodes; ++k) {
    const double xi = -half_width + k * h;
    const auto psi = hermite_functions(top, xi);
    const double w = (k == 0 || k == nodes) ? 0.5 : 1.0;
    s += w * psi[n] * psi[top] * std::polar(1.0, std::sqrt(hbar0) * xi);
  }
  return s * h;
}

/// Signed coupling from the matrix element: <n|e^{iX}|n+mu> = i^mu g.
inline double coupling_from_quadrature(int n, int mu, double hbar0) {
  const auto m = exp_ix_element(n, mu, hbar0);
  return (m * std::pow(std::complex<double>(0.0, -1.0), mu)).real();
}

/// Closed-form Husimi of |n0>.
inline double husimi_fock(int n0, double r, double hbar0) {
  if (r == 0.0) return n0 == 0 ? 1.0 / (2.0 * kPi) : 0.0;
  const double lg = -r * r / (2.0 * hbar0) + 2.0 * n0 * std::log(r) - n0 * std::log(2.0 * hbar0) - log_factorial(n0);
  return std::exp(lg) / (2.0 * kPi);
}

}  // namespace oracle
