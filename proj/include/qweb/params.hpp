#pragma once

#include <numbers>

namespace qweb {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Detuning from exact resonance. Only the exact-resonance case is modelled.
inline constexpr double kDetuning = 0.0;

/// Dimensionless control group of the driven oscillator.
///
/// mu     resonance number (wave frequency = mu x oscillator frequency)
/// eps    perturbation strength, expected << 1
/// hbar0  dimensionless Planck constant hbar k^2 / (m omega)
/// n_max  Fock-basis truncation
///
/// Quasienergies are reported in units of hbar*omega.
struct Params {
  int mu = 4;
  double eps = 0.002;
  double hbar0 = 0.12;
  int n_max = 600;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
};

}  // namespace qweb
