#pragma once

// Special functions and oscillator matrix elements for the resonance ladder.

#include <vector>

#include "qweb/params.hpp"

namespace qweb {

/// ln(n!) for n >= 0.
double log_factorial(int n);

/// Associated Laguerre polynomial L_n^alpha(x) by the three-term recurrence in n.
double laguerre_assoc(int n, int alpha, double x);

/// Bessel function of the first kind J_mu(x), integer order mu >= 0, x >= 0.
///
/// Power series for small x, Miller's downward recurrence (normalised with
/// J_0 + 2 sum J_2k = 1) otherwise.
double bessel_j(int mu, double x);

/// J_mu'(x) = (J_{mu-1} - J_{mu+1}) / 2, with J_{-k} = (-1)^k J_k.
double bessel_j_derivative(int mu, double x);

/// J_mu''(x) = (J_{mu-2} - 2 J_mu + J_{mu+2}) / 4.
double bessel_j_second_derivative(int mu, double x);

/// k-th positive zero of J_mu (k >= 1), located by scan + bisection.
double bessel_j_zero(int mu, int k);

/// Location of the k-th local extremum of J_mu on x > 0 (k >= 1), i.e. k-th zero of J_mu'.
double bessel_j_extremum(int mu, int k);

/// Location of the maximum of |J_mu| in [lo, hi] by golden-section search.
/// The caller guarantees |J_mu| is unimodal on the bracket.
double bessel_abs_max_in(int mu, double lo, double hi);

/// Resonance coupling g_mu(n): signed magnitude of <n| e^{iX} |n+mu>.
///
/// g = exp(-hbar0/4) (hbar0/2)^{mu/2} sqrt(n!/(n+mu)!) L_n^mu(hbar0/2), with the
/// factorial ratio in log domain. Asymptotically g ~ J_mu(sqrt(2 n hbar0)).
/// Throws TruncationError if n + mu > n_max.
double coupling_g(const Params& params, int n);

/// Integer range of ladder indices forming one resonance cell.
///
/// Levels of the cell are n = ladder + mu*m for m in [m_lo, m_hi]. Couplings on
/// links m_lo..m_hi-1 share one sign. `index` counts cells outward from 1.
/// `truncated` marks a final cell whose closing sign change lies past the scan.
struct Cell {
  int mu = 1;
  int ladder = 0;
  int m_lo = 0;
  int m_hi = 0;
  int index = 1;
  bool truncated = false;

  int size() const { return m_hi - m_lo + 1; }
  int level(int m) const;  ///< Fock level of ladder index m.
  int n_lo() const;
  int n_hi() const;

  bool operator==(const Cell&) const = default;
};

/// Partitions ladder indices 0..m_max into maximal runs of same-sign couplings.
///
/// Requires 0 <= ladder < mu and ladder + mu*m_max <= n_max - mu (link m_max is
/// read to decide whether the last cell is closed).
std::vector<Cell> cell_boundaries(const Params& params, int ladder, int m_max);

/// Largest m_max accepted by cell_boundaries for this ladder.
int max_scan_index(const Params& params, int ladder);

/// hbar0 = 2 eta^2 for Lamb-Dicke parameter eta.
double lamb_dicke_to_hbar0(double eta);

}  // namespace qweb
