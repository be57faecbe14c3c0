#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "../oracles.hpp"
#include "qweb/errors.hpp"
#include "qweb/specfun.hpp"

using namespace qweb;

namespace {
Params make(int mu, double hbar0, int n_max = 600) {
  Params p;
  p.mu = mu;
  p.hbar0 = hbar0;
  p.n_max = n_max;
  return p;
}
}  // namespace

TEST_CASE("log_factorial") {
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-14));
  for (int n : {1, 17, 100, 400, 5000}) {
    const double ref = oracle::log_factorial(n);
    CHECK(std::abs(log_factorial(n) - ref) <= 1e-12 * std::max(1.0, ref));
  }
  CHECK_THROWS_AS(log_factorial(-1), ConfigError);
}

TEST_CASE("laguerre_assoc") {
  CHECK(laguerre_assoc(0, 3, 1.7) == 1.0);
  CHECK(laguerre_assoc(1, 2, 0.06) == doctest::Approx(2.94).epsilon(1e-15));
  CHECK(laguerre_assoc(5, 4, 0.06) == doctest::Approx(oracle::laguerre(5, 4, 0.06)).epsilon(1e-13));
  for (int n : {3, 10, 25}) {
    for (int a : {0, 1, 4}) {
      for (double x : {0.01, 0.5, 2.0}) {
        CHECK(laguerre_assoc(n, a, x) == doctest::Approx(oracle::laguerre(n, a, x)).epsilon(1e-10));
      }
    }
  }

  SUBCASE("recurrence residual") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> nd(1, 60), ad(0, 8);
    std::uniform_real_distribution<double> xd(0.0, 3.0);
    for (int t = 0; t < 200; ++t) {
      const int n = nd(rng), a = ad(rng);
      const double x = xd(rng);
      const double l0 = laguerre_assoc(n - 1, a, x), l1 = laguerre_assoc(n, a, x), l2 = laguerre_assoc(n + 1, a, x);
      const double scale = std::max({1.0, std::abs((n + 1) * l2), std::abs((2 * n + 1 + a - x) * l1),
                                     std::abs((n + a) * l0)});
      CHECK(std::abs((n + 1) * l2 - (2 * n + 1 + a - x) * l1 + (n + a) * l0) < 1e-9 * scale);
    }
  }
}

TEST_CASE("bessel_j against the integral representation") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  CHECK(bessel_j(4, 0.0) == 0.0);
  double worst = 0.0;
  for (int mu : {0, 1, 2, 3, 4, 7, 12, 30}) {
    for (double x = 0.0; x <= 50.0; x += 0.173) {
      worst = std::max(worst, std::abs(bessel_j(mu, x) - oracle::bessel_integral(mu, x)));
    }
  }
  CHECK(worst < 1e-10);
  CHECK_THROWS_AS(bessel_j(1, -1.0), ConfigError);
}

TEST_CASE("bessel derivatives, zeros and extrema") {
  const double h = 1e-4;
  for (int mu : {0, 1, 4}) {
    for (double x : {0.7, 3.3, 9.1}) {
      const double fd1 = (bessel_j(mu, x + h) - bessel_j(mu, x - h)) / (2 * h);
      const double fd2 = (bessel_j(mu, x + h) - 2 * bessel_j(mu, x) + bessel_j(mu, x - h)) / (h * h);
      CHECK(bessel_j_derivative(mu, x) == doctest::Approx(fd1).epsilon(1e-7));
      CHECK(bessel_j_second_derivative(mu, x) == doctest::Approx(fd2).epsilon(1e-5));
    }
  }
  CHECK(bessel_j_zero(1, 1) == doctest::Approx(oracle::bessel_zero(1, 1)).epsilon(1e-11));
  CHECK(bessel_j_zero(4, 1) == doctest::Approx(oracle::bessel_zero(4, 1)).epsilon(1e-11));
  CHECK(bessel_j_zero(4, 2) == doctest::Approx(oracle::bessel_zero(4, 2)).epsilon(1e-11));
  CHECK(bessel_j_zero(1, 1) == doctest::Approx(3.8317).epsilon(1e-4));
  CHECK(bessel_j_zero(4, 1) == doctest::Approx(7.5883).epsilon(1e-4));

  const double first_max = oracle::bessel_first_max(4);
  CHECK(first_max == doctest::Approx(5.3176).epsilon(1e-4));
  // an extremum location is only resolvable to about sqrt(machine epsilon)
  CHECK(bessel_j_extremum(4, 1) == doctest::Approx(first_max).epsilon(1e-7));
  CHECK(bessel_abs_max_in(4, 4.0, 6.5) == doctest::Approx(first_max).epsilon(1e-7));
}

TEST_CASE("coupling_g") {
  SUBCASE("n = 0 closed form") {
    for (int mu : {1, 2, 4}) {
      const auto p = make(mu, 0.12);
      const double ref = std::exp(-0.03) * std::pow(0.06, 0.5 * mu) / std::sqrt(std::tgamma(mu + 1.0));
      CHECK(coupling_g(p, 0) == doctest::Approx(ref).epsilon(1e-14));
    }
  }
  SUBCASE("quadrature oracle") {
    double worst = 0.0;
    for (int mu : {1, 2, 3, 4}) {
      for (double hbar0 : {0.05, 0.12, 0.3, 0.5}) {
        const auto p = make(mu, hbar0);
        for (int n : {0, 1, 5, 17, 33, 60}) {
          worst = std::max(worst, std::abs(coupling_g(p, n) - oracle::coupling_from_quadrature(n, mu, hbar0)));
        }
      }
    }
    CHECK(worst < 1e-8);
  }
  SUBCASE("Bessel proxy near the first maximum") {
    const auto p = make(4, 0.12);
    const double j = oracle::bessel_integral(4, std::sqrt(2.0 * 118 * 0.12));
    CHECK(std::abs(coupling_g(p, 118) - j) < 0.05 * std::abs(j));
  }
  SUBCASE("mu = 1 first sign change brackets the first zero of J_1") {
    const auto p = make(1, 0.12);
    const double z = oracle::bessel_zero(1, 1);
    int n = 0;
    while (coupling_g(p, n + 1) > 0) ++n;
    CHECK(std::sqrt(2 * n * 0.12) < z + 0.1);
    CHECK(std::sqrt(2 * (n + 1) * 0.12) > z - 0.1);
    CHECK(std::abs(n + 1 - z * z / 0.24) < 2.0);
  }
  SUBCASE("truncation") {
    const auto p = make(4, 0.12, 100);
    CHECK_NOTHROW(coupling_g(p, 96));
    CHECK_THROWS_AS(coupling_g(p, 97), TruncationError);
  }
}

TEST_CASE("Bessel asymptotics improve as hbar0 shrinks") {
  for (int mu : {1, 4}) {
    std::vector<double> errors;
    for (double hbar0 : {0.04, 0.02, 0.01}) {
      const auto p = make(mu, hbar0, 6000);
      double jmax = 0.0, worst = 0.0;
      for (double r = 0.0; r <= 10.0; r += 0.01) jmax = std::max(jmax, std::abs(oracle::bessel_integral(mu, r)));
      for (int n = 0;; ++n) {
        const double r = std::sqrt(2.0 * n * hbar0);
        if (r > 10.0) break;
        if (r < 2.0) continue;
        worst = std::max(worst, std::abs(coupling_g(p, n) - oracle::bessel_integral(mu, r)));
      }
      errors.push_back(worst / jmax);
    }
    CHECK(errors[2] < 0.05);
    CHECK(errors[1] < errors[0]);
    CHECK(errors[2] < errors[1]);
  }
}

TEST_CASE("cell_boundaries") {
  SUBCASE("single cell when no sign change") {
    const auto p = make(4, 0.12);
    const auto cells = cell_boundaries(p, 0, 20);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].m_lo == 0);
    CHECK(cells[0].m_hi == 20);
    CHECK(cells[0].truncated);
  }
  SUBCASE("mu = 4 first boundary at the zero of J_4") {
    const auto p = make(4, 0.12);
    const double z = oracle::bessel_zero(4, 1);
    const double n_zero = z * z / (2 * 0.12);
    // discrete oracle: first ladder link with negative coupling
    int m_cut = 0;
    while (coupling_g(p, 4 * m_cut) > 0) ++m_cut;
    CHECK(std::abs(4 * m_cut - n_zero) <= 4.0);
    const auto cells = cell_boundaries(p, 0, max_scan_index(p, 0));
    REQUIRE(cells.size() >= 2);
    CHECK(cells[0].m_lo == 0);
    CHECK(cells[0].m_hi == m_cut);
    CHECK(cells[0].size() == 61);
    CHECK(cells[0].n_hi() == 240);
    CHECK(cells[1].m_lo == m_cut + 1);
  }
  SUBCASE("mu = 1 first cell ends near n = 61") {
    const auto p = make(1, 0.12);
    const double z = oracle::bessel_zero(1, 1);
    const auto cells = cell_boundaries(p, 0, 200);
    CHECK(std::abs(cells[0].n_hi() - z * z / 0.24) < 2.0);
  }
  SUBCASE("partition and sign invariants on every ladder") {
    for (int mu : {1, 2, 3, 4}) {
      const auto p = make(mu, 0.12);
      for (int ladder = 0; ladder < mu; ++ladder) {
        const int m_max = max_scan_index(p, ladder);
        const auto cells = cell_boundaries(p, ladder, m_max);
        int expect = 0;
        for (std::size_t k = 0; k < cells.size(); ++k) {
          const auto& c = cells[k];
          CHECK(c.index == static_cast<int>(k) + 1);
          CHECK(c.m_lo == expect);
          if (!c.truncated) {
            CHECK(c.m_hi >= c.m_lo + 1);
          }
          const bool sign = std::signbit(coupling_g(p, c.level(c.m_lo)));
          for (int m = c.m_lo; m < c.m_hi; ++m) CHECK(std::signbit(coupling_g(p, c.level(m))) == sign);
          if (k + 1 < cells.size()) {
            CHECK(std::signbit(coupling_g(p, c.level(c.m_hi))) != sign);
          }
          expect = c.m_hi + 1;
        }
        CHECK(expect == m_max + 1);
      }
    }
  }
  SUBCASE("preconditions") {
    const auto p = make(4, 0.12, 100);
    CHECK_THROWS_AS(cell_boundaries(p, 4, 10), ConfigError);
    CHECK_THROWS_AS(cell_boundaries(p, 0, 25), TruncationError);
    CHECK_NOTHROW(cell_boundaries(p, 0, 24));
  }
}

TEST_CASE("lamb_dicke_to_hbar0") {
  CHECK(lamb_dicke_to_hbar0(0.0) == 0.0);
  CHECK(lamb_dicke_to_hbar0(0.5) == 0.5);
  CHECK(lamb_dicke_to_hbar0(0.244949) == doctest::Approx(0.12).epsilon(1e-5));
}
