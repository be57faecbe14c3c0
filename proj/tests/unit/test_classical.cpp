#include <doctest.h>

#include <cmath>

#include "../oracles.hpp"
#include "qweb/classical.hpp"
#include "qweb/errors.hpp"

using namespace qweb;

namespace {

Params web(double eps) { return Params{4, eps, 0.12, 600}; }

// One-period map with a fine step, used as the reference trajectory.
ClassicalState reference_step(const Params& p, const ClassicalState& s) { return strobo_step(p, s, 16384); }

}  // namespace

TEST_CASE("unperturbed map is an exact rotation") {
  const Params p = web(0.0);
  const ClassicalState s{1.3, -0.4, 0.0};
  const auto t = strobo_step(p, s, 256);
  // one wave period is a quarter oscillator period: (X, P) -> (P, -X)
  CHECK(t.x == doctest::Approx(s.p).epsilon(1e-13));
  CHECK(t.p == doctest::Approx(-s.x).epsilon(1e-13));
  CHECK(std::abs(std::hypot(t.x, t.p) - std::hypot(s.x, s.p)) < 1e-13);
  ClassicalState u = s;
  for (int k = 0; k < 4; ++k) u = strobo_step(p, u, 256);
  CHECK(std::abs(u.x - s.x) < 1e-12);
  CHECK(std::abs(u.p - s.p) < 1e-12);
  CHECK(u.tau == doctest::Approx(2 * oracle::kPi));

  ClassicalState e = s;
  const double e0 = 0.5 * (s.x * s.x + s.p * s.p);
  for (int k = 0; k < 1000; ++k) e = strobo_step(p, e, 64);
  CHECK(std::abs(0.5 * (e.x * e.x + e.p * e.p) - e0) < 1e-12);
}

TEST_CASE("strobo_step preconditions and escape") {
  CHECK_THROWS_AS(strobo_step(web(0.05), {1, 0, 0}, 8), ConfigError);
  CHECK_THROWS_AS(strobo_step(web(0.05), {5, 0, 0}, 64, 2.0), EscapeError);
}

TEST_CASE("time reversibility") {
  const Params p = web(0.05);
  for (const ClassicalState s : {ClassicalState{1.0, 0.5, 0.0}, ClassicalState{5.3, 0.0, 0.0}, ClassicalState{-3.0, 6.0, 0.0}}) {
    CHECK(reversibility_defect(p, s, 500, 256) < 1e-8);
  }
}

TEST_CASE("one-period map error is O(h^2)") {
  const Params p = web(0.05);
  const ClassicalState s{2.2, -1.7, 0.0};
  const auto ref = reference_step(p, s);
  std::vector<double> err;
  for (int steps : {32, 64, 128, 256}) {
    const auto t = strobo_step(p, s, steps);
    err.push_back(std::hypot(t.x - ref.x, t.p - ref.p));
  }
  for (std::size_t k = 1; k < err.size(); ++k) CHECK(err[k - 1] / err[k] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("area preservation") {
  const Params p = web(0.05);
  for (const ClassicalState s : {ClassicalState{0.3, 0.2, 0.0}, ClassicalState{5.0, 1.0, 0.0}, ClassicalState{7.5, -2.0, 1.0}}) {
    CHECK(strobo_jacobian_det(p, s, 256) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("small-eps sections converge to circles linearly") {
  auto deviation = [](double eps) {
    const Params p = web(eps);
    const auto set = poincare_section(p, {{3.0, 1.0, 0.0}, {6.0, -2.0, 0.0}}, 100, 128);
    double worst = 0.0;
    for (const auto& o : set.orbits) {
      const double r0 = std::hypot(o.initial.x, o.initial.p);
      for (const auto& pt : o.samples) worst = std::max(worst, std::abs(std::hypot(pt[0], pt[1]) - r0));
    }
    return worst;
  };
  const double d1 = deviation(1e-4), d2 = deviation(2e-4), d4 = deviation(4e-4);
  CHECK(d2 / d1 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(d4 / d2 == doctest::Approx(2.0).epsilon(0.05));
  CHECK(deviation(0.0) < 1e-12);
}

TEST_CASE("poincare_section") {
  const Params p = web(0.05);
  const auto init = default_initial_conditions(p, 3, 4, 0.5);
  REQUIRE(init.size() == 12);
  const auto a = poincare_section(p, init, 50, 64, 1);
  const auto b = poincare_section(p, init, 50, 64, 3);
  REQUIRE(a.orbits.size() == b.orbits.size());
  for (std::size_t k = 0; k < a.orbits.size(); ++k) CHECK(a.orbits[k].samples == b.orbits[k].samples);
  CHECK(a.total_points() == 12 * 51);
  CHECK(a.escaped_count() == 0);

  const auto esc = poincare_section(p, {{1.0, 0.0, 0.0}, {5.0, 0.0, 0.0}}, 10, 64, 1, 3.0);
  CHECK(!esc.orbits[0].escaped);
  CHECK(esc.orbits[0].samples.size() == 11);
  CHECK(esc.orbits[1].escaped);
  CHECK(esc.orbits[1].escape_period == 1);
  CHECK(esc.escaped_count() == 1);

  const auto rings = default_initial_conditions(p, 12, 8, 0.5);
  CHECK(rings.size() == 96);
  CHECK(std::hypot(rings.back().x, rings.back().p) == doctest::Approx(oracle::bessel_zero(4, 2)).epsilon(1e-10));
}

TEST_CASE("island centre stays in a small disc") {
  // Samples advance by 2 pi / mu, so island centres are fixed points of T^mu
  // (one oscillator period); T permutes the mu islands of the chain.
  const Params p = web(0.05);
  auto full = [&](double x, double y) {
    ClassicalState s{x, y, 0.0};
    for (int k = 0; k < p.mu; ++k) s = strobo_step(p, s, 256);
    return s;
  };
  ClassicalState centre{};
  bool found = false;
  for (int k = 0; k < 32 && !found; ++k) {
    const double a = oracle::kPi * k / 32;
    double x = 5.3 * std::cos(a), y = 5.3 * std::sin(a);
    for (int it = 0; it < 40; ++it) {
      const double d = 1e-7;
      const auto f = full(x, y), fx = full(x + d, y), fy = full(x, y + d);
      const double g1 = f.x - x, g2 = f.p - y;
      if (std::hypot(g1, g2) < 1e-12) break;
      const double j11 = (fx.x - f.x) / d - 1, j12 = (fy.x - f.x) / d;
      const double j21 = (fx.p - f.p) / d, j22 = (fy.p - f.p) / d - 1;
      const double det = j11 * j22 - j12 * j21;
      if (det == 0.0 || !std::isfinite(det)) break;
      x -= (j22 * g1 - j12 * g2) / det;
      y -= (-j21 * g1 + j11 * g2) / det;
      if (std::hypot(x, y) > 20.0) break;
    }
    const auto f = full(x, y);
    const double r = std::hypot(x, y);
    const double d = 1e-6;
    const auto fx = full(x + d, y), fy = full(x, y + d);
    const double trace = (fx.x - f.x) / d + (fy.p - f.p) / d;
    if (std::hypot(f.x - x, f.p - y) < 1e-9 && r > 4.0 && r < 6.5 && std::abs(trace) < 2.0) {
      centre = {x, y, 0.0};
      found = true;
    }
  }
  REQUIRE(found);
  MESSAGE("elliptic point at r = " << std::hypot(centre.x, centre.p) << ", phi = " << std::atan2(centre.p, centre.x));
  const auto set = poincare_section(p, {{centre.x + 1e-3, centre.p, 0.0}}, 10000, 256);
  double spread = 0.0;
  const auto& samples = set.orbits[0].samples;
  for (std::size_t s = 0; s < samples.size(); s += p.mu)
    spread = std::max(spread, std::hypot(samples[s][0] - centre.x, samples[s][1] - centre.p));
  CHECK(spread < 0.05);
}

TEST_CASE("section_symmetry_error") {
  SUBCASE("unperturbed rings are symmetric for any fold") {
    const Params p = web(0.0);
    const auto init = default_initial_conditions(p, 120, 840, 0.5);
    const auto set = poincare_section(p, init, 1, 64);
    CHECK(set.total_points() >= 100000);
    for (int fold : {3, 4, 5, 7, 8}) CHECK(section_symmetry_error(set, fold, 128) < 0.02);
  }
  SUBCASE("a single off-centre cluster is maximally asymmetric") {
    const Params p{1, 0.0, 0.12, 600};
    const auto set = poincare_section(p, {{2.0, 1.0, 0.0}}, 1500, 64);
    CHECK(section_symmetry_error(set, 4, 128) > 0.5);
  }
  SUBCASE("too few points") {
    const auto set = poincare_section(web(0.05), {{1.0, 0.0, 0.0}}, 10, 64);
    CHECK_THROWS_AS(section_symmetry_error(set, 4, 128), ConfigError);
  }
}
