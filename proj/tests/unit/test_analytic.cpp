#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gridqaoa/analytic.hpp"
#include "gridqaoa/error.hpp"
#include "gridqaoa/simulator.hpp"
#include "reference.hpp"

using namespace gridqaoa;

namespace {

constexpr double kPi = std::numbers::pi;
const AnglePair kProbe{kPi / 6, kPi / 8};

// (-1/2)<Z_i Z_j> on the full grid from the reference simulator.
double full_value(const Grid& g, int i, int j, const AnglePair& a) {
  return -0.5 * ref::zz(ref::two_angle_state(g.num_sites(), g.edges(), a.gamma, a.beta), i, j);
}

double weighted(const TypeCensus& c, double gamma, double beta) {
  const AnglePair a{gamma, beta};
  return c.m1 * f1(a) + c.m2 * f2(a) + c.m3 * f3(a);
}

}  // namespace

TEST_SUITE("interior formulas") {
  TEST_CASE("values at gamma = pi/6, beta = pi/8") {
    CHECK(interior_expectation(EdgeClass::Type0, kProbe) == 0.0);
    CHECK(interior_expectation(EdgeClass::Type1, kProbe) == doctest::Approx(3 * std::sqrt(3.0) / 32).epsilon(1e-12));
    CHECK(interior_expectation(EdgeClass::Type2, kProbe) == doctest::Approx(-27.0 / 512).epsilon(1e-12));
    CHECK(interior_expectation(EdgeClass::Type3, kProbe) == doctest::Approx(-27.0 / 1024).epsilon(1e-12));
  }

  TEST_CASE("lambda is the maximum of sin^2 cos^6") {
    CHECK(kLambda == 27.0 / 256.0);
    const double at = std::pow(std::sin(kPi / 6), 2) * std::pow(std::cos(kPi / 6), 6);
    CHECK(at == doctest::Approx(kLambda).epsilon(1e-14));
    for (int k = 0; k <= 10000; ++k) {
      const double g = kPi * k / 10000;
      REQUIRE(std::pow(std::sin(g), 2) * std::pow(std::cos(g), 6) <= kLambda + 1e-15);
    }
  }

  TEST_CASE("bounded by one half and pi-periodic in both angles") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int t = 0; t < 1000; ++t) {
      const AnglePair a{u(rng), u(rng)};
      for (EdgeClass c : {EdgeClass::Type1, EdgeClass::Type2, EdgeClass::Type3}) {
        const double v = interior_expectation(c, a);
        REQUIRE(std::abs(v) <= 0.5);
        REQUIRE(interior_expectation(c, {a.gamma + kPi, a.beta}) == doctest::Approx(v).epsilon(1e-12));
        REQUIRE(interior_expectation(c, {a.gamma, a.beta + kPi}) == doctest::Approx(v).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("angle reduction") {
    const AnglePair r = AnglePair::reduced(-kPi / 6, 9 * kPi / 8);
    CHECK(r.beta == doctest::Approx(kPi / 8));
    CHECK(r.gamma == doctest::Approx(11 * kPi / 6));
  }
}

TEST_SUITE("objective estimate") {
  TEST_CASE("zero angles give m/2") {
    CHECK(p1_objective_estimate(24, {0, 8, 8, 8}, {0.0, 0.0}) == 12.0);
  }

  TEST_CASE("24 edges, eight of Type1") {
    const double v = p1_objective_estimate(24, {16, 8, 0, 0}, kProbe);
    CHECK(v == doctest::Approx(12.0 + 8 * 3 * std::sqrt(3.0) / 32).epsilon(1e-12));
    CHECK(v == doctest::Approx(13.2990).epsilon(1e-5));
  }

  TEST_CASE("rejects inconsistent counts") {
    CHECK_THROWS_AS(p1_objective_estimate(5, {0, 4, 4, 0}, kProbe), InvalidArgument);
    CHECK_THROWS_AS(p1_objective_estimate(5, {0, -1, 0, 0}, kProbe), InvalidArgument);
  }

  TEST_CASE("matches the simulator when every edge is interior") {
    // Edges among the interior 3x3 block of a 5x5 grid: both endpoints of
    // every counted pair have four grid neighbors.
    const Grid g(5, 5);
    std::vector<Edge> edges{{g.site(1, 1), g.site(1, 2)},  // Type1
                            {g.site(2, 2), g.site(3, 3)},  // Type2
                            {g.site(1, 3), g.site(3, 3)},  // Type3
                            {g.site(2, 1), g.site(3, 2)},  // Type2
                            {g.site(1, 1), g.site(3, 3)}}; // Type0
    const TypeCensus c{1, 1, 2, 1};
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int t = 0; t < 5; ++t) {
      const AnglePair a{u(rng), u(rng)};
      const StateVector s = prepare_state(g, two_angle_schedule(g, a.gamma, a.beta));
      double sim = 0.0;
      for (const Edge& e : edges) sim += 0.5 * (1.0 - zz_correlation(s, e.u, e.v));
      CHECK(sim == doctest::Approx(p1_objective_estimate(5, c, a)).epsilon(1e-10));
    }
  }
}

TEST_SUITE("optimal angles") {
  TEST_CASE("only Type1 edges") {
    const OptimalAngles o = optimal_angles({0, 1, 0, 0});
    CHECK(o.angles.gamma == doctest::Approx(kPi / 6));
    CHECK(o.angles.beta == doctest::Approx(kPi / 8));
    CHECK(o.contribution == doctest::Approx(3 * std::sqrt(3.0) / 32).epsilon(1e-12));
  }

  TEST_CASE("one Type1 and one Type2 edge, against a dense grid search") {
    const TypeCensus c{0, 1, 1, 0};
    const OptimalAngles o = optimal_angles(c);
    CHECK(o.contribution == doctest::Approx(0.5 * (std::sqrt(kLambda + kLambda * kLambda) - kLambda)).epsilon(1e-12));
    CHECK(o.contribution == doctest::Approx(0.117994).epsilon(1e-5));
    double best = -1.0;
    constexpr int kSteps = 2000;
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = 0; j <= kSteps; ++j) best = std::max(best, weighted(c, kPi * i / kSteps, kPi * j / kSteps));
    }
    CHECK(std::abs(best - o.contribution) < 1e-4);
    CHECK(weighted(c, o.angles.gamma, o.angles.beta) == doctest::Approx(o.contribution).epsilon(1e-12));
  }

  TEST_CASE("no Type1 edges gives nothing") {
    CHECK(optimal_angles({0, 0, 1, 0}).contribution == doctest::Approx(0.0));
  }

  TEST_CASE("all-zero counts are rejected") { CHECK_THROWS_AS(optimal_angles({5, 0, 0, 0}), InvalidArgument); }

  TEST_CASE("never beaten by random angle pairs") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, kPi);
    std::uniform_int_distribution<int> count(0, 12);
    for (int draw = 0; draw < 10; ++draw) {
      const TypeCensus c{0, 1 + count(rng), count(rng), count(rng)};
      const double best = optimal_angles(c).contribution;
      for (int t = 0; t < 100000; ++t) REQUIRE(weighted(c, u(rng), u(rng)) <= best + 1e-9);
    }
  }

  TEST_CASE("positive whenever m1 > 0") {
    for (int m2 = 0; m2 < 20; ++m2) CHECK(optimal_angles({0, 1, m2, 20 - m2}).contribution > 0.0);
  }
}

TEST_SUITE("ratio bound") {
  TEST_CASE("worst case m1 = m/3, m' = 2m/3") {
    CHECK(ratio_lower_bound(24, 8, 16) == doctest::Approx(0.5293856).epsilon(1e-6));
    CHECK(std::abs(ratio_lower_bound(3, 1, 2) - 0.529386) < 1e-5);
  }

  TEST_CASE("random guessing baseline and the all-Type1 case") {
    CHECK(ratio_lower_bound(24, 0, 0) == 0.5);
    CHECK(ratio_lower_bound(24, 24, 0) == doctest::Approx(0.5 + 0.5 * std::sqrt(kLambda)));
    CHECK(ratio_lower_bound(24, 24, 0) == doctest::Approx(0.662380).epsilon(1e-6));
  }

  TEST_CASE("equals one half plus the optimal contribution over m") {
    const TypeCensus c{4, 8, 8, 4};
    CHECK(ratio_lower_bound(24, 8, c.m_prime()) == doctest::Approx(0.5 + optimal_angles(c).contribution / 24));
  }

  TEST_CASE("m = 0 is rejected") { CHECK_THROWS_AS(ratio_lower_bound(0, 0, 0), InvalidArgument); }
}

TEST_SUITE("lightcone") {
  TEST_CASE("2x2 corner pair is sqrt(3)/8") {
    const Grid g(2, 2);
    CHECK(lightcone_expectation(g, 0, 1, kProbe) == doctest::Approx(std::sqrt(3.0) / 8).epsilon(1e-12));
    CHECK(full_value(g, 0, 1, kProbe) == doctest::Approx(std::sqrt(3.0) / 8).epsilon(1e-12));
  }

  TEST_CASE("Type0 pairs vanish") {
    const Grid g(7, 7);
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int t = 0; t < 10; ++t) {
      const AnglePair a{u(rng), u(rng)};
      CHECK(std::abs(lightcone_expectation(g, g.site(3, 3), g.site(5, 4), a)) < 1e-12);
      CHECK(std::abs(lightcone_expectation(g, g.site(0, 0), g.site(6, 6), a)) < 1e-12);
    }
  }

  TEST_CASE("interior pairs on 7x7 reproduce the closed forms") {
    const Grid g(7, 7);
    const int c = g.site(3, 3);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int t = 0; t < 10; ++t) {
      const AnglePair a{u(rng), u(rng)};
      CHECK(lightcone_expectation(g, c, g.site(3, 4), a) == doctest::Approx(f1(a)).epsilon(1e-12));
      CHECK(lightcone_expectation(g, c, g.site(4, 4), a) == doctest::Approx(f2(a)).epsilon(1e-12));
      CHECK(lightcone_expectation(g, c, g.site(3, 5), a) == doctest::Approx(f3(a)).epsilon(1e-12));
    }
  }

  TEST_CASE("all pairs of a 3x4 grid against the full simulator") {
    const Grid g(3, 4);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, kPi);
    for (int t = 0; t < 5; ++t) {
      const AnglePair a{u(rng), u(rng)};
      const ref::State psi = ref::two_angle_state(12, g.edges(), a.gamma, a.beta);
      for (int i = 0; i < 12; ++i) {
        for (int j = i + 1; j < 12; ++j) {
          REQUIRE(std::abs(lightcone_expectation(g, i, j, a) + 0.5 * ref::zz(psi, i, j)) < 1e-10);
        }
      }
    }
  }

  TEST_CASE("summing edge terms reproduces the simulator objective") {
    const Grid g(3, 3);
    const ProblemGraph graph(9, {{0, 4}, {1, 2}, {2, 8}, {3, 5}, {6, 7}, {0, 8}, {4, 5}});
    const AnglePair a{0.7, 0.3};
    double sum = 0.0;
    for (const Edge& e : graph.edges()) sum += 0.5 + lightcone_expectation(g, e.u, e.v, a);
    const ref::State psi = ref::two_angle_state(9, g.edges(), a.gamma, a.beta);
    CHECK(sum == doctest::Approx(ref::expected_cut(psi, graph.edges())).epsilon(1e-10));
  }

  TEST_CASE("periodicity: beta always pi, gamma pi for even-degree pairs, 2pi for all") {
    const Grid g(4, 4);
    const AnglePair a{0.9, 0.4};
    for (int i = 0; i < 16; ++i) {
      for (int j = i + 1; j < 16; ++j) {
        const double v = lightcone_expectation(g, i, j, a);
        REQUIRE(lightcone_expectation(g, i, j, {a.gamma, a.beta + kPi}) == doctest::Approx(v).epsilon(1e-12));
        REQUIRE(lightcone_expectation(g, i, j, {a.gamma + 2 * kPi, a.beta}) == doctest::Approx(v).epsilon(1e-12));
        if (g.degree(i) % 2 == 0 && g.degree(j) % 2 == 0) {
          REQUIRE(lightcone_expectation(g, i, j, {a.gamma + kPi, a.beta}) == doctest::Approx(v).epsilon(1e-12));
        }
      }
    }
    // An odd-degree border pair flips sign under gamma -> gamma + pi.
    const double v = lightcone_expectation(g, 1, 2, a);
    CHECK(std::abs(v) > 1e-3);
    CHECK(lightcone_expectation(g, 1, 2, {a.gamma + kPi, a.beta}) == doctest::Approx(-v).epsilon(1e-10));
  }

  TEST_CASE("invalid sites") {
    const Grid g(2, 2);
    CHECK_THROWS_AS(lightcone_expectation(g, 1, 1, kProbe), InvalidArgument);
    CHECK_THROWS_AS(lightcone_expectation(g, 0, 4, kProbe), InvalidArgument);
  }
}
