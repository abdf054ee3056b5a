#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gridqaoa/error.hpp"
#include "gridqaoa/instance.hpp"

using namespace gridqaoa;

namespace {

ProblemGraph k4() { return ProblemGraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

ProblemGraph cycle(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
  return ProblemGraph(n, edges);
}

// Degree sequence counted straight from the edge list.
std::vector<int> degrees(const ProblemGraph& g) {
  std::vector<int> d(static_cast<std::size_t>(g.num_vertices()), 0);
  for (const Edge& e : g.edges()) {
    ++d[static_cast<std::size_t>(e.u)];
    ++d[static_cast<std::size_t>(e.v)];
  }
  return d;
}

bool simple(const ProblemGraph& g) {
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) return false;
    if (!seen.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("bitstring") {
  TEST_CASE("parse and print round trip, character i is bit i") {
    const BitString z = BitString::parse("0110");
    CHECK(z.size() == 4);
    CHECK(z.bits() == 0b0110);
    CHECK_FALSE(z.test(0));
    CHECK(z.test(1));
    CHECK(z.to_string() == "0110");
  }

  TEST_CASE("bit 0 is spin +1, bit 1 is spin -1") {
    const BitString z = BitString::parse("01");
    CHECK(z.spin(0) == 1);
    CHECK(z.spin(1) == -1);
  }

  TEST_CASE("flip, popcount, set") {
    BitString z = BitString::parse("1100");
    CHECK(z.flipped().to_string() == "0011");
    CHECK(z.popcount() == 2);
    z.set(3, true);
    CHECK(z.to_string() == "1101");
    CHECK_THROWS_AS(z.set(4, true), InvalidArgument);
  }

  TEST_CASE("64-bit strings and hamming distance") {
    const BitString z(64, ~std::uint64_t{0});
    CHECK(z.popcount() == 64);
    CHECK(z.flipped().popcount() == 0);
    CHECK(hamming_distance(BitString::parse("0101"), BitString::parse("0011")) == 2);
    CHECK_THROWS_AS(hamming_distance(BitString::parse("01"), BitString::parse("011")), InvalidArgument);
  }

  TEST_CASE("rejects bad input") {
    CHECK_THROWS_AS(BitString::parse("01x"), InvalidArgument);
    CHECK_THROWS_AS(BitString(65, 0), InvalidArgument);
    CHECK_THROWS_AS(BitString::parse(std::string(65, '0')), InvalidArgument);
  }
}

TEST_SUITE("problem graph") {
  TEST_CASE("normalizes edges and answers adjacency queries") {
    const ProblemGraph g(3, {{2, 0}, {1, 2}});
    CHECK(g.num_edges() == 2);
    CHECK(g.edges()[0] == Edge{0, 2});
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 1));
    CHECK(g.neighbors(2) == std::vector<int>{0, 1});
    CHECK(g.degree(2) == 2);
  }

  TEST_CASE("rejects self loops, duplicates and bad endpoints") {
    CHECK_THROWS_AS(ProblemGraph(3, {{1, 1}}), InvalidArgument);
    CHECK_THROWS_AS(ProblemGraph(3, {{0, 1}, {1, 0}}), InvalidArgument);
    CHECK_THROWS_AS(ProblemGraph(3, {{0, 3}}), InvalidArgument);
    CHECK_THROWS_AS(ProblemGraph(0, {}), InvalidArgument);
  }
}

TEST_SUITE("random regular graph") {
  TEST_CASE("n=4 degree 3 is K4 for any seed") {
    for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
      const ProblemGraph g = random_regular_graph(4, 3, seed);
      CHECK(g.num_edges() == 6);
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) CHECK(g.has_edge(a, b));
      }
    }
  }

  TEST_CASE("n=16 seed 7 has 24 edges and every degree 3") {
    const ProblemGraph g = random_regular_graph(16, 3, 7);
    CHECK(g.num_edges() == 24);
    for (int d : degrees(g)) CHECK(d == 3);
    CHECK(simple(g));
  }

  TEST_CASE("parity and size violations are rejected") {
    CHECK_THROWS_AS(random_regular_graph(3, 3, 0), InvalidArgument);
    CHECK_THROWS_AS(random_regular_graph(5, 3, 0), InvalidArgument);
    CHECK_THROWS_AS(random_regular_graph(6, 0, 0), InvalidArgument);
  }

  TEST_CASE("deterministic per seed") {
    CHECK(random_regular_graph(20, 3, 5).edges() == random_regular_graph(20, 3, 5).edges());
    CHECK(random_regular_graph(20, 3, 5).edges() != random_regular_graph(20, 3, 6).edges());
  }

  TEST_CASE("simple and regular over 100 seeds") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const int n = 6 + 2 * static_cast<int>(seed % 14);
      const ProblemGraph g = random_regular_graph(n, 3, seed);
      REQUIRE(simple(g));
      for (int d : degrees(g)) REQUIRE(d == 3);
      CHECK(g.is_regular(3));
    }
  }
}

TEST_SUITE("maxcut") {
  TEST_CASE("single cut edge scores 1") {
    const ProblemGraph g(2, {{0, 1}});
    CHECK(maxcut(g, BitString::parse("01")) == 1.0);
  }

  TEST_CASE("all +1 spins cut nothing") { CHECK(maxcut(k4(), BitString::parse("0000")) == 0.0); }

  TEST_CASE("K4 balanced split cuts 4 of its 6 edges") { CHECK(maxcut(k4(), BitString::parse("0011")) == 4.0); }

  TEST_CASE("length mismatch") { CHECK_THROWS_AS(maxcut(k4(), BitString::parse("001")), InvalidArgument); }

  TEST_CASE("flip symmetry and bounds on random strings") {
    const ProblemGraph g = random_regular_graph(20, 3, 11);
    const double best = brute_force_maxcut(g).value;
    std::mt19937_64 rng(4);
    for (int t = 0; t < 1000; ++t) {
      const BitString z(20, rng());
      const double c = maxcut(g, z);
      REQUIRE(c == maxcut(g, z.flipped()));
      REQUIRE(c >= 0.0);
      REQUIRE(c <= g.num_edges());
      REQUIRE(best >= c);
    }
  }
}

TEST_SUITE("brute force maxcut") {
  TEST_CASE("K4 maximum is 4 with all six balanced splits") {
    const MaxCutSolution s = brute_force_maxcut(k4());
    CHECK(s.value == 4.0);
    CHECK(s.maximizers.size() == 6);
    for (const BitString& z : s.maximizers) CHECK(z.popcount() == 2);
  }

  TEST_CASE("single edge") {
    const MaxCutSolution s = brute_force_maxcut(ProblemGraph(2, {{0, 1}}));
    CHECK(s.value == 1.0);
    REQUIRE(s.maximizers.size() == 2);
    std::set<std::string> strings;
    for (const BitString& z : s.maximizers) strings.insert(z.to_string());
    CHECK(strings == std::set<std::string>{"01", "10"});
  }

  TEST_CASE("bipartite 6-cycle is fully cut") { CHECK(brute_force_maxcut(cycle(6)).value == 6.0); }

  TEST_CASE("odd 5-cycle leaves one edge uncut") { CHECK(brute_force_maxcut(cycle(5)).value == 4.0); }

  TEST_CASE("maximizer set is closed under flip and matches exhaustive search") {
    const ProblemGraph g = random_regular_graph(12, 3, 3);
    const MaxCutSolution s = brute_force_maxcut(g);
    std::set<std::uint64_t> expected;
    double best = 0.0;
    for (std::uint64_t z = 0; z < (1U << 12); ++z) best = std::max(best, maxcut(g, BitString(12, z)));
    for (std::uint64_t z = 0; z < (1U << 12); ++z) {
      if (maxcut(g, BitString(12, z)) == best) expected.insert(z);
    }
    CHECK(s.value == best);
    std::set<std::uint64_t> got;
    for (const BitString& z : s.maximizers) got.insert(z.bits());
    CHECK(got == expected);
  }

  TEST_CASE("enumeration budget") {
    CHECK_THROWS_AS(brute_force_maxcut(cycle(30)), CapacityError);
  }
}

TEST_SUITE("grid") {
  TEST_CASE("4x4 has 16 sites and 24 edges") {
    const Grid g = make_grid(4, 4);
    CHECK(g.num_sites() == 16);
    CHECK(g.edges().size() == 24);
  }

  TEST_CASE("1x1 has no edges") {
    const Grid g = make_grid(1, 1);
    CHECK(g.num_sites() == 1);
    CHECK(g.edges().empty());
  }

  TEST_CASE("7x7 has 84 edges and 25 interior sites of degree 4") {
    const Grid g = make_grid(7, 7);
    CHECK(g.num_sites() == 49);
    CHECK(g.edges().size() == 84);
    int interior = 0;
    for (int s = 0; s < g.num_sites(); ++s) {
      if (g.is_interior(s)) {
        ++interior;
        CHECK(g.degree(s) == 4);
      }
    }
    CHECK(interior == 25);
  }

  TEST_CASE("canonical edge order: horizontal by row, then vertical by row") {
    const Grid g = make_grid(2, 3);
    const std::vector<Edge> expected{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}};
    CHECK(g.edges() == expected);
    CHECK(g.edge_index(4, 1) == 5);
    CHECK(g.edge_index(0, 4) == -1);
  }

  TEST_CASE("row-major sites and neighbor lists") {
    const Grid g = make_grid(3, 4);
    CHECK(g.site(1, 2) == 6);
    CHECK(g.row_of(6) == 1);
    CHECK(g.col_of(6) == 2);
    CHECK(g.neighbors(6) == std::vector<int>{2, 5, 7, 10});
    CHECK(g.neighbors(0) == std::vector<int>{1, 4});
    CHECK(g.manhattan_distance(0, 11) == 5);
  }

  TEST_CASE("edge count and interior count formulas") {
    for (int r = 1; r <= 8; ++r) {
      for (int c = 1; c <= 8; ++c) {
        const Grid g(r, c);
        CHECK(g.edges().size() == static_cast<std::size_t>(r * (c - 1) + c * (r - 1)));
        int interior = 0;
        for (int s = 0; s < g.num_sites(); ++s) interior += g.is_interior(s) ? 1 : 0;
        CHECK(interior == std::max(r - 2, 0) * std::max(c - 2, 0));
      }
    }
  }

  TEST_CASE("bad dimensions") {
    CHECK_THROWS_AS(make_grid(0, 3), InvalidArgument);
    CHECK_THROWS_AS(make_grid(9, 9), CapacityError);
  }

  TEST_CASE("squarest grid") {
    CHECK(squarest_grid(16).rows() == 4);
    CHECK(squarest_grid(20).rows() == 4);
    CHECK(squarest_grid(20).cols() == 5);
    CHECK(squarest_grid(7).rows() == 1);
    CHECK(squarest_grid(36).cols() == 6);
  }
}
