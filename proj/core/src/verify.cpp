#include "gridqaoa/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gridqaoa/analytic.hpp"
#include "gridqaoa/catstate.hpp"
#include "gridqaoa/embedding.hpp"
#include "gridqaoa/error.hpp"
#include "gridqaoa/optimizer.hpp"
#include "gridqaoa/simulator.hpp"

namespace gridqaoa {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"formulas", "lightcone", "embedding", "cat", "optimizer"};
  return names;
}

std::pair<double, double> maximize_lambda_profile() {
  const auto profile = [](double g) {
    const double c2 = std::cos(g) * std::cos(g);
    return std::sin(g) * std::sin(g) * c2 * c2 * c2;
  };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = std::numbers::pi / 2.0;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = profile(x1);
  double f2 = profile(x2);
  while (b - a > 1e-12) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = profile(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = profile(x1);
    }
  }
  const double g = 0.5 * (a + b);
  return {g, profile(g)};
}

namespace {

std::string describe(double got, double want) {
  std::ostringstream os;
  os.precision(12);
  os << "got " << got << ", want " << want;
  return os.str();
}

CheckResult within(std::string name, double got, double want, double tol) {
  return {std::move(name), std::abs(got - want) <= tol, describe(got, want)};
}

AnglePair random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
  const double g = u(rng);
  const double b = u(rng);
  return {g, b};
}

SuiteReport formulas(std::uint64_t seed) {
  SuiteReport report{"formulas", {}};
  const auto [g, value] = maximize_lambda_profile();
  report.checks.push_back(within("lambda argmax is pi/6", g, std::numbers::pi / 6.0, 1e-6));
  report.checks.push_back(within("lambda is 27/256", value, kLambda, 1e-9));
  report.checks.push_back(within("worst-case ratio bound", ratio_lower_bound(3.0, 1.0, 2.0), 0.529386, 1e-6));

  // Depth-one formulas against a full 4x4 simulation (sites 5, 6, 10 are
  // interior; 5-6 is Type1, 5-10 Type2) and a 3x5 one for Type3 (6-8).
  std::mt19937_64 rng(seed);
  const Grid g44(4, 4);
  const Grid g35(3, 5);
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const AnglePair a = random_angles(rng);
    const StateVector s44 = prepare_state(g44, two_angle_schedule(g44, a.gamma, a.beta));
    const StateVector s35 = prepare_state(g35, two_angle_schedule(g35, a.gamma, a.beta));
    worst = std::max(worst, std::abs(-0.5 * zz_correlation(s44, 5, 6) - f1(a)));
    worst = std::max(worst, std::abs(-0.5 * zz_correlation(s44, 5, 10) - f2(a)));
    worst = std::max(worst, std::abs(-0.5 * zz_correlation(s35, 6, 8) - f3(a)));
    worst = std::max(worst, std::abs(-0.5 * zz_correlation(s44, 0, 15)));
  }
  report.checks.push_back({"F1/F2/F3 and Type0 match the simulator", worst <= 1e-10, "max error " + std::to_string(worst)});

  // Optimal angles beat a dense (gamma, beta) grid search.
  const TypeCensus counts{0, 8, 2, 1};
  const OptimalAngles best = optimal_angles(counts);
  double grid_best = -1.0;
  constexpr int kSteps = 400;
  for (int i = 0; i <= kSteps; ++i) {
    for (int j = 0; j <= kSteps; ++j) {
      const AnglePair a{std::numbers::pi * i / kSteps, std::numbers::pi * j / kSteps};
      grid_best = std::max(grid_best, counts.m1 * f1(a) + counts.m2 * f2(a) + counts.m3 * f3(a));
    }
  }
  report.checks.push_back({"optimal angles dominate a grid search", grid_best <= best.contribution + 1e-9,
                           describe(best.contribution, grid_best)});
  const AnglePair& a = best.angles;
  report.checks.push_back(within("optimal angles attain their value",
                                 counts.m1 * f1(a) + counts.m2 * f2(a) + counts.m3 * f3(a), best.contribution, 1e-12));
  return report;
}

SuiteReport lightcone(std::uint64_t seed) {
  SuiteReport report{"lightcone", {}};
  std::mt19937_64 rng(seed);
  for (const Grid& grid : {Grid(2, 2), Grid(3, 3), Grid(3, 4)}) {
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
      const AnglePair a = random_angles(rng);
      const StateVector state = prepare_state(grid, two_angle_schedule(grid, a.gamma, a.beta));
      for (int i = 0; i < grid.num_sites(); ++i) {
        for (int j = i + 1; j < grid.num_sites(); ++j) {
          worst = std::max(worst, std::abs(lightcone_expectation(grid, i, j, a) + 0.5 * zz_correlation(state, i, j)));
        }
      }
    }
    report.checks.push_back({"lightcone equals full simulation on " + std::to_string(grid.rows()) + "x" +
                                 std::to_string(grid.cols()),
                             worst <= 1e-10, "max error " + std::to_string(worst)});
  }
  const double corner = lightcone_expectation(Grid(2, 2), 0, 1, {std::numbers::pi / 6.0, std::numbers::pi / 8.0});
  report.checks.push_back(within("2x2 corner pair", corner, std::sqrt(3.0) / 8.0, 1e-12));
  return report;
}

SuiteReport embedding(std::uint64_t seed) {
  SuiteReport report{"embedding", {}};
  int failures = 0;
  int instances = 0;
  std::string first_failure;
  for (int n = 8; n <= 36; n += 2) {
    for (int k = 0; k < 4; ++k) {
      const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(n * 100 + k));
      const ProblemGraph graph = random_regular_graph(n, 3, s);
      const Grid grid = squarest_grid(n);
      const SegmentCover cover = greedy_segments(graph, s);
      const Assignment assignment = zigzag_assignment(cover.segments, cover.isolated, grid);
      const TypeCensus census = type_counts(grid, assignment, graph);
      ++instances;
      const bool ok = 2 * cover.selected_edge_count() >= n && 2 * census.m1 >= n && census.total() == graph.num_edges();
      if (!ok && failures++ == 0) first_failure = "n=" + std::to_string(n) + " seed=" + std::to_string(s);
    }
  }
  report.checks.push_back({"m1 >= n/2 on random 3-regular graphs", failures == 0,
                           std::to_string(instances - failures) + "/" + std::to_string(instances) + " ok " + first_failure});
  const Grid g(1, 2);
  const Assignment a = zigzag_assignment({{1, 0}}, {}, g);
  report.checks.push_back({"single segment on 1x2", a.site_of(1) == 0 && a.site_of(0) == 1, ""});
  return report;
}

SuiteReport cat(std::uint64_t seed) {
  SuiteReport report{"cat", {}};
  std::mt19937_64 rng(seed);
  for (const Grid& grid : {Grid(1, 2), Grid(2, 2), Grid(3, 3), Grid(3, 4)}) {
    double worst = 1.0;
    std::uniform_int_distribution<std::uint64_t> bits(0, (std::uint64_t{1} << grid.num_sites()) - 1);
    for (int trial = 0; trial < 5; ++trial) {
      const BitString w(grid.num_sites(), bits(rng));
      const StateVector state = prepare_state(grid, cat_schedule(grid, w));
      worst = std::min(worst, fidelity(state, cat_state(w)));
    }
    report.checks.push_back({"cat fidelity on " + std::to_string(grid.rows()) + "x" + std::to_string(grid.cols()),
                             worst >= 1.0 - 1e-9, "min fidelity " + std::to_string(worst)});
  }
  report.checks.push_back({"3x3 depth is 2", cat_plan(Grid(3, 3)).depth() == 2, ""});
  return report;
}

SuiteReport optimizer(std::uint64_t seed) {
  SuiteReport report{"optimizer", {}};
  OptimizerConfig config;
  config.max_evaluations = 5000;
  config.value_tolerance = 1e-14;
  config.step_tolerance = 1e-7;
  const std::vector<double> centre{0.3, -1.2, 2.0, 0.7, -0.4};
  auto quad = [&](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s -= (x[k] - centre[k]) * (x[k] - centre[k]);
    return s;
  };
  auto simplex = random_simplex(5, Bounds{-3.0, 3.0}, seed);
  const RunRecord rec = nelder_mead(quad, simplex, config, std::nullopt);
  double err = 0.0;
  for (std::size_t k = 0; k < centre.size(); ++k) err = std::max(err, std::abs(rec.best_params[k] - centre[k]));
  report.checks.push_back({"quadratic maximum found", err <= 1e-4, "max coordinate error " + std::to_string(err)});

  const TypeCensus counts{0, 8, 2, 1};
  auto p1 = [&](std::span<const double> x) { return p1_objective_estimate(11, counts, {x[0], x[1]}); };
  const RunRecord angles = nelder_mead(p1, random_simplex(2, Bounds{}, seed + 1), config);
  report.checks.push_back(within("two-angle maximum matches closed form", angles.best_value - 5.5,
                                 optimal_angles(counts).contribution, 1e-5));
  return report;
}

}  // namespace

SuiteReport run_verify_suite(std::string_view suite, std::uint64_t seed) {
  if (suite == "formulas") return formulas(seed);
  if (suite == "lightcone") return lightcone(seed);
  if (suite == "embedding") return embedding(seed);
  if (suite == "cat") return cat(seed);
  if (suite == "optimizer") return optimizer(seed);
  throw InvalidArgument("unknown verify suite '" + std::string(suite) + "'");
}

}  // namespace gridqaoa
