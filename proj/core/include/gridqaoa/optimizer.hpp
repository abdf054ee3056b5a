#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gridqaoa/embedding.hpp"
#include "gridqaoa/instance.hpp"
#include "gridqaoa/objective.hpp"
#include "gridqaoa/simulator.hpp"

namespace gridqaoa {

using ParamVector = std::vector<double>;

// SplitMix64 finalizer of (base, stream); used for every derived RNG seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

// Named seed streams hanging off one top-level seed.
namespace seed_stream {
inline constexpr std::uint64_t kGraph = 1;
inline constexpr std::uint64_t kAssignment = 2;
inline constexpr std::uint64_t kOptimizer = 3;
inline constexpr std::uint64_t kWarmStart = 4;
inline constexpr std::uint64_t kMeasurement = 5;
inline constexpr std::uint64_t kRestartBase = 1000;  // restart r uses kRestartBase + r
}  // namespace seed_stream

// Coordinate box; points leaving it are mirrored back at the walls.
struct Bounds {
  double lower = 0.0;
  double upper = 3.14159265358979323846;

  double fold(double x) const;
};

struct OptimizerConfig {
  int max_evaluations = 20000;
  // Stop once f_best - f_worst <= value_tolerance and every vertex lies
  // within step_tolerance (max-norm) of the best one.
  double value_tolerance = 1e-10;
  double step_tolerance = 1e-8;
  double reflect = 1.0;
  double expand = 2.0;
  double contract = 0.5;
  double shrink = 0.5;
  int restarts = 1;
  std::uint64_t seed = 0;
  int threads = 1;
  // Exact drivers stop when the value reaches target; the sampled driver
  // stops when a measured string reaches it.
  std::optional<double> target;
  // Shots drawn from the best exact state to report a best string.
  int final_shots = 100;

  void validate() const;
};

struct TracePoint {
  int iteration = 0;
  long evaluations = 0;
  double best_value = 0.0;
  // Sampled driver only: largest per-evaluation frequency of optimal
  // strings among this iteration's evaluations.
  std::optional<double> optimum_frequency;
};

struct RunRecord {
  std::vector<TracePoint> trace;  // best_value is non-decreasing
  ParamVector best_params;
  double best_value = 0.0;
  std::optional<BitString> best_string;  // qubit string
  double best_string_value = 0.0;
  long evaluations = 0;
  int iterations = 0;
  std::string stop_reason;  // "budget", "tolerance", "target" or "trivial"

  // Filled by the multi-restart drivers.
  std::vector<double> restart_values;
  int best_restart = 0;
  std::optional<double> seeded_value;        // warm start vertex value
  std::optional<double> optimum;             // brute-force maximum
  std::optional<double> ratio;               // best_value / optimum
  std::optional<double> optimum_probability; // exact mass on maximizers, best state
};

using ScalarObjective = std::function<double(std::span<const double>)>;

struct NelderMeadHooks {
  // Checked after every evaluation; true ends the run with "target".
  std::function<bool()> should_stop;
  // Called with each new trace point before it is stored.
  std::function<void(TracePoint&)> annotate;
};

// Maximizes f starting from `simplex` (dim + 1 affinely independent points).
// Classical reflect / expand / contract / shrink moves.
RunRecord nelder_mead(const ScalarObjective& f, std::vector<ParamVector> simplex, const OptimizerConfig& config,
                      std::optional<Bounds> bounds = Bounds{}, const NelderMeadHooks& hooks = {});

// dim + 1 points uniform in the box.
std::vector<ParamVector> random_simplex(int dim, const Bounds& bounds, std::uint64_t seed);

enum class Parameterization {
  Opened,    // one beta per qubit and one gamma per coupling, per layer
  TwoAngle,  // one shared (gamma/2, beta) pair per layer
};

// Maps flat parameter vectors to schedules on a coupling layout.
struct Ansatz {
  Layout layout;
  int layers = 1;
  Parameterization parameterization = Parameterization::Opened;

  int dimension() const;
  ParamSchedule schedule(std::span<const double> params) const;
  ParamVector parameters(const ParamSchedule& schedule) const;  // Opened only
};

// Runs config.restarts seeded Nelder-Mead runs (restart r seeded with
// derive_seed(config.seed, kRestartBase + r)) on <C> of the ansatz state.
// initial_vertex, when set, replaces vertex 0 of every restart's simplex.
RunRecord optimize_exact(const Ansatz& ansatz, const DiagonalObjective& objective, const OptimizerConfig& config,
                         const std::optional<ParamVector>& initial_vertex = std::nullopt);

// Grid ansatz on MaxCut pulled back through the assignment; fills
// optimum / ratio when the graph is small enough to brute force.
RunRecord optimize_exact(const Grid& grid, const ProblemGraph& graph, const Assignment& assignment, int layers,
                         const OptimizerConfig& config,
                         Parameterization parameterization = Parameterization::Opened);

// Same protocol with the ZZ couplings on the problem graph's own edges.
RunRecord optimize_exact_native(const ProblemGraph& graph, int layers, const OptimizerConfig& config,
                                Parameterization parameterization = Parameterization::Opened);

// Sampled estimator of <C>: mean over `shots` measured strings. Deterministic
// for a fixed generator.
double sampled_mean(const StateVector& state, const DiagonalObjective& objective, int shots, std::mt19937_64& rng);

// Each objective query prepares and measures `shots` times and returns the
// sample mean. Tracks the best string seen and the frequency of optimal
// strings. Without config.target the run stops early on a brute-force
// optimal string when n <= 24.
RunRecord optimize_sampled(const Grid& grid, const ProblemGraph& graph, const Assignment& assignment, int layers,
                           int shots, const OptimizerConfig& config);

enum class WarmStartMode { Analytic, CQuad };

// Seeds vertex 0 of each restart's simplex with parameters preparing
// (|w> + |w̄>)/sqrt(2) on the grid (w given over problem vertices), then
// maximizes MaxCut. seeded_value holds <C> at that vertex (= C(w)).
RunRecord warm_start(const Grid& grid, const ProblemGraph& graph, const Assignment& assignment, const BitString& w,
                     int layers, const OptimizerConfig& config, WarmStartMode mode);

// Parameters preparing the warm-start cat state on the grid (qubit string).
ParamVector warm_start_parameters(const Grid& grid, const BitString& w_sites, int layers,
                                  const OptimizerConfig& config, WarmStartMode mode);

}  // namespace gridqaoa
