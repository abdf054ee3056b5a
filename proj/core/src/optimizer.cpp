#include "gridqaoa/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <thread>

#include "gridqaoa/catstate.hpp"
#include "gridqaoa/error.hpp"

namespace gridqaoa {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double Bounds::fold(double x) const {
  const double width = upper - lower;
  if (x >= lower && x <= upper) return x;
  double y = std::fmod(x - lower, 2.0 * width);
  if (y < 0.0) y += 2.0 * width;
  if (y > width) y = 2.0 * width - y;
  return lower + y;
}

void OptimizerConfig::validate() const {
  if (max_evaluations < 1) throw InvalidArgument("max_evaluations must be positive");
  if (!(reflect > 0.0 && expand > 1.0 && contract > 0.0 && contract < 1.0 && shrink > 0.0 && shrink < 1.0)) {
    throw InvalidArgument("Nelder-Mead coefficients need reflect > 0, expand > 1, 0 < contract, shrink < 1");
  }
  if (value_tolerance < 0.0 || step_tolerance < 0.0) throw InvalidArgument("tolerances must be nonnegative");
  if (restarts < 1) throw InvalidArgument("restarts must be positive");
  if (threads < 1) throw InvalidArgument("threads must be positive");
  if (final_shots < 0) throw InvalidArgument("final_shots must be nonnegative");
}

namespace {

struct BudgetExhausted {};

bool affinely_independent(const std::vector<ParamVector>& simplex) {
  const std::size_t dim = simplex.front().size();
  std::vector<std::vector<double>> m(dim, std::vector<double>(dim));
  double scale = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      m[i][k] = simplex[i + 1][k] - simplex[0][k];
      scale = std::max(scale, std::abs(m[i][k]));
    }
  }
  if (scale == 0.0) return false;
  const double eps = 1e-12 * scale;
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < dim; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) <= eps) return false;
    std::swap(m[pivot], m[col]);
    for (std::size_t r = col + 1; r < dim; ++r) {
      const double factor = m[r][col] / m[col][col];
      for (std::size_t k = col; k < dim; ++k) m[r][k] -= factor * m[col][k];
    }
  }
  return true;
}

template <typename Fn>
std::vector<RunRecord> run_restarts(int count, int threads, Fn&& run_one) {
  std::vector<RunRecord> records(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < count; r = next++) {
      try {
        records[static_cast<std::size_t>(r)] = run_one(r);
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
      }
    }
  };
  const int pool = std::min(threads, count);
  if (pool <= 1) {
    worker();
  } else {
    std::vector<std::thread> workers;
    for (int t = 0; t < pool; ++t) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

// Best restart by value, ties to the lowest index.
RunRecord merge_restarts(std::vector<RunRecord> records) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].best_value > records[best].best_value) best = r;
  }
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& rec : records) values.push_back(rec.best_value);
  RunRecord out = std::move(records[best]);
  out.restart_values = std::move(values);
  out.best_restart = static_cast<int>(best);
  return out;
}

std::optional<MaxCutSolution> try_brute_force(const ProblemGraph& graph) {
  if (graph.num_vertices() > kMaxBruteForceVertices) return std::nullopt;
  return brute_force_maxcut(graph);
}

double mass_on(const StateVector& state, std::span<const double> table, double value) {
  double mass = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) {
    if (table[z] >= value - 1e-9) mass += std::norm(amps[z]);
  }
  return mass;
}

}  // namespace

RunRecord nelder_mead(const ScalarObjective& f, std::vector<ParamVector> simplex, const OptimizerConfig& config,
                      std::optional<Bounds> bounds, const NelderMeadHooks& hooks) {
  config.validate();
  if (simplex.empty()) throw InvalidArgument("simplex is empty");
  const std::size_t dim = simplex.front().size();
  if (simplex.size() != dim + 1) throw InvalidArgument("simplex needs dim + 1 points");
  for (auto& x : simplex) {
    if (x.size() != dim) throw InvalidArgument("simplex points differ in dimension");
    if (bounds) std::transform(x.begin(), x.end(), x.begin(), [&](double v) { return bounds->fold(v); });
  }
  if (dim > 0 && !affinely_independent(simplex)) throw InvalidArgument("degenerate simplex");

  RunRecord rec;
  long evals = 0;
  bool stop_requested = false;
  auto eval = [&](const ParamVector& x) {
    if (evals >= config.max_evaluations) throw BudgetExhausted{};
    const double v = f(x);
    ++evals;
    if (!std::isfinite(v)) throw InvalidArgument("objective returned a non-finite value");
    if (hooks.should_stop && hooks.should_stop()) stop_requested = true;
    return v;
  };
  auto fold = [&](ParamVector& x) {
    if (bounds) std::transform(x.begin(), x.end(), x.begin(), [&](double v) { return bounds->fold(v); });
  };

  std::vector<double> values(dim + 1, -std::numeric_limits<double>::infinity());
  try {
    for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);
  } catch (const BudgetExhausted&) {
  }

  std::vector<std::size_t> order(dim + 1);
  ParamVector centroid(dim);
  ParamVector trial(dim);
  ParamVector trial2(dim);
  int iteration = 0;
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();

    TracePoint tp{iteration, evals, values[best], std::nullopt};
    if (hooks.annotate) hooks.annotate(tp);
    rec.trace.push_back(tp);

    if (dim == 0) {
      rec.stop_reason = "trivial";
      break;
    }
    if (stop_requested || (config.target && values[best] >= *config.target)) {
      rec.stop_reason = "target";
      break;
    }
    if (evals >= config.max_evaluations) {
      rec.stop_reason = "budget";
      break;
    }
    double spread = 0.0;
    for (const auto& x : simplex) {
      for (std::size_t k = 0; k < dim; ++k) spread = std::max(spread, std::abs(x[k] - simplex[best][k]));
    }
    if (values[best] - values[worst] <= config.value_tolerance && spread <= config.step_tolerance) {
      rec.stop_reason = "tolerance";
      break;
    }
    ++iteration;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < dim; ++k) centroid[k] += simplex[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);
    const double f_second = values[order[dim - 1]];

    try {
      for (std::size_t k = 0; k < dim; ++k) trial[k] = centroid[k] + config.reflect * (centroid[k] - simplex[worst][k]);
      fold(trial);
      const double f_reflect = eval(trial);
      if (f_reflect > values[best]) {
        for (std::size_t k = 0; k < dim; ++k) trial2[k] = centroid[k] + config.expand * (trial[k] - centroid[k]);
        fold(trial2);
        // Keep the reflected point if the expansion cannot be afforded.
        double f_expand = -std::numeric_limits<double>::infinity();
        try {
          f_expand = eval(trial2);
        } catch (const BudgetExhausted&) {
        }
        if (f_expand > f_reflect) {
          simplex[worst] = trial2;
          values[worst] = f_expand;
        } else {
          simplex[worst] = trial;
          values[worst] = f_reflect;
        }
        continue;
      }
      if (f_reflect > f_second) {
        simplex[worst] = trial;
        values[worst] = f_reflect;
        continue;
      }
      bool accepted = false;
      if (f_reflect > values[worst]) {
        for (std::size_t k = 0; k < dim; ++k) trial2[k] = centroid[k] + config.contract * (trial[k] - centroid[k]);
        fold(trial2);
        const double f_contract = eval(trial2);
        if (f_contract >= f_reflect) {
          simplex[worst] = trial2;
          values[worst] = f_contract;
          accepted = true;
        }
      } else {
        for (std::size_t k = 0; k < dim; ++k) {
          trial2[k] = centroid[k] + config.contract * (simplex[worst][k] - centroid[k]);
        }
        fold(trial2);
        const double f_contract = eval(trial2);
        if (f_contract > values[worst]) {
          simplex[worst] = trial2;
          values[worst] = f_contract;
          accepted = true;
        }
      }
      if (!accepted) {
        for (std::size_t i = 0; i <= dim && !stop_requested; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < dim; ++k) {
            trial[k] = simplex[best][k] + config.shrink * (simplex[i][k] - simplex[best][k]);
          }
          fold(trial);
          const double v = eval(trial);
          simplex[i] = trial;
          values[i] = v;
        }
      }
    } catch (const BudgetExhausted&) {
    }
  }

  const std::size_t best = order.front();
  rec.best_params = simplex[best];
  rec.best_value = values[best];
  rec.evaluations = evals;
  rec.iterations = iteration;
  return rec;
}

std::vector<ParamVector> random_simplex(int dim, const Bounds& bounds, std::uint64_t seed) {
  if (dim < 0) throw InvalidArgument("dimension must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(bounds.lower, bounds.upper);
  std::vector<ParamVector> simplex(static_cast<std::size_t>(dim) + 1, ParamVector(static_cast<std::size_t>(dim)));
  for (auto& x : simplex) {
    for (double& v : x) v = uniform(rng);
  }
  return simplex;
}

int Ansatz::dimension() const {
  if (parameterization == Parameterization::TwoAngle) return 2 * layers;
  return layers * (layout.num_qubits + static_cast<int>(layout.couplings.size()));
}

ParamSchedule Ansatz::schedule(std::span<const double> params) const {
  const int couplings = static_cast<int>(layout.couplings.size());
  if (static_cast<int>(params.size()) != dimension()) throw InvalidArgument("parameter vector has the wrong length");
  if (parameterization == Parameterization::Opened) {
    return ParamSchedule::from_vector(params, layers, layout.num_qubits, couplings);
  }
  ParamSchedule out(layers, layout.num_qubits, couplings);
  for (int l = 0; l < layers; ++l) {
    const double edge_angle = params[2 * static_cast<std::size_t>(l)];
    const double beta = params[2 * static_cast<std::size_t>(l) + 1];
    for (int e = 0; e < couplings; ++e) out.set_gamma(l, e, edge_angle);
    for (int q = 0; q < layout.num_qubits; ++q) out.set_beta(l, q, beta);
  }
  return out;
}

ParamVector Ansatz::parameters(const ParamSchedule& schedule) const {
  if (parameterization != Parameterization::Opened) throw InvalidArgument("only opened schedules flatten directly");
  if (schedule.layers() != layers || schedule.num_qubits() != layout.num_qubits ||
      schedule.num_couplings() != static_cast<int>(layout.couplings.size())) {
    throw InvalidArgument("schedule does not match the ansatz");
  }
  return schedule.values();
}

RunRecord optimize_exact(const Ansatz& ansatz, const DiagonalObjective& objective, const OptimizerConfig& config,
                         const std::optional<ParamVector>& initial_vertex) {
  config.validate();
  if (objective.num_bits() != ansatz.layout.num_qubits) throw InvalidArgument("objective width does not match ansatz");
  if (initial_vertex && static_cast<int>(initial_vertex->size()) != ansatz.dimension()) {
    throw InvalidArgument("initial vertex has the wrong dimension");
  }
  const std::vector<double> table = objective.tabulate();
  const int dim = ansatz.dimension();

  auto run_one = [&](int r) {
    const std::uint64_t seed = derive_seed(config.seed, seed_stream::kRestartBase + static_cast<std::uint64_t>(r));
    auto simplex = random_simplex(dim, Bounds{}, seed);
    if (initial_vertex) simplex.front() = *initial_vertex;
    StateVector scratch(ansatz.layout.num_qubits);
    auto f = [&](std::span<const double> params) {
      prepare_state_into(scratch, ansatz.layout, ansatz.schedule(params));
      return expectation(scratch, table);
    };
    RunRecord rec = nelder_mead(f, std::move(simplex), config);
    if (config.final_shots > 0) {
      prepare_state_into(scratch, ansatz.layout, ansatz.schedule(rec.best_params));
      for (const BitString& z : measure(scratch, config.final_shots, derive_seed(seed, seed_stream::kMeasurement))) {
        const double v = table[z.bits()];
        if (!rec.best_string || v > rec.best_string_value) {
          rec.best_string = z;
          rec.best_string_value = v;
        }
      }
    }
    return rec;
  };
  return merge_restarts(run_restarts(config.restarts, config.threads, run_one));
}

namespace {

void attach_oracle(RunRecord& rec, const ProblemGraph& graph, const Ansatz& ansatz, const DiagonalObjective& objective) {
  const auto oracle = try_brute_force(graph);
  if (!oracle) return;
  rec.optimum = oracle->value;
  rec.ratio = oracle->value > 0.0 ? rec.best_value / oracle->value : 1.0;
  const StateVector state = prepare_state(ansatz.layout, ansatz.schedule(rec.best_params));
  rec.optimum_probability = mass_on(state, objective.tabulate(), oracle->value);
}

}  // namespace

RunRecord optimize_exact(const Grid& grid, const ProblemGraph& graph, const Assignment& assignment, int layers,
                         const OptimizerConfig& config, Parameterization parameterization) {
  if (graph.num_vertices() != grid.num_sites() || assignment.size() != grid.num_sites()) {
    throw InvalidArgument("optimize_exact: graph, assignment and grid sizes differ");
  }
  if (layers < 0) throw InvalidArgument("layer count must be nonnegative");
  const Ansatz ansatz{Layout::of(grid), layers, parameterization};
  const DiagonalObjective objective = objective_from_graph(graph, assignment);
  RunRecord rec = optimize_exact(ansatz, objective, config);
  attach_oracle(rec, graph, ansatz, objective);
  return rec;
}

RunRecord optimize_exact_native(const ProblemGraph& graph, int layers, const OptimizerConfig& config,
                                Parameterization parameterization) {
  if (layers < 0) throw InvalidArgument("layer count must be nonnegative");
  const Ansatz ansatz{Layout::of(graph), layers, parameterization};
  const DiagonalObjective objective = objective_from_graph(graph, Assignment::identity(graph.num_vertices()));
  RunRecord rec = optimize_exact(ansatz, objective, config);
  attach_oracle(rec, graph, ansatz, objective);
  return rec;
}

double sampled_mean(const StateVector& state, const DiagonalObjective& objective, int shots, std::mt19937_64& rng) {
  double total = 0.0;
  for (const BitString& z : measure(state, shots, rng)) total += objective.evaluate(z.bits());
  return total / shots;
}

RunRecord optimize_sampled(const Grid& grid, const ProblemGraph& graph, const Assignment& assignment, int layers,
                           int shots, const OptimizerConfig& config) {
  config.validate();
  if (shots < 1) throw InvalidArgument("shots must be positive");
  if (graph.num_vertices() != grid.num_sites() || assignment.size() != grid.num_sites()) {
    throw InvalidArgument("optimize_sampled: graph, assignment and grid sizes differ");
  }
  if (layers < 0) throw InvalidArgument("layer count must be nonnegative");
  constexpr int kEarlyStopVertices = 24;
  std::optional<double> optimum;
  if (graph.num_vertices() <= kEarlyStopVertices) optimum = brute_force_maxcut(graph).value;
  const std::optional<double> target = config.target ? config.target : optimum;

  const Ansatz ansatz{Layout::of(grid), layers, Parameterization::Opened};
  const DiagonalObjective objective = objective_from_graph(graph, assignment);
  const std::vector<double> table = objective.tabulate();
  OptimizerConfig inner = config;
  inner.target.reset();

  auto run_one = [&](int r) {
    const std::uint64_t seed = derive_seed(config.seed, seed_stream::kRestartBase + static_cast<std::uint64_t>(r));
    std::mt19937_64 rng(derive_seed(seed, seed_stream::kMeasurement));
    StateVector scratch(grid.num_sites());
    std::optional<BitString> best_string;
    double best_string_value = -std::numeric_limits<double>::infinity();
    double iteration_frequency = 0.0;

    auto f = [&](std::span<const double> params) {
      prepare_state_into(scratch, ansatz.layout, ansatz.schedule(params));
      double total = 0.0;
      int hits = 0;
      for (const BitString& z : measure(scratch, shots, rng)) {
        const double v = table[z.bits()];
        total += v;
        if (optimum && v >= *optimum) ++hits;
        if (v > best_string_value) {
          best_string_value = v;
          best_string = z;
        }
      }
      iteration_frequency = std::max(iteration_frequency, static_cast<double>(hits) / shots);
      return total / shots;
    };
    NelderMeadHooks hooks;
    hooks.should_stop = [&] { return target && best_string_value >= *target; };
    hooks.annotate = [&](TracePoint& tp) {
      if (optimum) tp.optimum_frequency = iteration_frequency;
      iteration_frequency = 0.0;
    };
    RunRecord rec = nelder_mead(f, random_simplex(ansatz.dimension(), Bounds{}, seed), inner, Bounds{}, hooks);
    rec.best_string = best_string;
    rec.best_string_value = best_string_value;
    return rec;
  };
  RunRecord rec = merge_restarts(run_restarts(config.restarts, config.threads, run_one));
  if (optimum) {
    rec.optimum = optimum;
    rec.ratio = *optimum > 0.0 ? rec.best_value / *optimum : 1.0;
    const StateVector state = prepare_state(ansatz.layout, ansatz.schedule(rec.best_params));
    rec.optimum_probability = mass_on(state, table, *optimum);
  }
  return rec;
}

ParamVector warm_start_parameters(const Grid& grid, const BitString& w_sites, int layers,
                                  const OptimizerConfig& config, WarmStartMode mode) {
  if (w_sites.size() != grid.num_sites()) throw InvalidArgument("warm start string length does not match the grid");
  if (mode == WarmStartMode::Analytic) {
    const ParamSchedule cat = cat_schedule(grid, w_sites);
    if (cat.layers() > layers) {
      throw InvalidArgument("analytic warm start needs at least " + std::to_string(cat.layers()) + " layers");
    }
    return cat.padded(layers).values();
  }
  const Ansatz ansatz{Layout::of(grid), layers, Parameterization::Opened};
  OptimizerConfig cfg = config;
  const double half = 0.5 * grid.num_sites();
  cfg.target = (1.0 - 1e-3) * half * half;
  cfg.seed = derive_seed(config.seed, seed_stream::kWarmStart);
  return optimize_exact(ansatz, c_quad(w_sites), cfg).best_params;
}

RunRecord warm_start(const Grid& grid, const ProblemGraph& graph, const Assignment& assignment, const BitString& w,
                     int layers, const OptimizerConfig& config, WarmStartMode mode) {
  if (graph.num_vertices() != grid.num_sites() || assignment.size() != grid.num_sites()) {
    throw InvalidArgument("warm_start: graph, assignment and grid sizes differ");
  }
  if (w.size() != graph.num_vertices()) throw InvalidArgument("warm start string length does not match the graph");
  const ParamVector seeded = warm_start_parameters(grid, assignment.to_sites(w), layers, config, mode);

  const Ansatz ansatz{Layout::of(grid), layers, Parameterization::Opened};
  const DiagonalObjective objective = objective_from_graph(graph, assignment);
  RunRecord rec = optimize_exact(ansatz, objective, config, seeded);
  rec.seeded_value = expectation(prepare_state(ansatz.layout, ansatz.schedule(seeded)), objective);
  attach_oracle(rec, graph, ansatz, objective);
  return rec;
}

}  // namespace gridqaoa
