#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "gridqaoa/analytic.hpp"
#include "gridqaoa/catstate.hpp"
#include "gridqaoa/embedding.hpp"
#include "gridqaoa/error.hpp"
#include "gridqaoa/instance.hpp"
#include "gridqaoa/io.hpp"
#include "gridqaoa/optimizer.hpp"
#include "gridqaoa/simulator.hpp"
#include "gridqaoa/verify.hpp"

namespace gridqaoa::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kConfigKeys = {
    "grid",    "graph",      "assignment",      "p",          "mode",
    "R",       "restarts",   "seed",            "ansatz",     "parameterization",
    "warm_start", "max_evaluations", "value_tolerance", "step_tolerance", "final_shots",
    "objective", "w"};

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw InvalidArgument(std::string("config key '") + key + "' has the wrong type");
  }
}

std::string one_of(const json& j, const char* key, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string v = get_or<std::string>(j, key, fallback);
  for (const char* a : allowed) {
    if (v == a) return v;
  }
  throw InvalidArgument(std::string("config key '") + key + "' has unsupported value '" + v + "'");
}

json resolve_graph(const json& g, std::uint64_t seed) {
  if (!g.is_object()) throw InvalidArgument("config 'graph' must be an object");
  if (g.contains("random")) {
    const json& r = g["random"];
    json out;
    out["random"] = {{"n", get_or<int>(r, "n", 0)},
                     {"degree", get_or<int>(r, "degree", 3)},
                     {"seed", get_or<std::uint64_t>(r, "seed", derive_seed(seed, seed_stream::kGraph))}};
    return out;
  }
  if (g.contains("file")) {
    const std::string path = g["file"].get<std::string>();
    json out = io::graph_to_json(io::graph_from_json(io::read_json_file(path)));
    out["file"] = path;
    return out;
  }
  return io::graph_to_json(io::graph_from_json(g));
}

ProblemGraph build_graph(const json& resolved_graph) {
  if (resolved_graph.contains("random")) {
    const json& r = resolved_graph["random"];
    return random_regular_graph(r["n"].get<int>(), r["degree"].get<int>(), r["seed"].get<std::uint64_t>());
  }
  return io::graph_from_json(resolved_graph);
}

int graph_size(const json& resolved_graph) {
  if (resolved_graph.contains("random")) return resolved_graph["random"]["n"].get<int>();
  return resolved_graph["n"].get<int>();
}

struct Pipeline {
  ProblemGraph graph{1, {}};
  Grid grid{1, 1};
  Assignment assignment;
};

Pipeline build_pipeline(const json& cfg) {
  Pipeline out;
  out.graph = build_graph(cfg["graph"]);
  out.grid = io::grid_from_json(cfg["grid"]);
  if (out.grid.num_sites() != out.graph.num_vertices()) {
    throw InvalidArgument("grid has " + std::to_string(out.grid.num_sites()) + " sites but the graph has " +
                          std::to_string(out.graph.num_vertices()) + " vertices");
  }
  const json& a = cfg["assignment"];
  const std::uint64_t seed = derive_seed(cfg["seed"].get<std::uint64_t>(), seed_stream::kAssignment);
  if (a.is_array()) {
    out.assignment = io::assignment_from_json(a);
  } else if (a == "greedy") {
    out.assignment = greedy_assignment(out.graph, out.grid, seed);
  } else if (a == "random") {
    out.assignment = Assignment::random(out.graph.num_vertices(), seed);
  } else {
    out.assignment = Assignment::identity(out.graph.num_vertices());
  }
  if (out.assignment.size() != out.graph.num_vertices()) throw InvalidArgument("assignment length does not match the graph");
  return out;
}

json census_json(const Grid& grid, const Assignment& assignment, const ProblemGraph& graph) {
  const TypeCensus census = type_counts(grid, assignment, graph);
  json c = io::census_to_json(census);
  c["m_prime"] = census.m_prime();
  return c;
}

json analytic_json(const ProblemGraph& graph, const TypeCensus& census) {
  const OptimalAngles opt = optimal_angles(census);
  const int m = graph.num_edges();
  json out;
  out["gamma"] = opt.angles.gamma;
  out["beta"] = opt.angles.beta;
  out["contribution"] = opt.contribution;
  out["p1_estimate"] = p1_objective_estimate(m, census, opt.angles);
  out["ratio_lower_bound"] = m > 0 ? json(ratio_lower_bound(m, census.m1, census.m_prime())) : json(nullptr);
  return out;
}

OptimizerConfig optimizer_config(const json& cfg, int threads) {
  OptimizerConfig oc;
  oc.max_evaluations = cfg["max_evaluations"].get<int>();
  oc.value_tolerance = cfg["value_tolerance"].get<double>();
  oc.step_tolerance = cfg["step_tolerance"].get<double>();
  oc.final_shots = cfg["final_shots"].get<int>();
  oc.restarts = cfg["restarts"].get<int>();
  oc.seed = cfg["seed"].get<std::uint64_t>();
  oc.threads = threads;
  oc.validate();
  return oc;
}

void write_json(const std::filesystem::path& path, const json& j) { io::write_text_file(path.string(), j.dump(2) + "\n"); }

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitResourceError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitResourceError;
  }
}

json load_config(const std::string& path, const std::optional<std::uint64_t>& seed_override) {
  json raw = io::read_json_file(path);
  if (seed_override) {
    if (!raw.is_object()) throw InvalidArgument("config must be a JSON object");
    raw["seed"] = *seed_override;
  }
  return resolve_config(raw);
}

}  // namespace

json resolve_config(const json& raw) {
  if (!raw.is_object()) throw InvalidArgument("config must be a JSON object");
  for (const auto& [key, value] : raw.items()) {
    if (!kConfigKeys.contains(key)) throw InvalidArgument("unknown config key '" + key + "'");
  }
  if (!raw.contains("graph")) throw InvalidArgument("config needs a 'graph'");

  json cfg;
  cfg["seed"] = get_or<std::uint64_t>(raw, "seed", 0);
  const std::uint64_t seed = cfg["seed"].get<std::uint64_t>();
  cfg["graph"] = resolve_graph(raw["graph"], seed);
  const int n = graph_size(cfg["graph"]);
  if (n < 1) throw InvalidArgument("graph needs at least one vertex");

  cfg["grid"] = raw.contains("grid") ? io::grid_to_json(io::grid_from_json(raw["grid"])) : io::grid_to_json(squarest_grid(n));
  if (raw.contains("assignment") && raw["assignment"].is_array()) {
    cfg["assignment"] = io::assignment_to_json(io::assignment_from_json(raw["assignment"]));
  } else {
    cfg["assignment"] = one_of(raw, "assignment", "greedy", {"greedy", "random", "identity"});
  }
  cfg["p"] = get_or<int>(raw, "p", 1);
  if (cfg["p"].get<int>() < 0) throw InvalidArgument("'p' must be >= 0");
  cfg["mode"] = one_of(raw, "mode", "exact", {"exact", "sampled"});
  cfg["R"] = get_or<int>(raw, "R", 100);
  if (cfg["R"].get<int>() < 1) throw InvalidArgument("'R' must be >= 1");
  cfg["restarts"] = get_or<int>(raw, "restarts", 1);
  cfg["ansatz"] = one_of(raw, "ansatz", "grid", {"grid", "native"});
  cfg["parameterization"] = one_of(raw, "parameterization", "opened", {"opened", "two_angle"});

  const OptimizerConfig defaults;
  cfg["max_evaluations"] = get_or<int>(raw, "max_evaluations", defaults.max_evaluations);
  cfg["value_tolerance"] = get_or<double>(raw, "value_tolerance", defaults.value_tolerance);
  cfg["step_tolerance"] = get_or<double>(raw, "step_tolerance", defaults.step_tolerance);
  cfg["final_shots"] = get_or<int>(raw, "final_shots", defaults.final_shots);
  optimizer_config(cfg, 1);  // validates the optimizer fields

  cfg["warm_start"] = nullptr;
  if (raw.contains("warm_start") && !raw["warm_start"].is_null()) {
    const json& ws = raw["warm_start"];
    if (!ws.is_object() || !ws.contains("w")) throw InvalidArgument("'warm_start' needs a 'w' bit string");
    const BitString w = BitString::parse(ws["w"].get<std::string>());
    if (w.size() != n) throw InvalidArgument("warm start string length does not match the graph");
    cfg["warm_start"] = {{"w", w.to_string()}, {"mode", one_of(ws, "mode", "analytic", {"analytic", "cquad"})}};
  }

  cfg["objective"] = one_of(raw, "objective", "maxcut", {"maxcut", "cquad"});
  cfg["w"] = nullptr;
  if (cfg["objective"] == "cquad") {
    if (!raw.contains("w")) throw InvalidArgument("objective 'cquad' needs 'w'");
    const BitString w = BitString::parse(get_or<std::string>(raw, "w", ""));
    if (w.size() != n) throw InvalidArgument("'w' length does not match the graph");
    cfg["w"] = w.to_string();
    if (cfg["mode"] != "exact" || !cfg["warm_start"].is_null()) {
      throw InvalidArgument("objective 'cquad' needs exact mode without a warm start");
    }
  } else if (raw.contains("w") && !raw["w"].is_null()) {
    throw InvalidArgument("'w' is only used with objective 'cquad'");
  }

  const bool grid_ansatz = cfg["ansatz"] == "grid";
  const bool opened = cfg["parameterization"] == "opened";
  if (cfg["mode"] == "sampled" && !(grid_ansatz && opened)) {
    throw InvalidArgument("sampled mode supports the opened grid ansatz only");
  }
  if (!cfg["warm_start"].is_null() && !(grid_ansatz && opened && cfg["mode"] == "exact")) {
    throw InvalidArgument("warm start needs exact mode with the opened grid ansatz");
  }
  return cfg;
}

SolveOutputs solve(const json& cfg, int threads) {
  const Pipeline pl = build_pipeline(cfg);
  const int p = cfg["p"].get<int>();
  const OptimizerConfig oc = optimizer_config(cfg, threads);
  const bool native = cfg["ansatz"] == "native";
  const Parameterization param =
      cfg["parameterization"] == "two_angle" ? Parameterization::TwoAngle : Parameterization::Opened;
  if (pl.graph.num_vertices() > kMaxQubits) {
    throw CapacityError("simulation limited to " + std::to_string(kMaxQubits) + " qubits");
  }

  const Layout layout = native ? Layout::of(pl.graph) : Layout::of(pl.grid);
  const Ansatz ansatz{layout, p, param};
  const bool cquad = cfg["objective"] == "cquad";

  RunRecord rec;
  if (cquad) {
    // w lives on problem vertices; the native ansatz uses qubit v = vertex v.
    const BitString w = BitString::parse(cfg["w"].get<std::string>());
    rec = optimize_exact(ansatz, c_quad(native ? w : pl.assignment.to_sites(w)), oc);
    const double half = 0.5 * pl.graph.num_vertices();
    rec.optimum = half * half;
    rec.ratio = rec.best_value / (half * half);
  } else if (!cfg["warm_start"].is_null()) {
    const BitString w = BitString::parse(cfg["warm_start"]["w"].get<std::string>());
    const WarmStartMode mode = cfg["warm_start"]["mode"] == "cquad" ? WarmStartMode::CQuad : WarmStartMode::Analytic;
    rec = warm_start(pl.grid, pl.graph, pl.assignment, w, p, oc, mode);
  } else if (cfg["mode"] == "sampled") {
    rec = optimize_sampled(pl.grid, pl.graph, pl.assignment, p, cfg["R"].get<int>(), oc);
  } else if (native) {
    rec = optimize_exact_native(pl.graph, p, oc, param);
  } else {
    rec = optimize_exact(pl.grid, pl.graph, pl.assignment, p, oc, param);
  }

  SolveOutputs out;
  const TypeCensus census = type_counts(pl.grid, pl.assignment, pl.graph);
  json& report = out.report;
  report["config"] = cfg;
  report["instance"] = {{"n", pl.graph.num_vertices()}, {"m", pl.graph.num_edges()}, {"graph", io::graph_to_json(pl.graph)}};
  report["census"] = census_json(pl.grid, pl.assignment, pl.graph);
  report["analytic"] = analytic_json(pl.graph, census);
  report["best_value"] = rec.best_value;
  report["ratio"] = rec.ratio ? json(*rec.ratio) : json(nullptr);
  report["optimum"] = rec.optimum ? json(*rec.optimum) : json(nullptr);
  if (rec.best_string) {
    const BitString vertices = native ? *rec.best_string : pl.assignment.to_vertices(*rec.best_string);
    report["best_string"] = vertices.to_string();
    report["best_string_value"] = cquad ? c_quad(BitString::parse(cfg["w"].get<std::string>()))(vertices)
                                        : maxcut(pl.graph, vertices);
  } else {
    report["best_string"] = nullptr;
    report["best_string_value"] = nullptr;
  }
  json restart_seeds = json::array();
  for (int r = 0; r < oc.restarts; ++r) {
    restart_seeds.push_back(derive_seed(oc.seed, seed_stream::kRestartBase + static_cast<std::uint64_t>(r)));
  }
  report["seeds"] = {{"seed", oc.seed},
                     {"assignment", derive_seed(oc.seed, seed_stream::kAssignment)},
                     {"warm_start", derive_seed(oc.seed, seed_stream::kWarmStart)},
                     {"restarts", restart_seeds}};
  report["run"] = io::run_record_to_json(rec);

  out.trace_csv = io::trace_csv(rec);
  out.assignment = {{"grid", io::grid_to_json(pl.grid)},
                    {"site_of", io::assignment_to_json(pl.assignment)},
                    {"census", report["census"]}};
  out.schedule = io::schedule_to_json(ansatz.schedule(rec.best_params));
  out.schedule["ansatz"] = cfg["ansatz"];
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grid-constrained QAOA MaxCut experiments", "gridqaoa"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  int threads = 1;

  auto* solve_cmd = app.add_subcommand("solve", "Run an experiment and write report.json, trace.csv, assignment.json, schedule.json");
  solve_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required();
  solve_cmd->add_option("--seed", seed, "Override the config seed");
  solve_cmd->add_option("--out", out_dir, "Output directory");
  solve_cmd->add_option("--threads", threads, "Worker threads for restarts")->check(CLI::PositiveNumber);

  std::string suite;
  std::uint64_t verify_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify", "Run an invariant suite");
  verify_cmd->add_option("suite", suite, "formulas | lightcone | embedding | cat | optimizer")->required();
  verify_cmd->add_option("--seed", verify_seed, "Seed for randomized checks");

  std::vector<int> counts;
  auto* bound_cmd = app.add_subcommand("bound", "Optimal depth-one angles and ratio bound for an edge census");
  bound_cmd->add_option("counts", counts, "m m1 m2 m3")->required()->expected(4);

  std::string embed_config;
  std::optional<std::uint64_t> embed_seed;
  std::optional<std::string> embed_out;
  auto* embed_cmd = app.add_subcommand("embed", "Place a problem graph on the grid and print the census");
  embed_cmd->add_option("--config", embed_config, "Experiment config (JSON)")->required();
  embed_cmd->add_option("--seed", embed_seed, "Override the config seed");
  embed_cmd->add_option("--out", embed_out, "Directory for assignment.json");

  int rows = 0;
  int cols = 0;
  std::optional<std::string> w_text;
  std::optional<std::string> cat_out;
  auto* cat_cmd = app.add_subcommand("cat", "Cat-state schedule for a grid and its fidelity");
  cat_cmd->add_option("--rows", rows, "Grid rows")->required();
  cat_cmd->add_option("--cols", cols, "Grid columns")->required();
  cat_cmd->add_option("--w", w_text, "Site bit string (default all zeros)");
  cat_cmd->add_option("--out", cat_out, "Directory for schedule.json");

  std::vector<std::string> argv_storage{"gridqaoa"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_storage) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  if (*solve_cmd) {
    return guarded(err, [&] {
      const json cfg = load_config(config_path, seed);
      const auto t0 = std::chrono::steady_clock::now();
      const SolveOutputs res = solve(cfg, threads);
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      write_json(dir / "report.json", res.report);
      io::write_text_file((dir / "trace.csv").string(), res.trace_csv);
      write_json(dir / "assignment.json", res.assignment);
      write_json(dir / "schedule.json", res.schedule);
      write_json(dir / "timing.json", {{"wall_seconds", wall}});
      out << "best value " << res.report["best_value"].get<double>();
      if (!res.report["ratio"].is_null()) out << ", ratio " << res.report["ratio"].get<double>();
      out << "\nwrote " << (dir / "report.json").string() << "\n";
      err << "wall time " << wall << " s\n";
      return kExitOk;
    });
  }
  if (*verify_cmd) {
    return guarded(err, [&] {
      const SuiteReport report = run_verify_suite(suite, verify_seed);
      for (const CheckResult& c : report.checks) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.detail.empty()) out << ": " << c.detail;
        out << "\n";
      }
      return report.passed() ? kExitOk : kExitTestFailure;
    });
  }
  if (*bound_cmd) {
    return guarded(err, [&] {
      const int m = counts[0];
      if (m <= 0) throw InvalidArgument("m must be positive");
      for (int c : counts) {
        if (c < 0) throw InvalidArgument("edge counts must be nonnegative");
      }
      if (counts[1] + counts[2] + counts[3] > m) throw InvalidArgument("m1 + m2 + m3 exceeds m");
      TypeCensus census{m - counts[1] - counts[2] - counts[3], counts[1], counts[2], counts[3]};
      // All Type0: every angle pair contributes nothing.
      const OptimalAngles opt = census.m_prime() + census.m1 > 0 ? optimal_angles(census) : OptimalAngles{};
      json j;
      j["m"] = m;
      j["m1"] = census.m1;
      j["m2"] = census.m2;
      j["m3"] = census.m3;
      j["m_prime"] = census.m_prime();
      j["gamma"] = opt.angles.gamma;
      j["beta"] = opt.angles.beta;
      j["contribution"] = opt.contribution;
      j["ratio_lower_bound"] = ratio_lower_bound(m, census.m1, census.m_prime());
      out << j.dump(2) << "\n";
      return kExitOk;
    });
  }
  if (*embed_cmd) {
    return guarded(err, [&] {
      const json cfg = load_config(embed_config, embed_seed);
      const Pipeline pl = build_pipeline(cfg);
      json j = {{"grid", io::grid_to_json(pl.grid)},
                {"site_of", io::assignment_to_json(pl.assignment)},
                {"census", census_json(pl.grid, pl.assignment, pl.graph)}};
      if (embed_out) {
        std::filesystem::create_directories(*embed_out);
        write_json(std::filesystem::path(*embed_out) / "assignment.json", j);
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    });
  }
  return guarded(err, [&] {
    const Grid grid(rows, cols);
    const BitString w = w_text ? BitString::parse(*w_text) : BitString(grid.num_sites(), 0);
    if (w.size() != grid.num_sites()) throw InvalidArgument("--w length must equal rows * cols");
    if (grid.num_sites() > kMaxQubits) throw CapacityError("simulation limited to 26 qubits");
    const CatPlan plan = cat_plan(grid, w);
    const ParamSchedule schedule = cat_schedule(grid, w);
    const double fid = fidelity(prepare_state(grid, schedule), cat_state(w));
    json j = {{"grid", io::grid_to_json(grid)},
              {"w", w.to_string()},
              {"root", plan.root},
              {"depth", plan.depth()},
              {"fidelity", fid},
              {"schedule", io::schedule_to_json(schedule)}};
    if (cat_out) {
      std::filesystem::create_directories(*cat_out);
      write_json(std::filesystem::path(*cat_out) / "schedule.json", j["schedule"]);
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  });
}

}  // namespace gridqaoa::cli
