#include "gridqaoa/io.hpp"

#include <bit>
#include <cstring>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "gridqaoa/error.hpp"

namespace gridqaoa::io {

namespace {

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string(what) + ": " + e.what());
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

json graph_to_json(const ProblemGraph& graph) {
  json edges = json::array();
  for (const Edge& e : graph.edges()) edges.push_back({e.u, e.v});
  return {{"n", graph.num_vertices()}, {"edges", edges}};
}

ProblemGraph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument("graph: each edge must be a pair");
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
    return ProblemGraph(j.at("n").get<int>(), std::move(edges));
  });
}

json grid_to_json(const Grid& grid) { return {{"rows", grid.rows()}, {"cols", grid.cols()}}; }

Grid grid_from_json(const json& j) {
  return guarded("grid", [&] { return Grid(j.at("rows").get<int>(), j.at("cols").get<int>()); });
}

json assignment_to_json(const Assignment& assignment) { return assignment.sites(); }

Assignment assignment_from_json(const json& j) {
  return guarded("assignment", [&] { return Assignment(j.get<std::vector<int>>()); });
}

json census_to_json(const TypeCensus& c) { return {{"m0", c.m0}, {"m1", c.m1}, {"m2", c.m2}, {"m3", c.m3}}; }

json schedule_to_json(const ParamSchedule& schedule) {
  json beta = json::array();
  json gamma = json::array();
  for (int l = 0; l < schedule.layers(); ++l) {
    const auto b = schedule.betas(l);
    const auto g = schedule.gammas(l);
    beta.push_back(std::vector<double>(b.begin(), b.end()));
    gamma.push_back(std::vector<double>(g.begin(), g.end()));
  }
  return {{"p", schedule.layers()}, {"beta", beta}, {"gamma", gamma}};
}

ParamSchedule schedule_from_json(const json& j) {
  return guarded("schedule", [&] {
    const int p = j.at("p").get<int>();
    const auto beta = j.at("beta").get<std::vector<std::vector<double>>>();
    const auto gamma = j.at("gamma").get<std::vector<std::vector<double>>>();
    if (p < 0 || static_cast<int>(beta.size()) != p || static_cast<int>(gamma.size()) != p) {
      throw InvalidArgument("schedule: beta and gamma need p layers");
    }
    const int nq = p > 0 ? static_cast<int>(beta.front().size()) : 0;
    const int ne = p > 0 ? static_cast<int>(gamma.front().size()) : 0;
    ParamSchedule out(p, nq, ne);
    for (int l = 0; l < p; ++l) {
      const auto& b = beta[static_cast<std::size_t>(l)];
      const auto& g = gamma[static_cast<std::size_t>(l)];
      if (static_cast<int>(b.size()) != nq || static_cast<int>(g.size()) != ne) {
        throw InvalidArgument("schedule: ragged layers");
      }
      for (int q = 0; q < nq; ++q) out.set_beta(l, q, b[static_cast<std::size_t>(q)]);
      for (int e = 0; e < ne; ++e) out.set_gamma(l, e, g[static_cast<std::size_t>(e)]);
    }
    return out;
  });
}

json run_record_to_json(const RunRecord& r) {
  json out;
  out["best_value"] = r.best_value;
  out["best_params"] = r.best_params;
  out["evaluations"] = r.evaluations;
  out["iterations"] = r.iterations;
  out["stop_reason"] = r.stop_reason;
  out["best_string"] = r.best_string ? json(r.best_string->to_string()) : json(nullptr);
  out["best_string_value"] = r.best_string ? json(r.best_string_value) : json(nullptr);
  out["restart_values"] = r.restart_values;
  out["best_restart"] = r.best_restart;
  out["seeded_value"] = r.seeded_value ? json(*r.seeded_value) : json(nullptr);
  out["optimum"] = r.optimum ? json(*r.optimum) : json(nullptr);
  out["ratio"] = r.ratio ? json(*r.ratio) : json(nullptr);
  out["optimum_probability"] = r.optimum_probability ? json(*r.optimum_probability) : json(nullptr);
  json freq = json::array();
  bool any = false;
  for (const TracePoint& tp : r.trace) {
    freq.push_back(tp.optimum_frequency ? json(*tp.optimum_frequency) : json(nullptr));
    any = any || tp.optimum_frequency.has_value();
  }
  out["optimum_frequency_trace"] = any ? freq : json(nullptr);
  return out;
}

std::string trace_csv(const RunRecord& record) {
  std::string out = "iteration,evals,best_value\n";
  for (const TracePoint& tp : record.trace) {
    out += std::to_string(tp.iteration) + "," + std::to_string(tp.evaluations) + "," + format_double(tp.best_value) + "\n";
  }
  return out;
}

void write_state_dump(const StateVector& state, std::ostream& out) {
  static_assert(std::endian::native == std::endian::little, "state dumps assume a little-endian host");
  const auto amps = state.amplitudes();
  out.write(reinterpret_cast<const char*>(amps.data()), static_cast<std::streamsize>(amps.size() * sizeof(Amplitude)));
}

StateVector read_state_dump(std::istream& in) {
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::size_t count = bytes.size() / sizeof(Amplitude);
  if (count * sizeof(Amplitude) != bytes.size() || count < 2 || !std::has_single_bit(count)) {
    throw InvalidArgument("state dump size is not 2^(n+1) doubles");
  }
  StateVector state(std::countr_zero(count));
  std::memcpy(state.amplitudes().data(), bytes.data(), bytes.size());
  return state;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace gridqaoa::io
