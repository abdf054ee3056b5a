#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "gridqaoa/embedding.hpp"
#include "gridqaoa/instance.hpp"
#include "gridqaoa/optimizer.hpp"
#include "gridqaoa/simulator.hpp"

namespace gridqaoa::io {

using nlohmann::json;

// {"n": int, "edges": [[i, j], ...]}
json graph_to_json(const ProblemGraph& graph);
ProblemGraph graph_from_json(const json& j);

// {"rows": int, "cols": int}
json grid_to_json(const Grid& grid);
Grid grid_from_json(const json& j);

// [site_of(0), site_of(1), ...]
json assignment_to_json(const Assignment& assignment);
Assignment assignment_from_json(const json& j);

// {"m0": .., "m1": .., "m2": .., "m3": ..}
json census_to_json(const TypeCensus& census);

// {"p": int, "beta": [[n floats] x p], "gamma": [[|E| floats] x p]}
json schedule_to_json(const ParamSchedule& schedule);
ParamSchedule schedule_from_json(const json& j);

json run_record_to_json(const RunRecord& record);

// "iteration,evals,best_value" header then one row per trace point.
std::string trace_csv(const RunRecord& record);

// Raw dump: 2^(n+1) little-endian doubles, interleaved re/im.
void write_state_dump(const StateVector& state, std::ostream& out);
StateVector read_state_dump(std::istream& in);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gridqaoa::io
