#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gridqaoa/error.hpp"
#include "gridqaoa/io.hpp"

using namespace gridqaoa;
using nlohmann::json;

namespace {

std::filesystem::path scratch_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gridqaoa_test_io_" + name);
}

}  // namespace

TEST_SUITE("json round trips") {
  TEST_CASE("graph") {
    const ProblemGraph g = random_regular_graph(10, 3, 8);
    const json j = io::graph_to_json(g);
    CHECK(j["n"] == 10);
    CHECK(j["edges"].size() == 15);
    CHECK(io::graph_from_json(j).edges() == g.edges());
    CHECK(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 1], [1, 2]]})")).num_edges() == 2);
  }

  TEST_CASE("grid and assignment") {
    const Grid g = io::grid_from_json(io::grid_to_json(Grid(3, 5)));
    CHECK(g.rows() == 3);
    CHECK(g.cols() == 5);
    const Assignment a = Assignment::random(12, 3);
    CHECK(io::assignment_from_json(io::assignment_to_json(a)).sites() == a.sites());
  }

  TEST_CASE("census") {
    CHECK(io::census_to_json({1, 2, 3, 4}) == json::parse(R"({"m0": 1, "m1": 2, "m2": 3, "m3": 4})"));
  }

  TEST_CASE("schedule keeps every angle bit for bit") {
    ParamSchedule s(2, 4, 4);
    for (int t = 0; t < 2; ++t) {
      for (int q = 0; q < 4; ++q) s.set_beta(t, q, 0.1 * (q + 1) + t / 3.0);
      for (int e = 0; e < 4; ++e) s.set_gamma(t, e, 0.7 / (e + 1) + t);
    }
    const json j = io::schedule_to_json(s);
    CHECK(j["p"] == 2);
    CHECK(j["beta"].size() == 2);
    CHECK(j["gamma"][1].size() == 4);
    CHECK(io::schedule_from_json(json::parse(j.dump())) == s);
  }

  TEST_CASE("run record") {
    RunRecord r;
    r.best_value = 3.5;
    r.best_params = {0.1, 0.2};
    r.evaluations = 12;
    r.stop_reason = "budget";
    r.trace = {{0, 3, 1.0, std::nullopt}, {1, 12, 3.5, std::nullopt}};
    const json j = io::run_record_to_json(r);
    CHECK(j["best_value"] == 3.5);
    CHECK(j["best_string"].is_null());
    CHECK(j["optimum"].is_null());
    CHECK(j["optimum_frequency_trace"].is_null());
    CHECK(j["stop_reason"] == "budget");
    r.trace[1].optimum_frequency = 0.25;
    r.best_string = BitString::parse("0101");
    const json k = io::run_record_to_json(r);
    CHECK(k["optimum_frequency_trace"] == json::parse("[null, 0.25]"));
    CHECK(k["best_string"] == "0101");
  }
}

TEST_SUITE("malformed input") {
  TEST_CASE("bad graphs, grids and schedules raise InvalidArgument") {
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n": 3})")), InvalidArgument);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 1, 2]]})")), InvalidArgument);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n": "x", "edges": []})")), InvalidArgument);
    CHECK_THROWS_AS(io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0, 0]]})")), InvalidArgument);
    CHECK_THROWS_AS(io::grid_from_json(json::parse(R"({"rows": 2})")), InvalidArgument);
    CHECK_THROWS_AS(io::assignment_from_json(json::parse("[0, 0, 1]")), InvalidArgument);
    CHECK_THROWS_AS(io::schedule_from_json(json::parse(R"({"p": 2, "beta": [[0]], "gamma": [[0]]})")),
                    InvalidArgument);
    CHECK_THROWS_AS(io::schedule_from_json(json::parse(R"({"p": 1, "beta": [[0, 1]], "gamma": [[0], [1]]})")),
                    InvalidArgument);
  }

  TEST_CASE("files") {
    const auto bad = scratch_file("bad.json");
    io::write_text_file(bad.string(), "{\"n\": 3,");
    CHECK_THROWS_AS(io::read_json_file(bad.string()), InvalidArgument);
    CHECK_THROWS_AS(io::read_json_file(scratch_file("missing.json").string()), InvalidArgument);
    const auto good = scratch_file("good.json");
    io::write_text_file(good.string(), R"({"rows": 2, "cols": 3})");
    CHECK(io::grid_from_json(io::read_json_file(good.string())).num_sites() == 6);
    std::filesystem::remove(bad);
    std::filesystem::remove(good);
  }

  TEST_CASE("truncated state dump") {
    std::stringstream buf;
    const double d[3] = {1.0, 0.0, 0.0};
    buf.write(reinterpret_cast<const char*>(d), sizeof d);
    CHECK_THROWS_AS(io::read_state_dump(buf), InvalidArgument);
  }
}

TEST_SUITE("trace csv") {
  TEST_CASE("header and full-precision rows") {
    RunRecord r;
    r.trace = {{0, 5, 1.0 / 3.0, std::nullopt}, {1, 9, 2.0, std::nullopt}};
    const std::string csv = io::trace_csv(r);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "iteration,evals,best_value");
    std::getline(in, line);
    CHECK(line.rfind("0,5,", 0) == 0);
    CHECK(std::stod(line.substr(4)) == 1.0 / 3.0);
    std::getline(in, line);
    CHECK(line == "1,9,2");
    CHECK_FALSE(std::getline(in, line));
  }
}
