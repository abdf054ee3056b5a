#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gridqaoa/embedding.hpp"
#include "gridqaoa/instance.hpp"

namespace gridqaoa {

// A classical objective evaluated on measured qubit strings. The packed
// string word is the simulator's basis index.
class DiagonalObjective {
 public:
  using Rule = std::function<double(std::uint64_t bits)>;

  DiagonalObjective(int num_bits, Rule rule, std::string tag);

  int num_bits() const { return num_bits_; }
  const std::string& tag() const { return tag_; }

  double evaluate(std::uint64_t bits) const { return rule_(bits); }
  double operator()(const BitString& z) const;

  // Values over all 2^n basis strings, indexed by basis index.
  std::vector<double> tabulate() const;

 private:
  int num_bits_;
  Rule rule_;
  std::string tag_;
};

// MaxCut of the problem graph, read off a qubit string: vertex v's bit sits
// on qubit assignment.site_of(v).
DiagonalObjective objective_from_graph(const ProblemGraph& graph, const Assignment& assignment);

// -Ham(z, w) (n - Ham(z, w)) + (n/2)^2; maximal exactly at w and its flip.
DiagonalObjective c_quad(const BitString& w);

}  // namespace gridqaoa
