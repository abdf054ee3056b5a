#include "gridqaoa/objective.hpp"

#include <bit>

#include "gridqaoa/error.hpp"
#include "gridqaoa/simulator.hpp"

namespace gridqaoa {

DiagonalObjective::DiagonalObjective(int num_bits, Rule rule, std::string tag)
    : num_bits_(num_bits), rule_(std::move(rule)), tag_(std::move(tag)) {
  if (num_bits < 0 || num_bits > kMaxBits) throw InvalidArgument("objective width out of range");
  if (!rule_) throw InvalidArgument("objective rule is empty");
}

double DiagonalObjective::operator()(const BitString& z) const {
  if (z.size() != num_bits_) throw InvalidArgument("objective: string length mismatch");
  return rule_(z.bits());
}

std::vector<double> DiagonalObjective::tabulate() const {
  if (num_bits_ > kMaxQubits) throw CapacityError("objective too wide to tabulate");
  const std::uint64_t dim = std::uint64_t{1} << num_bits_;
  std::vector<double> table(dim);
  for (std::uint64_t z = 0; z < dim; ++z) table[z] = rule_(z);
  return table;
}

DiagonalObjective objective_from_graph(const ProblemGraph& graph, const Assignment& assignment) {
  if (graph.num_vertices() != assignment.size()) throw InvalidArgument("objective_from_graph: size mismatch");
  std::vector<std::uint64_t> masks;
  masks.reserve(graph.edges().size());
  for (const Edge& e : graph.edges()) {
    masks.push_back((std::uint64_t{1} << assignment.site_of(e.u)) | (std::uint64_t{1} << assignment.site_of(e.v)));
  }
  auto rule = [masks = std::move(masks)](std::uint64_t bits) {
    int cut = 0;
    for (std::uint64_t m : masks) cut += std::popcount(bits & m) & 1;
    return static_cast<double>(cut);
  };
  return DiagonalObjective(graph.num_vertices(), std::move(rule), "maxcut");
}

DiagonalObjective c_quad(const BitString& w) {
  const int n = w.size();
  const std::uint64_t target = w.bits();
  auto rule = [n, target](std::uint64_t bits) {
    const double ham = std::popcount(bits ^ target);
    const double half = 0.5 * n;
    return -ham * (n - ham) + half * half;
  };
  return DiagonalObjective(n, std::move(rule), "cquad");
}

}  // namespace gridqaoa
