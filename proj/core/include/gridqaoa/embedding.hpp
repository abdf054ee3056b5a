#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gridqaoa/instance.hpp"

namespace gridqaoa {

// Path of 2 to 4 problem vertices; consecutive vertices share a problem edge.
using Segment = std::vector<int>;

struct SegmentCover {
  std::vector<Segment> segments;
  std::vector<int> isolated;         // vertices not covered by any segment
  std::vector<Edge> selected_edges;  // matching edges plus attachment edges
  int selected_edge_count() const { return static_cast<int>(selected_edges.size()); }
};

// Bijection problem vertex -> grid site, with its inverse.
class Assignment {
 public:
  Assignment() = default;
  // site_of[v] is the grid site holding vertex v; must be a permutation.
  explicit Assignment(std::vector<int> site_of);

  static Assignment identity(int n);
  static Assignment random(int n, std::uint64_t seed);

  int size() const { return static_cast<int>(site_of_.size()); }
  int site_of(int vertex) const { return site_of_.at(static_cast<std::size_t>(vertex)); }
  int vertex_at(int site) const { return vertex_at_.at(static_cast<std::size_t>(site)); }
  const std::vector<int>& sites() const { return site_of_; }

  // Problem string -> qubit string and back.
  BitString to_sites(const BitString& vertex_bits) const;
  BitString to_vertices(const BitString& site_bits) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> site_of_;
  std::vector<int> vertex_at_;
};

// Grid separation of two sites. Type1: one edge apart; Type2: one
// horizontal plus one vertical step; Type3: two steps in a straight line;
// Type0: everything else (no shared lightcone at depth one).
enum class EdgeClass : int { Type0 = 0, Type1 = 1, Type2 = 2, Type3 = 3 };

std::string_view to_string(EdgeClass c);

struct TypeCensus {
  int m0 = 0;
  int m1 = 0;
  int m2 = 0;
  int m3 = 0;

  int total() const { return m0 + m1 + m2 + m3; }
  // m' = m2 + m3 / 2, the weight of the negative depth-one terms.
  double m_prime() const { return m2 + 0.5 * m3; }

  friend bool operator==(const TypeCensus&, const TypeCensus&) = default;
};

// Greedy maximal matching (vertices scanned in seeded-random order, partner
// = lowest-index free neighbor), then each unmatched vertex, in index order,
// is attached to its lowest-index matched neighbor not yet used as an
// attachment point. Requires a 3-regular graph.
SegmentCover greedy_segments(const ProblemGraph& graph, std::uint64_t seed);

// Lays segments consecutively along the boustrophedon site order (row 0
// left to right, row 1 right to left, ...), then fills the remaining sites
// with the isolated vertices.
Assignment zigzag_assignment(const std::vector<Segment>& segments, const std::vector<int>& isolated,
                             const Grid& grid);

// Convenience: greedy_segments followed by zigzag_assignment.
Assignment greedy_assignment(const ProblemGraph& graph, const Grid& grid, std::uint64_t seed);

// Boustrophedon visiting order of the grid sites.
std::vector<int> zigzag_order(const Grid& grid);

EdgeClass classify_pair(const Grid& grid, int site_u, int site_v);

TypeCensus type_counts(const Grid& grid, const Assignment& assignment, const ProblemGraph& graph);

}  // namespace gridqaoa
