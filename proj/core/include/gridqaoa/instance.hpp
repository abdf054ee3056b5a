#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gridqaoa {

// Undirected edge, always stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline constexpr int kMaxBits = 64;

// Fixed-length bit string. Bit i is the i-th vertex (or qubit); bit value 0
// carries spin z_i = +1 and bit value 1 carries z_i = -1. The packed word is
// the little-endian basis index used by the simulator.
class BitString {
 public:
  BitString() = default;
  BitString(int n, std::uint64_t bits);

  // Parses "0110..." where character i is bit i.
  static BitString parse(std::string_view text);

  int size() const { return n_; }
  std::uint64_t bits() const { return bits_; }
  bool test(int i) const { return ((bits_ >> i) & 1U) != 0; }
  int spin(int i) const { return test(i) ? -1 : 1; }
  void set(int i, bool value);
  BitString flipped() const;
  int popcount() const;
  std::string to_string() const;

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  int n_ = 0;
  std::uint64_t bits_ = 0;
};

int hamming_distance(const BitString& a, const BitString& b);

// A simple undirected graph on vertices 0..n-1.
class ProblemGraph {
 public:
  ProblemGraph() = default;
  // Throws InvalidArgument on self-loops, duplicates or out-of-range endpoints.
  ProblemGraph(int n, std::vector<Edge> edges);

  int num_vertices() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int v) const { return adjacency_.at(v); }
  int degree(int v) const { return static_cast<int>(adjacency_.at(v).size()); }
  bool has_edge(int a, int b) const;
  bool is_regular(int degree) const;

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// Rectangular lattice of qubit sites, row-major. Edge order is canonical:
// horizontal edges row by row (left to right), then vertical edges row by
// row (top to bottom). Parameter vectors index gammas in this order.
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_sites() const { return rows_ * cols_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  int site(int row, int col) const { return row * cols_ + col; }
  int row_of(int site) const { return site / cols_; }
  int col_of(int site) const { return site % cols_; }
  bool contains(int site) const { return site >= 0 && site < num_sites(); }
  std::vector<int> neighbors(int site) const;
  int degree(int site) const { return static_cast<int>(neighbors(site).size()); }
  bool is_interior(int site) const;
  // Index of the grid edge joining a and b in canonical order, or -1.
  int edge_index(int a, int b) const;
  int manhattan_distance(int a, int b) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Edge> edges_;
};

Grid make_grid(int rows, int cols);

// rows x cols = n with rows <= cols and rows as large as possible.
Grid squarest_grid(int n);

// Configuration-model sampler with rejection of loops and multi-edges.
ProblemGraph random_regular_graph(int n, int degree, std::uint64_t seed);

// Number of cut edges, sum over edges of (1 - z_i z_j) / 2.
double maxcut(const ProblemGraph& graph, const BitString& z);

struct MaxCutSolution {
  double value = 0.0;
  std::vector<BitString> maximizers;  // sorted, closed under global flip
};

inline constexpr int kMaxBruteForceVertices = 28;

MaxCutSolution brute_force_maxcut(const ProblemGraph& graph);

}  // namespace gridqaoa
