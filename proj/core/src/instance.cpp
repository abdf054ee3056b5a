#include "gridqaoa/instance.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "gridqaoa/error.hpp"

namespace gridqaoa {

BitString::BitString(int n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n < 0 || n > kMaxBits) {
    throw InvalidArgument("bit string length must be in [0, 64]");
  }
  if (n < kMaxBits) {
    bits_ &= (std::uint64_t{1} << n) - 1;
  }
}

BitString BitString::parse(std::string_view text) {
  if (text.size() > static_cast<std::size_t>(kMaxBits)) {
    throw InvalidArgument("bit string longer than 64 characters");
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits |= std::uint64_t{1} << i;
    } else if (text[i] != '0') {
      throw InvalidArgument("bit string may only contain '0' and '1'");
    }
  }
  return BitString(static_cast<int>(text.size()), bits);
}

void BitString::set(int i, bool value) {
  if (i < 0 || i >= n_) throw InvalidArgument("bit index out of range");
  const std::uint64_t mask = std::uint64_t{1} << i;
  bits_ = value ? (bits_ | mask) : (bits_ & ~mask);
}

BitString BitString::flipped() const { return BitString(n_, ~bits_); }

int BitString::popcount() const { return std::popcount(bits_); }

std::string BitString::to_string() const {
  std::string out(static_cast<std::size_t>(n_), '0');
  for (int i = 0; i < n_; ++i) {
    if (test(i)) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

int hamming_distance(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw InvalidArgument("hamming_distance: length mismatch");
  return std::popcount(a.bits() ^ b.bits());
}

ProblemGraph::ProblemGraph(int n, std::vector<Edge> edges) : n_(n), adjacency_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 1) throw InvalidArgument("graph needs at least one vertex");
  std::set<Edge> seen;
  edges_.reserve(edges.size());
  for (Edge e : edges) {
    if (e.u == e.v) throw InvalidArgument("self-loop on vertex " + std::to_string(e.u));
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw InvalidArgument("edge endpoint out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(e).second) {
      throw InvalidArgument("duplicate edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    }
    edges_.push_back(e);
    adjacency_[static_cast<std::size_t>(e.u)].push_back(e.v);
    adjacency_[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool ProblemGraph::has_edge(int a, int b) const {
  if (a < 0 || a >= n_) return false;
  const auto& nbrs = adjacency_[static_cast<std::size_t>(a)];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

bool ProblemGraph::is_regular(int degree) const {
  return std::all_of(adjacency_.begin(), adjacency_.end(),
                     [degree](const auto& nbrs) { return static_cast<int>(nbrs.size()) == degree; });
}

Grid::Grid(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) throw InvalidArgument("grid dimensions must be positive");
  if (rows > kMaxBits || cols > kMaxBits || rows * cols > kMaxBits) {
    throw CapacityError("grid has more than 64 sites");
  }
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c + 1 < cols; ++c) edges_.push_back({site(r, c), site(r, c + 1)});
  }
  for (int r = 0; r + 1 < rows; ++r) {
    for (int c = 0; c < cols; ++c) edges_.push_back({site(r, c), site(r + 1, c)});
  }
}

std::vector<int> Grid::neighbors(int s) const {
  if (!contains(s)) throw InvalidArgument("site out of range");
  const int r = row_of(s);
  const int c = col_of(s);
  std::vector<int> out;
  if (r > 0) out.push_back(site(r - 1, c));
  if (c > 0) out.push_back(site(r, c - 1));
  if (c + 1 < cols_) out.push_back(site(r, c + 1));
  if (r + 1 < rows_) out.push_back(site(r + 1, c));
  return out;
}

bool Grid::is_interior(int s) const {
  const int r = row_of(s);
  const int c = col_of(s);
  return r > 0 && r + 1 < rows_ && c > 0 && c + 1 < cols_;
}

int Grid::edge_index(int a, int b) const {
  if (a > b) std::swap(a, b);
  const auto it = std::find(edges_.begin(), edges_.end(), Edge{a, b});
  return it == edges_.end() ? -1 : static_cast<int>(it - edges_.begin());
}

int Grid::manhattan_distance(int a, int b) const {
  return std::abs(row_of(a) - row_of(b)) + std::abs(col_of(a) - col_of(b));
}

Grid make_grid(int rows, int cols) { return Grid(rows, cols); }

Grid squarest_grid(int n) {
  if (n < 1) throw InvalidArgument("grid needs at least one site");
  int rows = 1;
  for (int r = 1; r * r <= n; ++r) {
    if (n % r == 0) rows = r;
  }
  return Grid(rows, n / rows);
}

ProblemGraph random_regular_graph(int n, int degree, std::uint64_t seed) {
  if (degree < 1) throw InvalidArgument("degree must be positive");
  if (n <= degree) throw InvalidArgument("need n > degree for a simple regular graph");
  if ((static_cast<long long>(n) * degree) % 2 != 0) {
    throw InvalidArgument("n * degree must be even");
  }
  std::mt19937_64 rng(seed);
  std::vector<int> stubs;
  stubs.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(degree));
  for (int v = 0; v < n; ++v) {
    for (int k = 0; k < degree; ++k) stubs.push_back(v);
  }
  constexpr int kMaxAttempts = 1'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::set<Edge> edges;
    bool simple = true;
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      int a = stubs[i];
      int b = stubs[i + 1];
      if (a == b) {
        simple = false;
        break;
      }
      if (a > b) std::swap(a, b);
      if (!edges.insert({a, b}).second) {
        simple = false;
        break;
      }
    }
    if (simple) return ProblemGraph(n, {edges.begin(), edges.end()});
  }
  throw CapacityError("configuration model failed to produce a simple graph");
}

double maxcut(const ProblemGraph& graph, const BitString& z) {
  if (z.size() != graph.num_vertices()) throw InvalidArgument("maxcut: string length mismatch");
  int cut = 0;
  for (const Edge& e : graph.edges()) cut += (z.test(e.u) != z.test(e.v)) ? 1 : 0;
  return cut;
}

MaxCutSolution brute_force_maxcut(const ProblemGraph& graph) {
  const int n = graph.num_vertices();
  if (n > kMaxBruteForceVertices) {
    throw CapacityError("brute_force_maxcut limited to 28 vertices");
  }
  std::vector<std::uint64_t> nbr_mask(static_cast<std::size_t>(n), 0);
  for (const Edge& e : graph.edges()) {
    nbr_mask[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
    nbr_mask[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
  }

  // Gray-code walk over strings with the last bit fixed to 0; the other half
  // follows from flip symmetry.
  std::vector<std::uint64_t> best;
  int best_cut = 0;
  std::uint64_t z = 0;
  int cut = 0;
  best.push_back(0);
  const std::uint64_t steps = std::uint64_t{1} << (n - 1);
  for (std::uint64_t k = 1; k < steps; ++k) {
    const int v = std::countr_zero(k);
    const std::uint64_t same = ((z >> v) & 1U) ? z : ~z;  // neighbors on v's side
    const int agree = std::popcount(same & nbr_mask[static_cast<std::size_t>(v)]);
    cut += 2 * agree - graph.degree(v);
    z ^= std::uint64_t{1} << v;
    if (cut > best_cut) {
      best_cut = cut;
      best.clear();
    }
    if (cut == best_cut) best.push_back(z);
  }

  MaxCutSolution out;
  out.value = best_cut;
  out.maximizers.reserve(best.size() * 2);
  for (std::uint64_t bits : best) {
    out.maximizers.emplace_back(n, bits);
    out.maximizers.push_back(out.maximizers.back().flipped());
  }
  std::sort(out.maximizers.begin(), out.maximizers.end());
  out.maximizers.erase(std::unique(out.maximizers.begin(), out.maximizers.end()), out.maximizers.end());
  return out;
}

}  // namespace gridqaoa
