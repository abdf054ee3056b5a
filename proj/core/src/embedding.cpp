#include "gridqaoa/embedding.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "gridqaoa/error.hpp"

namespace gridqaoa {

Assignment::Assignment(std::vector<int> site_of) : site_of_(std::move(site_of)), vertex_at_(site_of_.size(), -1) {
  const int n = size();
  for (int v = 0; v < n; ++v) {
    const int s = site_of_[static_cast<std::size_t>(v)];
    if (s < 0 || s >= n || vertex_at_[static_cast<std::size_t>(s)] != -1) {
      throw InvalidArgument("assignment is not a permutation");
    }
    vertex_at_[static_cast<std::size_t>(s)] = v;
  }
}

Assignment Assignment::identity(int n) {
  std::vector<int> sites(static_cast<std::size_t>(n));
  std::iota(sites.begin(), sites.end(), 0);
  return Assignment(std::move(sites));
}

Assignment Assignment::random(int n, std::uint64_t seed) {
  std::vector<int> sites(static_cast<std::size_t>(n));
  std::iota(sites.begin(), sites.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(sites.begin(), sites.end(), rng);
  return Assignment(std::move(sites));
}

BitString Assignment::to_sites(const BitString& vertex_bits) const {
  if (vertex_bits.size() != size()) throw InvalidArgument("assignment: string length mismatch");
  BitString out(size(), 0);
  for (int v = 0; v < size(); ++v) out.set(site_of(v), vertex_bits.test(v));
  return out;
}

BitString Assignment::to_vertices(const BitString& site_bits) const {
  if (site_bits.size() != size()) throw InvalidArgument("assignment: string length mismatch");
  BitString out(size(), 0);
  for (int v = 0; v < size(); ++v) out.set(v, site_bits.test(site_of(v)));
  return out;
}

std::string_view to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::Type0: return "type0";
    case EdgeClass::Type1: return "type1";
    case EdgeClass::Type2: return "type2";
    case EdgeClass::Type3: return "type3";
  }
  return "unknown";
}

SegmentCover greedy_segments(const ProblemGraph& graph, std::uint64_t seed) {
  if (!graph.is_regular(3)) throw InvalidArgument("greedy_segments requires a 3-regular graph");
  const int n = graph.num_vertices();
  const auto idx = [](int v) { return static_cast<std::size_t>(v); };

  std::vector<int> order(idx(n));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  // Phase 1: maximal matching.
  std::vector<int> partner(idx(n), -1);
  std::vector<Edge> matching;
  for (int v : order) {
    if (partner[idx(v)] != -1) continue;
    for (int u : graph.neighbors(v)) {
      if (partner[idx(u)] == -1) {
        partner[idx(v)] = u;
        partner[idx(u)] = v;
        matching.push_back({std::min(u, v), std::max(u, v)});
        break;
      }
    }
  }

  // Phase 2: hang each unmatched vertex off a matched endpoint, each
  // endpoint used at most once.
  std::vector<int> attached(idx(n), -1);
  std::vector<bool> covered(idx(n), false);
  for (int v = 0; v < n; ++v) covered[idx(v)] = partner[idx(v)] != -1;
  SegmentCover cover;
  cover.selected_edges = matching;
  for (int v = 0; v < n; ++v) {
    if (partner[idx(v)] != -1) continue;
    for (int u : graph.neighbors(v)) {
      if (partner[idx(u)] != -1 && attached[idx(u)] == -1) {
        attached[idx(u)] = v;
        covered[idx(v)] = true;
        cover.selected_edges.push_back({std::min(u, v), std::max(u, v)});
        break;
      }
    }
  }

  for (const Edge& e : matching) {
    Segment seg;
    if (attached[idx(e.u)] != -1) seg.push_back(attached[idx(e.u)]);
    seg.push_back(e.u);
    seg.push_back(e.v);
    if (attached[idx(e.v)] != -1) seg.push_back(attached[idx(e.v)]);
    cover.segments.push_back(std::move(seg));
  }
  for (int v = 0; v < n; ++v) {
    if (!covered[idx(v)]) cover.isolated.push_back(v);
  }
  return cover;
}

std::vector<int> zigzag_order(const Grid& grid) {
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(grid.num_sites()));
  for (int r = 0; r < grid.rows(); ++r) {
    for (int k = 0; k < grid.cols(); ++k) {
      const int c = (r % 2 == 0) ? k : grid.cols() - 1 - k;
      order.push_back(grid.site(r, c));
    }
  }
  return order;
}

Assignment zigzag_assignment(const std::vector<Segment>& segments, const std::vector<int>& isolated,
                             const Grid& grid) {
  if (grid.cols() < 2) throw InvalidArgument("zigzag placement needs at least two columns");
  const int n = grid.num_sites();
  std::vector<int> sequence;
  sequence.reserve(static_cast<std::size_t>(n));
  for (const Segment& seg : segments) {
    if (seg.size() < 2 || seg.size() > 4) throw InvalidArgument("segments must hold 2 to 4 vertices");
    sequence.insert(sequence.end(), seg.begin(), seg.end());
  }
  sequence.insert(sequence.end(), isolated.begin(), isolated.end());
  if (static_cast<int>(sequence.size()) != n) {
    throw InvalidArgument("zigzag_assignment: vertex count does not match grid size");
  }

  const std::vector<int> order = zigzag_order(grid);
  std::vector<int> site_of(static_cast<std::size_t>(n), -1);
  for (std::size_t pos = 0; pos < sequence.size(); ++pos) {
    const int v = sequence[pos];
    if (v < 0 || v >= n || site_of[static_cast<std::size_t>(v)] != -1) {
      throw InvalidArgument("zigzag_assignment: vertices must be distinct and in range");
    }
    site_of[static_cast<std::size_t>(v)] = order[pos];
  }
  return Assignment(std::move(site_of));
}

Assignment greedy_assignment(const ProblemGraph& graph, const Grid& grid, std::uint64_t seed) {
  const SegmentCover cover = greedy_segments(graph, seed);
  return zigzag_assignment(cover.segments, cover.isolated, grid);
}

EdgeClass classify_pair(const Grid& grid, int site_u, int site_v) {
  if (!grid.contains(site_u) || !grid.contains(site_v)) throw InvalidArgument("classify_pair: site out of range");
  if (site_u == site_v) throw InvalidArgument("classify_pair: sites must differ");
  const int dr = std::abs(grid.row_of(site_u) - grid.row_of(site_v));
  const int dc = std::abs(grid.col_of(site_u) - grid.col_of(site_v));
  if (dr + dc == 1) return EdgeClass::Type1;
  if (dr == 1 && dc == 1) return EdgeClass::Type2;
  if ((dr == 2 && dc == 0) || (dr == 0 && dc == 2)) return EdgeClass::Type3;
  return EdgeClass::Type0;
}

TypeCensus type_counts(const Grid& grid, const Assignment& assignment, const ProblemGraph& graph) {
  if (assignment.size() != grid.num_sites() || graph.num_vertices() != grid.num_sites()) {
    throw InvalidArgument("type_counts: size mismatch");
  }
  TypeCensus census;
  for (const Edge& e : graph.edges()) {
    switch (classify_pair(grid, assignment.site_of(e.u), assignment.site_of(e.v))) {
      case EdgeClass::Type0: ++census.m0; break;
      case EdgeClass::Type1: ++census.m1; break;
      case EdgeClass::Type2: ++census.m2; break;
      case EdgeClass::Type3: ++census.m3; break;
    }
  }
  return census;
}

}  // namespace gridqaoa
