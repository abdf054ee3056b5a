#include "gridqaoa/catstate.hpp"

#include <algorithm>
#include <numbers>

#include "gridqaoa/error.hpp"

namespace gridqaoa {

int eccentricity(const Grid& grid, int site) {
  if (!grid.contains(site)) throw InvalidArgument("eccentricity: site out of range");
  const int r = grid.row_of(site);
  const int c = grid.col_of(site);
  return std::max(r, grid.rows() - 1 - r) + std::max(c, grid.cols() - 1 - c);
}

CatPlan cat_plan(const Grid& grid) { return cat_plan(grid, BitString(grid.num_sites(), 0)); }

CatPlan cat_plan(const Grid& grid, const BitString& w) {
  if (w.size() != grid.num_sites()) throw InvalidArgument("cat_plan: target length does not match the grid");
  CatPlan plan;
  int best = eccentricity(grid, 0);
  for (int s = 1; s < grid.num_sites(); ++s) {
    if (eccentricity(grid, s) < best) {
      best = eccentricity(grid, s);
      plan.root = s;
    }
  }

  std::vector<int> depth(static_cast<std::size_t>(grid.num_sites()), -1);
  depth[static_cast<std::size_t>(plan.root)] = 0;
  std::vector<int> frontier{plan.root};
  while (!frontier.empty()) {
    std::vector<TreeEdge> layer;
    std::vector<int> next;
    for (int parent : frontier) {
      for (int child : grid.neighbors(parent)) {
        if (depth[static_cast<std::size_t>(child)] != -1) continue;
        depth[static_cast<std::size_t>(child)] = depth[static_cast<std::size_t>(parent)] + 1;
        layer.push_back({parent, child, w.test(parent) == w.test(child)});
        next.push_back(child);
      }
    }
    if (!layer.empty()) plan.layers.push_back(std::move(layer));
    frontier = std::move(next);
  }
  return plan;
}

ParamSchedule cat_schedule(const Grid& grid, const BitString& w) {
  const CatPlan plan = cat_plan(grid, w);
  ParamSchedule schedule(plan.depth(), grid.num_sites(), grid.num_edges());
  constexpr double kQuarter = std::numbers::pi / 4.0;
  for (int t = 0; t < plan.depth(); ++t) {
    for (const TreeEdge& e : plan.layers[static_cast<std::size_t>(t)]) {
      schedule.set_gamma(t, grid.edge_index(e.parent, e.child), kQuarter);
      // exp(-i pi/2 X) is proportional to X, so flipping the child's bit
      // relative to the parent turns -pi/4 into +pi/4.
      schedule.set_beta(t, e.child, e.correlated ? -kQuarter : kQuarter);
    }
  }
  return schedule;
}

}  // namespace gridqaoa
