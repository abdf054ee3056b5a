#pragma once

#include <vector>

#include "gridqaoa/instance.hpp"
#include "gridqaoa/simulator.hpp"

namespace gridqaoa {

struct TreeEdge {
  int parent = 0;
  int child = 0;
  bool correlated = true;  // child's bit of w equals the parent's

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
};

// BFS spanning tree of the grid from its most central site. layers[t]
// holds the tree edges whose child sits at distance t + 1 from the root.
struct CatPlan {
  int root = 0;
  std::vector<std::vector<TreeEdge>> layers;

  int depth() const { return static_cast<int>(layers.size()); }
};

// Largest Manhattan distance from the site to any other site.
int eccentricity(const Grid& grid, int site);

// Root is the minimum-eccentricity site, lowest index on ties; children are
// attached to their first-discovered parent. Correlation flags are all true
// (the plan for w = 0...0).
CatPlan cat_plan(const Grid& grid);
CatPlan cat_plan(const Grid& grid, const BitString& w);

// Schedule preparing (|w> + |w̄>)/sqrt(2): at layer t every tree edge gets
// gamma = pi/4 and its child beta = -pi/4 (correlated) or +pi/4 (flipped);
// all other angles are zero. Depth equals the root eccentricity.
ParamSchedule cat_schedule(const Grid& grid, const BitString& w);

}  // namespace gridqaoa
