#include "gridqaoa/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gridqaoa/error.hpp"
#include "gridqaoa/simulator.hpp"

namespace gridqaoa {

AnglePair AnglePair::reduced(double gamma, double beta) {
  // gamma / 2 is the per-edge ZZ angle, so gamma has period 2 pi.
  return {2.0 * wrap_angle(0.5 * gamma), wrap_angle(beta)};
}

double f1(const AnglePair& a) {
  const double c = std::cos(a.gamma);
  return 0.5 * std::sin(4.0 * a.beta) * std::sin(a.gamma) * c * c * c;
}

double f2(const AnglePair& a) {
  const double s2b = std::sin(2.0 * a.beta);
  const double sg = std::sin(a.gamma);
  const double c2 = std::cos(a.gamma) * std::cos(a.gamma);
  return -s2b * s2b * sg * sg * c2 * c2 * c2;
}

double f3(const AnglePair& a) { return 0.5 * f2(a); }

double interior_expectation(EdgeClass edge_class, const AnglePair& angles) {
  switch (edge_class) {
    case EdgeClass::Type0: return 0.0;
    case EdgeClass::Type1: return f1(angles);
    case EdgeClass::Type2: return f2(angles);
    case EdgeClass::Type3: return f3(angles);
  }
  return 0.0;
}

double p1_objective_estimate(int num_edges, const TypeCensus& counts, const AnglePair& angles) {
  if (counts.m1 < 0 || counts.m2 < 0 || counts.m3 < 0) throw InvalidArgument("edge counts must be nonnegative");
  if (num_edges < counts.m1 + counts.m2 + counts.m3) throw InvalidArgument("edge counts exceed the edge total");
  return 0.5 * num_edges + counts.m1 * f1(angles) + counts.m2 * f2(angles) + counts.m3 * f3(angles);
}

namespace {

double bracket(double m1, double m_prime) {
  return std::sqrt(m1 * m1 * kLambda + m_prime * m_prime * kLambda * kLambda) - m_prime * kLambda;
}

}  // namespace

OptimalAngles optimal_angles(const TypeCensus& counts) {
  if (counts.m1 < 0 || counts.m2 < 0 || counts.m3 < 0) throw InvalidArgument("edge counts must be nonnegative");
  if (counts.m1 == 0 && counts.m2 == 0 && counts.m3 == 0) throw InvalidArgument("edge counts are all zero");
  const double m_prime = counts.m_prime();
  OptimalAngles out;
  out.angles.gamma = std::numbers::pi / 6.0;
  // atan2 of nonnegative arguments lies in [0, pi/2], so beta* is in [0, pi/8].
  out.angles.beta = 0.25 * std::atan2(static_cast<double>(counts.m1), m_prime * std::sqrt(kLambda));
  out.contribution = 0.5 * bracket(counts.m1, m_prime);
  return out;
}

double ratio_lower_bound(double num_edges, double m1, double m_prime) {
  if (num_edges <= 0.0) throw InvalidArgument("edge count must be positive");
  if (m1 < 0.0 || m_prime < 0.0) throw InvalidArgument("m1 and m' must be nonnegative");
  return 0.5 + bracket(m1, m_prime) / (2.0 * num_edges);
}

double lightcone_expectation(const Grid& grid, int site_i, int site_j, const AnglePair& angles) {
  if (!grid.contains(site_i) || !grid.contains(site_j)) throw InvalidArgument("lightcone: site out of range");
  if (site_i == site_j) throw InvalidArgument("lightcone: sites must differ");

  std::vector<int> sites{site_i, site_j};
  for (int s : {site_i, site_j}) {
    for (int nb : grid.neighbors(s)) sites.push_back(nb);
  }
  std::sort(sites.begin(), sites.end());
  sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
  const auto local = [&sites](int s) {
    return static_cast<int>(std::lower_bound(sites.begin(), sites.end(), s) - sites.begin());
  };

  Layout layout;
  layout.num_qubits = static_cast<int>(sites.size());
  for (const Edge& e : grid.edges()) {
    if (e.u == site_i || e.v == site_i || e.u == site_j || e.v == site_j) {
      layout.couplings.push_back({local(e.u), local(e.v)});
    }
  }
  const StateVector state = prepare_state(layout, two_angle_schedule(layout, angles.gamma, angles.beta));
  return -0.5 * zz_correlation(state, local(site_i), local(site_j));
}

}  // namespace gridqaoa
