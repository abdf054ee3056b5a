#pragma once

#include "gridqaoa/embedding.hpp"
#include "gridqaoa/instance.hpp"

namespace gridqaoa {

// Maximum of sin^2(g) cos^6(g), attained at g = pi/6.
inline constexpr double kLambda = 27.0 / 256.0;

// Two-angle depth-one parameters; beta folded into [0, pi), gamma into
// [0, 2 pi). The F formulas are pi-periodic in gamma, border terms are not.
struct AnglePair {
  double gamma = 0.0;
  double beta = 0.0;

  static AnglePair reduced(double gamma, double beta);
};

// Depth-one edge contributions (-1/2)<Z_i Z_j> for endpoints that both have
// four grid neighbors.
double f1(const AnglePair& angles);  // 1/2 sin 4b sin g cos^3 g
double f2(const AnglePair& angles);  // -sin^2 2b sin^2 g cos^6 g
double f3(const AnglePair& angles);  // f2 / 2

double interior_expectation(EdgeClass edge_class, const AnglePair& angles);

// m/2 + m1 F1 + m2 F2 + m3 F3. Only m1..m3 of the census are read.
double p1_objective_estimate(int num_edges, const TypeCensus& counts, const AnglePair& angles);

struct OptimalAngles {
  AnglePair angles;
  double contribution = 0.0;  // max of m1 F1 + m2 F2 + m3 F3
};

// gamma* = pi/6, beta* = atan(m1 / (m' sqrt(lambda))) / 4, with value
// [sqrt(m1^2 lambda + m'^2 lambda^2) - m' lambda] / 2.
OptimalAngles optimal_angles(const TypeCensus& counts);

// 1/2 + [sqrt(m1^2 lambda + m'^2 lambda^2) - m' lambda] / (2m).
double ratio_lower_bound(double num_edges, double m1, double m_prime);

// Exact (-1/2)<Z_i Z_j> in the two-angle grid state, for any pair of sites
// including border ones. Only the ZZ terms touching i or j fail to commute
// with Z_i Z_j, so the state is simulated on {i, j} and their grid
// neighbors (at most ten qubits) with just those couplings.
double lightcone_expectation(const Grid& grid, int site_i, int site_j, const AnglePair& angles);

}  // namespace gridqaoa
