#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gridqaoa/instance.hpp"
#include "gridqaoa/objective.hpp"

namespace gridqaoa {

using Amplitude = std::complex<double>;

inline constexpr int kMaxQubits = 26;

// Dense statevector. Basis index bit q is qubit q (little-endian); bit 0 is
// spin +1.
class StateVector {
 public:
  StateVector() = default;
  // |0...0> on n qubits.
  explicit StateVector(int num_qubits);

  int num_qubits() const { return n_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude operator[](std::size_t index) const { return amps_[index]; }
  Amplitude& operator[](std::size_t index) { return amps_[index]; }

  double norm_squared() const;
  std::vector<double> probabilities() const;

 private:
  int n_ = 0;
  std::vector<Amplitude> amps_;
};

StateVector plus_state(int num_qubits);
StateVector basis_state(const BitString& z);
// (|w> + |w̄>) / sqrt(2).
StateVector cat_state(const BitString& w);

// exp(-i beta X) on one qubit.
void apply_x_rotation(StateVector& state, int qubit, double beta);
// exp(+i gamma Z_a Z_b).
void apply_zz_phase(StateVector& state, int a, int b, double gamma);

// Qubit count plus the pairs that admit ZZ gates. Coupling order fixes the
// gamma order inside a schedule layer.
struct Layout {
  int num_qubits = 0;
  std::vector<Edge> couplings;

  static Layout of(const Grid& grid);
  // Couplings on the problem graph's own edges, qubit v = vertex v.
  static Layout of(const ProblemGraph& graph);
};

// All angles folded into [0, pi); X and ZZ both square to the identity, so
// shifting an angle by pi only changes the global phase.
double wrap_angle(double radians);

// p layers of (one beta per qubit, one gamma per coupling), stored flat in
// (layer, betas, gammas) order.
class ParamSchedule {
 public:
  ParamSchedule() = default;
  ParamSchedule(int layers, int num_qubits, int num_couplings);

  static ParamSchedule from_vector(std::span<const double> values, int layers, int num_qubits, int num_couplings);
  static ParamSchedule zeros(const Layout& layout, int layers);

  int layers() const { return layers_; }
  int num_qubits() const { return num_qubits_; }
  int num_couplings() const { return num_couplings_; }
  int layer_width() const { return num_qubits_ + num_couplings_; }

  double beta(int layer, int qubit) const;
  double gamma(int layer, int coupling) const;
  void set_beta(int layer, int qubit, double radians);
  void set_gamma(int layer, int coupling, double radians);

  std::span<const double> betas(int layer) const;
  std::span<const double> gammas(int layer) const;
  const std::vector<double>& values() const { return values_; }

  // Appends zero layers (identity) up to the given depth.
  ParamSchedule padded(int layers) const;

  friend bool operator==(const ParamSchedule&, const ParamSchedule&) = default;

 private:
  std::size_t offset(int layer) const { return static_cast<std::size_t>(layer) * static_cast<std::size_t>(layer_width()); }

  int layers_ = 0;
  int num_qubits_ = 0;
  int num_couplings_ = 0;
  std::vector<double> values_;
};

// Diagonal layer prod_e exp(+i gamma_e Z_a Z_b) over all couplings.
void apply_zz_layer(StateVector& state, std::span<const Edge> couplings, std::span<const double> gammas);
// prod_q exp(-i beta_q X_q).
void apply_x_layer(StateVector& state, std::span<const double> betas);

// U_S(b_p) U_P(g_p) ... U_S(b_1) U_P(g_1) |s>; each layer applies its ZZ
// gates before its X rotations.
StateVector prepare_state(const Layout& layout, const ParamSchedule& schedule);
StateVector prepare_state(const Grid& grid, const ParamSchedule& schedule);
// Same, reusing the storage of `out`.
void prepare_state_into(StateVector& out, const Layout& layout, const ParamSchedule& schedule);

// Depth-one schedule with the same gamma on every edge and the same beta on
// every qubit. Each ZZ gate gets gamma / 2, so the state equals
// exp(-i beta B) exp(-i gamma G) |s> up to global phase, where
// G = sum over grid edges of (1 - Z_j Z_k) / 2.
ParamSchedule two_angle_schedule(const Grid& grid, double gamma, double beta);
ParamSchedule two_angle_schedule(const Layout& layout, double gamma, double beta);

double expectation(const StateVector& state, std::span<const double> diagonal);
double expectation(const StateVector& state, const DiagonalObjective& objective);
double variance(const StateVector& state, std::span<const double> diagonal);
double variance(const StateVector& state, const DiagonalObjective& objective);
// <Z_a Z_b>.
double zz_correlation(const StateVector& state, int a, int b);

// Born-rule samples; deterministic for a fixed generator state.
std::vector<BitString> measure(const StateVector& state, int shots, std::mt19937_64& rng);
std::vector<BitString> measure(const StateVector& state, int shots, std::uint64_t seed);

// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

}  // namespace gridqaoa
