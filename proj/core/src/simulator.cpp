#include "gridqaoa/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "gridqaoa/error.hpp"

namespace gridqaoa {

namespace {

// Plain complex product; std::complex operator* goes through the
// NaN-recovering library routine and is several times slower.
inline Amplitude mul(Amplitude a, Amplitude b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

void check_qubit(const StateVector& state, int q) {
  if (q < 0 || q >= state.num_qubits()) throw InvalidArgument("qubit index out of range");
}

// Per-layer diagonal tables larger than this fall back to direct products.
constexpr int kMaxKeyBits = 12;

}  // namespace

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (num_qubits < 1) throw InvalidArgument("state needs at least one qubit");
  if (num_qubits > kMaxQubits) throw CapacityError("state vector limited to 26 qubits");
  amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const Amplitude& a : amps_) total += std::norm(a);
  return total;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amps_.size());
  std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Amplitude& a) { return std::norm(a); });
  return p;
}

StateVector plus_state(int num_qubits) {
  StateVector state(num_qubits);
  const double amp = std::pow(2.0, -0.5 * num_qubits);
  std::fill(state.amplitudes().begin(), state.amplitudes().end(), Amplitude{amp, 0.0});
  return state;
}

StateVector basis_state(const BitString& z) {
  StateVector state(z.size());
  state[0] = 0.0;
  state[z.bits()] = 1.0;
  return state;
}

StateVector cat_state(const BitString& w) {
  StateVector state(w.size());
  state[0] = 0.0;
  state[w.bits()] = std::numbers::sqrt2 / 2.0;
  state[w.flipped().bits()] = std::numbers::sqrt2 / 2.0;
  return state;
}

namespace {

// exp(-i beta X) on `qubit` within amplitudes [0, dim) of d (interleaved
// re/im doubles).
void rotate_qubit(double* d, std::size_t dim, int qubit, double c, double s) {
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    double* lo = d + 2 * base;
    double* hi = d + 2 * (base + stride);
    for (std::size_t j = 0; j < 2 * stride; j += 2) {
      const double ar = lo[j];
      const double ai = lo[j + 1];
      const double br = hi[j];
      const double bi = hi[j + 1];
      lo[j] = c * ar + s * bi;
      lo[j + 1] = c * ai - s * br;
      hi[j] = c * br + s * ai;
      hi[j + 1] = c * bi - s * ar;
    }
  }
}

}  // namespace

void apply_x_rotation(StateVector& state, int qubit, double beta) {
  check_qubit(state, qubit);
  // std::complex<double> is layout-compatible with double[2].
  rotate_qubit(reinterpret_cast<double*>(state.amplitudes().data()), state.dimension(), qubit, std::cos(beta),
               std::sin(beta));
}

void apply_zz_phase(StateVector& state, int a, int b, double gamma) {
  check_qubit(state, a);
  check_qubit(state, b);
  if (a == b) throw InvalidArgument("ZZ gate needs two distinct qubits");
  const Amplitude same = std::polar(1.0, gamma);
  const Amplitude differ = std::conj(same);
  auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) {
    amps[z] = mul(amps[z], (((z >> a) ^ (z >> b)) & 1U) ? differ : same);
  }
}

Layout Layout::of(const Grid& grid) { return Layout{grid.num_sites(), grid.edges()}; }

Layout Layout::of(const ProblemGraph& graph) { return Layout{graph.num_vertices(), graph.edges()}; }

double wrap_angle(double radians) {
  if (!std::isfinite(radians)) throw InvalidArgument("angle must be finite");
  double r = std::fmod(radians, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r = 0.0;
  return r;
}

ParamSchedule::ParamSchedule(int layers, int num_qubits, int num_couplings)
    : layers_(layers), num_qubits_(num_qubits), num_couplings_(num_couplings) {
  if (layers < 0 || num_qubits < 0 || num_couplings < 0) throw InvalidArgument("schedule dimensions must be >= 0");
  values_.assign(static_cast<std::size_t>(layers) * static_cast<std::size_t>(layer_width()), 0.0);
}

ParamSchedule ParamSchedule::from_vector(std::span<const double> values, int layers, int num_qubits,
                                         int num_couplings) {
  ParamSchedule out(layers, num_qubits, num_couplings);
  if (values.size() != out.values_.size()) throw InvalidArgument("parameter vector has the wrong length");
  std::transform(values.begin(), values.end(), out.values_.begin(), wrap_angle);
  return out;
}

ParamSchedule ParamSchedule::zeros(const Layout& layout, int layers) {
  return ParamSchedule(layers, layout.num_qubits, static_cast<int>(layout.couplings.size()));
}

double ParamSchedule::beta(int layer, int qubit) const {
  return values_.at(offset(layer) + static_cast<std::size_t>(qubit));
}

double ParamSchedule::gamma(int layer, int coupling) const {
  return values_.at(offset(layer) + static_cast<std::size_t>(num_qubits_ + coupling));
}

void ParamSchedule::set_beta(int layer, int qubit, double radians) {
  if (layer < 0 || layer >= layers_ || qubit < 0 || qubit >= num_qubits_) throw InvalidArgument("beta index out of range");
  values_[offset(layer) + static_cast<std::size_t>(qubit)] = wrap_angle(radians);
}

void ParamSchedule::set_gamma(int layer, int coupling, double radians) {
  if (layer < 0 || layer >= layers_ || coupling < 0 || coupling >= num_couplings_) {
    throw InvalidArgument("gamma index out of range");
  }
  values_[offset(layer) + static_cast<std::size_t>(num_qubits_ + coupling)] = wrap_angle(radians);
}

std::span<const double> ParamSchedule::betas(int layer) const {
  return std::span<const double>(values_).subspan(offset(layer), static_cast<std::size_t>(num_qubits_));
}

std::span<const double> ParamSchedule::gammas(int layer) const {
  return std::span<const double>(values_).subspan(offset(layer) + static_cast<std::size_t>(num_qubits_),
                                                  static_cast<std::size_t>(num_couplings_));
}

ParamSchedule ParamSchedule::padded(int layers) const {
  if (layers < layers_) throw InvalidArgument("cannot pad a schedule to fewer layers");
  ParamSchedule out(layers, num_qubits_, num_couplings_);
  std::copy(values_.begin(), values_.end(), out.values_.begin());
  return out;
}

void apply_zz_layer(StateVector& state, std::span<const Edge> couplings, std::span<const double> gammas) {
  if (couplings.size() != gammas.size()) throw InvalidArgument("one gamma per coupling required");
  const int n = state.num_qubits();

  // Build the diagonal P(z) = prod_e exp(i gamma_e z_a z_b) by adding one
  // qubit at a time. Setting bit q on a string whose higher bits are clear
  // flips every coupling touching q: one with lower endpoint a < q gains
  // exp(-2 i gamma z_a), one with higher endpoint b > q (still spin +1)
  // gains exp(-2 i gamma).
  struct Lower {
    int qubit;
    double gamma;
  };
  std::vector<std::vector<Lower>> lower(static_cast<std::size_t>(n));
  std::vector<double> upper_sum(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  bool any = false;
  for (std::size_t e = 0; e < couplings.size(); ++e) {
    const int a = std::min(couplings[e].u, couplings[e].v);
    const int b = std::max(couplings[e].u, couplings[e].v);
    if (a < 0 || b >= n || a == b) throw InvalidArgument("coupling out of range");
    if (gammas[e] == 0.0) continue;
    lower[static_cast<std::size_t>(b)].push_back({a, gammas[e]});
    upper_sum[static_cast<std::size_t>(a)] += gammas[e];
    total += gammas[e];
    any = true;
  }
  if (!any) return;

  thread_local std::vector<Amplitude> phase;
  thread_local std::vector<Amplitude> table;
  phase.resize(state.dimension());
  phase[0] = std::polar(1.0, total);
  for (int q = 0; q < n; ++q) {
    const std::size_t half = std::size_t{1} << q;
    const auto& terms = lower[static_cast<std::size_t>(q)];
    const double shift = -2.0 * upper_sum[static_cast<std::size_t>(q)];
    if (terms.empty()) {
      const Amplitude f = std::polar(1.0, shift);
      for (std::size_t k = 0; k < half; ++k) phase[half + k] = mul(phase[k], f);
      continue;
    }
    if (static_cast<int>(terms.size()) <= kMaxKeyBits) {
      const std::size_t keys = std::size_t{1} << terms.size();
      table.assign(keys, Amplitude{1.0, 0.0});
      for (std::size_t key = 0; key < keys; ++key) {
        double angle = shift;
        for (std::size_t t = 0; t < terms.size(); ++t) {
          angle += ((key >> t) & 1U) ? 2.0 * terms[t].gamma : -2.0 * terms[t].gamma;
        }
        table[key] = std::polar(1.0, angle);
      }
      for (std::size_t k = 0; k < half; ++k) {
        std::size_t key = 0;
        for (std::size_t t = 0; t < terms.size(); ++t) key |= ((k >> terms[t].qubit) & 1U) << t;
        phase[half + k] = mul(phase[k], table[key]);
      }
    } else {
      for (std::size_t k = 0; k < half; ++k) {
        double angle = shift;
        for (const Lower& t : terms) angle += ((k >> t.qubit) & 1U) ? 2.0 * t.gamma : -2.0 * t.gamma;
        phase[half + k] = mul(phase[k], std::polar(1.0, angle));
      }
    }
  }
  auto amps = state.amplitudes();
  for (std::size_t z = 0; z < amps.size(); ++z) amps[z] = mul(amps[z], phase[z]);
}

void apply_x_layer(StateVector& state, std::span<const double> betas) {
  if (static_cast<int>(betas.size()) != state.num_qubits()) throw InvalidArgument("one beta per qubit required");
  double* d = reinterpret_cast<double*>(state.amplitudes().data());
  for (int q = 0; q < state.num_qubits(); ++q) {
    const double b = betas[static_cast<std::size_t>(q)];
    if (b != 0.0) rotate_qubit(d, state.dimension(), q, std::cos(b), std::sin(b));
  }
}

void prepare_state_into(StateVector& out, const Layout& layout, const ParamSchedule& schedule) {
  if (schedule.num_qubits() != layout.num_qubits ||
      schedule.num_couplings() != static_cast<int>(layout.couplings.size())) {
    throw InvalidArgument("schedule dimensions do not match the layout");
  }
  if (out.num_qubits() != layout.num_qubits) out = StateVector(layout.num_qubits);
  const double amp = std::pow(2.0, -0.5 * layout.num_qubits);
  std::fill(out.amplitudes().begin(), out.amplitudes().end(), Amplitude{amp, 0.0});
  for (int l = 0; l < schedule.layers(); ++l) {
    apply_zz_layer(out, layout.couplings, schedule.gammas(l));
    apply_x_layer(out, schedule.betas(l));
  }
}

StateVector prepare_state(const Layout& layout, const ParamSchedule& schedule) {
  StateVector out(layout.num_qubits);
  prepare_state_into(out, layout, schedule);
  return out;
}

StateVector prepare_state(const Grid& grid, const ParamSchedule& schedule) {
  return prepare_state(Layout::of(grid), schedule);
}

ParamSchedule two_angle_schedule(const Layout& layout, double gamma, double beta) {
  ParamSchedule schedule = ParamSchedule::zeros(layout, 1);
  for (int q = 0; q < layout.num_qubits; ++q) schedule.set_beta(0, q, beta);
  for (int e = 0; e < static_cast<int>(layout.couplings.size()); ++e) schedule.set_gamma(0, e, 0.5 * gamma);
  return schedule;
}

ParamSchedule two_angle_schedule(const Grid& grid, double gamma, double beta) {
  return two_angle_schedule(Layout::of(grid), gamma, beta);
}

double expectation(const StateVector& state, std::span<const double> diagonal) {
  if (diagonal.size() != state.dimension()) throw InvalidArgument("objective table size mismatch");
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) total += std::norm(amps[z]) * diagonal[z];
  return total;
}

double expectation(const StateVector& state, const DiagonalObjective& objective) {
  if (objective.num_bits() != state.num_qubits()) throw InvalidArgument("objective width mismatch");
  return expectation(state, objective.tabulate());
}

double variance(const StateVector& state, std::span<const double> diagonal) {
  const double mean = expectation(state, diagonal);
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) {
    const double d = diagonal[z] - mean;
    total += std::norm(amps[z]) * d * d;
  }
  return total;
}

double variance(const StateVector& state, const DiagonalObjective& objective) {
  if (objective.num_bits() != state.num_qubits()) throw InvalidArgument("objective width mismatch");
  return variance(state, objective.tabulate());
}

double zz_correlation(const StateVector& state, int a, int b) {
  check_qubit(state, a);
  check_qubit(state, b);
  const auto amps = state.amplitudes();
  double total = 0.0;
  for (std::size_t z = 0; z < amps.size(); ++z) {
    const double p = std::norm(amps[z]);
    total += (((z >> a) ^ (z >> b)) & 1U) ? -p : p;
  }
  return total;
}

std::vector<BitString> measure(const StateVector& state, int shots, std::mt19937_64& rng) {
  if (shots < 1) throw InvalidArgument("need at least one shot");
  std::vector<double> cumulative = state.probabilities();
  std::partial_sum(cumulative.begin(), cumulative.end(), cumulative.begin());
  const double total = cumulative.back();
  std::uniform_real_distribution<double> uniform(0.0, total);
  std::vector<BitString> out;
  out.reserve(static_cast<std::size_t>(shots));
  for (int s = 0; s < shots; ++s) {
    const double u = uniform(rng);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
      // u rounded up to the total: take the last entry with nonzero mass.
      --it;
      while (it != cumulative.begin() && *(it - 1) == *it) --it;
    }
    out.emplace_back(state.num_qubits(), static_cast<std::uint64_t>(it - cumulative.begin()));
  }
  return out;
}

std::vector<BitString> measure(const StateVector& state, int shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return measure(state, shots, rng);
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) throw InvalidArgument("fidelity: qubit count mismatch");
  Amplitude overlap{0.0, 0.0};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t z = 0; z < x.size(); ++z) overlap += std::conj(x[z]) * y[z];
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

}  // namespace gridqaoa
