#pragma once

// Deliberately naive reference implementations used as test oracles. They
// share no code with the library kernels.

#include <complex>
#include <cstdint>
#include <vector>

#include "gridqaoa/instance.hpp"

namespace ref {

using cplx = std::complex<double>;
using State = std::vector<cplx>;

State plus(int n);

// exp(-i beta X) on qubit q via the dense 2x2 matrix.
void rotate_x(State& psi, int q, double beta);

// exp(-i theta G) with G = sum over edges of (1 - z_a z_b) / 2, i.e. a
// phase of exp(-i theta * (number of cut edges)).
void cut_phase(State& psi, const std::vector<gridqaoa::Edge>& edges, double theta);

// exp(+i gamma Z_a Z_b) per edge, each edge with its own angle.
void zz_phases(State& psi, const std::vector<gridqaoa::Edge>& edges, const std::vector<double>& gammas);

// exp(-i beta B) exp(-i gamma G) |+...+>, built straight from the operators.
State two_angle_state(int n, const std::vector<gridqaoa::Edge>& edges, double gamma, double beta);

// Layered opened-up circuit: per layer all ZZ phases then all X rotations.
State layered_state(int n, const std::vector<gridqaoa::Edge>& edges, const std::vector<std::vector<double>>& betas,
                    const std::vector<std::vector<double>>& gammas);

// <Z_a Z_b>.
double zz(const State& psi, int a, int b);

// Cut size of basis index z on the given edges.
int cut(std::uint64_t z, const std::vector<gridqaoa::Edge>& edges);

// sum_z |psi_z|^2 cut(z).
double expected_cut(const State& psi, const std::vector<gridqaoa::Edge>& edges);

double overlap2(const State& a, const State& b);

}  // namespace ref
