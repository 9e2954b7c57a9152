#pragma once

#include "gsqg/quadrature.hpp"
#include "gsqg/types.hpp"

#include <vector>

namespace gsqg {

// Precomputed tables for a fixed (alpha, N, M): collocation grid, kernel
// power helper, product-quadrature weights and trig tables. Building one is
// O(M^2); everything downstream reuses it.
struct Workspace {
    Workspace(double alpha, int N, int M);

    double alpha;
    int N;
    int M;
    CollocationGrid grid;
    KernelPow kpow;
    SingularConvolution conv;
    std::vector<double> sin_tab; // sin(2 pi l / M)
    std::vector<double> cos_tab; // cos(2 pi l / M)
    std::vector<double> s2h;     // 2 sin(pi l / M), chord of the angle difference
    double calpha;

    SineProjection project(const std::vector<double>& grid_values) const;
};

// Grid values (length M) of the functional blocks for patch i in {1, 2}.
// point: frame transport term. self: same-patch interaction. cross: the
// other patch's contribution. The traveling variants share self/cross with
// the corotating ones; only the frame term differs.
struct AssemblyParts {
    std::vector<double> point1, self1, cross1;
    std::vector<double> point2, self2, cross2;
};

AssemblyParts assemble_parts(const PairGeometry& geom, const SolveState& state,
                             const Workspace& ws);

std::vector<double> eval_F_i1(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws);
std::vector<double> eval_F_i2(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws);
std::vector<double> eval_F_i3(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws);
std::vector<double> eval_G_i1(int i, const PairGeometry& geom, const SolveState& state,
                              const Workspace& ws);

// Projected residual of one patch pair.
struct ResidualPair {
    SineSeries r1{0};
    SineSeries r2{0};
    double parity_leak1 = 0.0;
    double parity_leak2 = 0.0;

    double norm2() const;
    // packed residual vector [r1 coefficients, r2 coefficients]
    std::vector<double> stacked() const;
};

ResidualPair assemble_F(const PairGeometry& geom, const SolveState& state, const Workspace& ws);
ResidualPair assemble_G(const PairGeometry& geom, const SolveState& state, const Workspace& ws);
// dispatches on state.mode
ResidualPair assemble(const PairGeometry& geom, const SolveState& state, const Workspace& ws);

// Point-vortex-limit equilibrium values.
double omega_star(const PairGeometry& geom); // corotating angular speed
double xbar_star(const PairGeometry& geom);  // corotating rotation center
double u_star(const PairGeometry& geom);     // traveling speed (gamma2 -> gamma1)

// Trivial state at eps = 0 for the given mode (scalars at their starred
// values, flat patches).
SolveState trivial_state(PairMode mode, const PairGeometry& geom, int N);

} // namespace gsqg
