#pragma once

#include "gsqg/types.hpp"

#include <functional>

// Independent evaluation routes used by tests only. Nothing here shares code
// with the library paths it checks: special functions go through std::tgamma,
// singular integrals through double-exponential quadrature, and the
// interaction blocks through raw std::pow of the true distances.
namespace oracle {

// Double-exponential (tanh-sinh) quadrature on (a, b). Handles integrable
// algebraic endpoint singularities; the integrand is never evaluated at the
// endpoints themselves.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-13);

// Dispersion multiplier recomputed from its defining singular integrals,
//   c_j = c_alpha [ (1 - alpha/2) S_j + j T_j ],   sigma_j = c_j / j,
//   S_j = (1/2pi) Int sin(jy) sin(y) |2 sin(y/2)|^(-alpha) dy,
//   T_j = (1/2pi) Int (1 - cos(jy)) cos(y) |2 sin(y/2)|^(-alpha) dy.
double sigma_quadrature(int j, double alpha);

// Same-patch interaction of patch i at angle x, evaluated from the raw
// chord-distance power (no split, no difference-quotient helper) with
// tanh-sinh around the kernel singularity. Needs eps != 0.
double self_interaction_raw(int i, const gsqg::PairGeometry& geom,
                            const gsqg::SolveState& state, double x);

// Other-patch interaction of patch i at angle x from the raw interpatch
// distance power; plain periodic trapezoid (the integrand is smooth).
double cross_interaction_raw(int i, const gsqg::PairGeometry& geom,
                             const gsqg::SolveState& state, double x, int quad_points = 4096);

} // namespace oracle
