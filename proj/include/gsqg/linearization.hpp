#pragma once

#include "gsqg/functionals.hpp"
#include "gsqg/types.hpp"

#include <Eigen/Dense>

#include <vector>

namespace gsqg {

// Direction in the unknown space: the two scalars plus a cosine perturbation
// of each patch profile.
struct TrivialTangent {
    double beta1 = 0.0;
    double beta2 = 0.0;
    CosineSeries h1{0};
    CosineSeries h2{0};
};

// Derivative of the residual at the point-vortex limit (eps = 0, flat
// patches), applied to a tangent. Mode j >= 2 acts diagonally through the
// dispersion multipliers (+ j sigma_j gamma_i on each patch); mode 1 couples
// only to the scalars through an explicit 2x2 block; the a_1 directions are
// neutral (sigma_1 = 0).
ResidualPair trivial_apply(PairMode mode, const PairGeometry& geom, const TrivialTangent& t,
                           int N);

// Inverse of trivial_apply on the complement of the neutral directions:
// returns the tangent whose image has the given sine coefficients, with
// h_i a_1 components set to zero.
TrivialTangent trivial_inverse(PairMode mode, const PairGeometry& geom, const SineSeries& y1,
                               const SineSeries& y2);

// Unknown vector layout: [scalar1, scalar2, a^1_2..a^1_N, a^2_2..a^2_N]
// (first cosine coefficients pinned to zero, scalars carry mode 1).
int unknown_count(int N);
std::vector<double> pack_unknowns(const SolveState& state);
void unpack_unknowns(const std::vector<double>& u, SolveState& state);

enum class FdScheme { forward, central };

struct FdOptions {
    double h = 1e-6; // relative step
    FdScheme scheme = FdScheme::central;
    bool analytic_scalar_columns = true; // the residual is exactly linear in each scalar
};

// Finite-difference Jacobian of the stacked residual with respect to the
// packed unknowns. Reuses the unperturbed same-patch interaction of the
// patch that a probed coefficient does not touch.
Eigen::MatrixXd fd_jacobian(const PairGeometry& geom, const SolveState& state,
                            const Workspace& ws, const FdOptions& opt = {});

// Matrix of trivial_apply in the packed unknown layout (for comparisons).
Eigen::MatrixXd trivial_matrix(PairMode mode, const PairGeometry& geom, int N);

} // namespace gsqg
