#pragma once

#include "gsqg/types.hpp"

namespace gsqg {

// Curvature of the unit-normalized polar curve R(x) e(x), R = 1 + s p
// (equals +1 identically for the disk p = 0):
//   kappa = (R^2 + 2 R'^2 - R R'') / (R^2 + R'^2)^(3/2)
double signed_curvature(const CosineSeries& p, double s_signed, double x);

// Same curvature sampled on a collocation grid for the selected patch.
std::vector<double> signed_curvature(const CosineSeries& p, const PairGeometry& g,
                                     int patch_index, const CollocationGrid& grid);

struct ConvexityReport {
    double min_curvature1 = 0.0;
    double min_curvature2 = 0.0;
    bool convex = false;
};

// Minimum curvature of both patches over a fine sample of [0, 2pi).
ConvexityReport convexity_check(const PairGeometry& geom, const SolveState& state,
                                int samples = 4096);

struct ScalingFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_log_residual = 0.0; // worst absolute log10 deviation from the fit
    int points_used = 0;
};

// Least-squares fit of log10 |scalar1(eps) - star| against log10 eps over the
// positive-eps entries whose deviation exceeds 100 * tol (below that the
// Newton tolerance contaminates the signal). Requires >= 4 usable points.
ScalingFit scaling_fit(const SolutionBranch& branch);

struct ReflectionReport {
    // max over matched (+eps, -eps) pairs of the coefficient-wise difference
    double literal_max = 0.0;
    // same after conjugating: a_j(-eps) vs -(-1)^j a_j(eps) (profile rotated
    // by pi about its center)
    double conjugated_max = 0.0;
    // scalar differences across the pair (even in eps for true branches)
    double scalar_max = 0.0;
    int pairs_used = 0;
};

ReflectionReport reflection_check(const SolutionBranch& branch);

struct SymmetryReport {
    double max_profile_mismatch = 0.0; // max |a_j(p1) - a_j(p2)|
    double max_center_offset = 0.0;    // max |xbar - d/2| (corotating only)
    int entries_used = 0;
};

// For gamma1 = gamma2, b1 = b2 the two patches must coincide and the
// rotation center must sit at d/2. Throws validation_error when called on an
// asymmetric configuration.
SymmetryReport symmetric_reduction_check(const SolutionBranch& branch);

} // namespace gsqg
