#include "gsqg/diagnostics.hpp"

#include "gsqg/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace gsqg {

double signed_curvature(const CosineSeries& p, double s_signed, double x) {
    const double R = 1.0 + s_signed * p.eval(x);
    const double R1 = s_signed * p.deriv(x);
    const double R2 = s_signed * p.second_deriv(x);
    const double den = std::pow(R * R + R1 * R1, 1.5);
    if (!(den > 0.0)) throw degenerate_boundary_error("curvature undefined: curve collapsed");
    return (R * R + 2.0 * R1 * R1 - R * R2) / den;
}

std::vector<double> signed_curvature(const CosineSeries& p, const PairGeometry& g,
                                     int patch_index, const CollocationGrid& grid) {
    if (patch_index != 1 && patch_index != 2)
        throw validation_error("patch_index must be 1 or 2");
    const double b = patch_index == 1 ? g.b1 : g.b2;
    const double s = signed_size_param(g.eps, g.alpha, b);
    std::vector<double> out(grid.x.size());
    for (size_t m = 0; m < grid.x.size(); ++m) out[m] = signed_curvature(p, s, grid.x[m]);
    return out;
}

ConvexityReport convexity_check(const PairGeometry& geom, const SolveState& state, int samples) {
    if (samples < 8) throw validation_error("convexity_check needs samples >= 8");
    const double s1 = signed_size_param(geom.eps, geom.alpha, geom.b1);
    const double s2 = signed_size_param(geom.eps, geom.alpha, geom.b2);
    ConvexityReport rep;
    rep.min_curvature1 = std::numeric_limits<double>::infinity();
    rep.min_curvature2 = std::numeric_limits<double>::infinity();
    for (int m = 0; m < samples; ++m) {
        const double x = 2.0 * std::numbers::pi * m / samples;
        rep.min_curvature1 = std::min(rep.min_curvature1, signed_curvature(state.p1, s1, x));
        rep.min_curvature2 = std::min(rep.min_curvature2, signed_curvature(state.p2, s2, x));
    }
    rep.convex = rep.min_curvature1 > 0.0 && rep.min_curvature2 > 0.0;
    return rep;
}

ScalingFit scaling_fit(const SolutionBranch& branch) {
    const double star = branch.mode == PairMode::corotating ? omega_star(branch.geometry)
                                                            : u_star(branch.geometry);
    std::vector<double> lx, ly;
    for (const auto& e : branch.entries) {
        if (!(e.eps > 0.0)) continue;
        const double dev = std::abs(e.state.scalar1 - star);
        if (dev <= 100.0 * branch.tol_residual) continue;
        lx.push_back(std::log10(e.eps));
        ly.push_back(std::log10(dev));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 4)
        throw validation_error("scaling_fit needs at least 4 entries with deviation above "
                               "100*tol; got " + std::to_string(n));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[static_cast<size_t>(i)];
        sy += ly[static_cast<size_t>(i)];
        sxx += lx[static_cast<size_t>(i)] * lx[static_cast<size_t>(i)];
        sxy += lx[static_cast<size_t>(i)] * ly[static_cast<size_t>(i)];
    }
    ScalingFit fit;
    fit.points_used = n;
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-300) throw validation_error("scaling_fit: degenerate abscissas");
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    for (int i = 0; i < n; ++i) {
        const double r = ly[static_cast<size_t>(i)] -
                         (fit.slope * lx[static_cast<size_t>(i)] + fit.intercept);
        fit.max_log_residual = std::max(fit.max_log_residual, std::abs(r));
    }
    return fit;
}

ReflectionReport reflection_check(const SolutionBranch& branch) {
    ReflectionReport rep;
    for (const auto& e : branch.entries) {
        if (!(e.eps > 0.0)) continue;
        const BranchEntry* mirror = branch.find(-e.eps);
        if (!mirror) continue;
        ++rep.pairs_used;
        const int N = e.state.p1.modes();
        for (int j = 1; j <= N; ++j) {
            const size_t idx = static_cast<size_t>(j - 1);
            const double conj = (j % 2 == 0) ? -1.0 : 1.0; // -(-1)^j
            for (int patch = 1; patch <= 2; ++patch) {
                const auto& ap = patch == 1 ? e.state.p1.a : e.state.p2.a;
                const auto& am = patch == 1 ? mirror->state.p1.a : mirror->state.p2.a;
                rep.literal_max = std::max(rep.literal_max, std::abs(am[idx] - ap[idx]));
                rep.conjugated_max =
                    std::max(rep.conjugated_max, std::abs(am[idx] - conj * ap[idx]));
            }
        }
        rep.scalar_max = std::max(rep.scalar_max,
                                  std::abs(mirror->state.scalar1 - e.state.scalar1));
        rep.scalar_max = std::max(rep.scalar_max,
                                  std::abs(mirror->state.scalar2 - e.state.scalar2));
    }
    return rep;
}

SymmetryReport symmetric_reduction_check(const SolutionBranch& branch) {
    const PairGeometry& g = branch.geometry;
    if (g.b1 != g.b2)
        throw validation_error("symmetric_reduction_check requires b1 = b2");
    if (branch.mode == PairMode::corotating && g.gamma1 != g.gamma2)
        throw validation_error("symmetric_reduction_check requires gamma1 = gamma2");
    SymmetryReport rep;
    for (const auto& e : branch.entries) {
        ++rep.entries_used;
        const int N = e.state.p1.modes();
        for (int j = 0; j < N; ++j)
            rep.max_profile_mismatch =
                std::max(rep.max_profile_mismatch,
                         std::abs(e.state.p1.a[static_cast<size_t>(j)] -
                                  e.state.p2.a[static_cast<size_t>(j)]));
        if (branch.mode == PairMode::corotating)
            rep.max_center_offset = std::max(
                rep.max_center_offset, std::abs(e.state.scalar2 - 0.5 * g.d));
    }
    return rep;
}

} // namespace gsqg
