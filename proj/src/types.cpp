#include "gsqg/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gsqg {

std::string to_string(PairMode mode) {
    return mode == PairMode::corotating ? "corotating" : "traveling";
}

PairMode pair_mode_from_string(const std::string& s) {
    if (s == "corotating") return PairMode::corotating;
    if (s == "traveling") return PairMode::traveling;
    throw validation_error("unknown mode '" + s + "' (expected 'corotating' or 'traveling')");
}

void validate_geometry(const PairGeometry& g, PairMode mode) {
    if (!(g.alpha > 0.0 && g.alpha < 2.0))
        throw validation_error("alpha must lie in (0, 2), got " + std::to_string(g.alpha));
    if (!std::isfinite(g.eps) || !(std::abs(g.eps) < 0.5))
        throw validation_error("eps must lie in (-1/2, 1/2), got " + std::to_string(g.eps));
    if (!(g.b1 > 0.0) || !(g.b2 > 0.0))
        throw validation_error("size ratios b1, b2 must be positive");
    // Keeps both patches strictly separated for every |eps| < 1/2.
    if (!(g.d > 2.0 * (g.b1 + g.b2)))
        throw validation_error("need d > 2(b1 + b2), got d = " + std::to_string(g.d));
    if (g.gamma1 == 0.0 || g.gamma2 == 0.0)
        throw validation_error("amplitudes gamma1, gamma2 must be nonzero");
    if (mode == PairMode::corotating && g.gamma1 + g.gamma2 == 0.0)
        throw validation_error("corotating mode needs gamma1 + gamma2 nonzero");
}

double CosineSeries::eval(double x) const {
    double v = 0.0;
    for (int j = modes(); j >= 1; --j) v += a[j - 1] * std::cos(j * x);
    return v;
}

double CosineSeries::deriv(double x) const {
    double v = 0.0;
    for (int j = modes(); j >= 1; --j) v -= a[j - 1] * j * std::sin(j * x);
    return v;
}

double CosineSeries::second_deriv(double x) const {
    double v = 0.0;
    for (int j = modes(); j >= 1; --j) v -= a[j - 1] * j * j * std::cos(j * x);
    return v;
}

double CosineSeries::inf_norm() const {
    double v = 0.0;
    for (double c : a) v = std::max(v, std::abs(c));
    return v;
}

double SineSeries::eval(double x) const {
    double v = 0.0;
    for (int j = modes(); j >= 1; --j) v += a[j - 1] * std::sin(j * x);
    return v;
}

double SineSeries::norm2() const {
    double v = 0.0;
    for (double c : a) v += c * c;
    return std::sqrt(v);
}

CollocationGrid::CollocationGrid(int M_) : M(M_) {
    if (M < 4 || M % 2 != 0)
        throw validation_error("grid size M must be even and at least 4, got " + std::to_string(M));
    x.resize(static_cast<size_t>(M));
    for (int m = 0; m < M; ++m) x[static_cast<size_t>(m)] = 2.0 * std::numbers::pi * m / M;
}

PatchSamples sample_patch(const CosineSeries& p, const CollocationGrid& grid, double s_signed) {
    PatchSamples out;
    const size_t M = grid.x.size();
    out.p.resize(M);
    out.dp.resize(M);
    out.R.resize(M);
    for (size_t m = 0; m < M; ++m) {
        out.p[m] = p.eval(grid.x[m]);
        out.dp[m] = p.deriv(grid.x[m]);
        out.R[m] = 1.0 + s_signed * out.p[m];
        if (!(out.R[m] > 0.0))
            throw degenerate_boundary_error("radius 1 + s*p became non-positive at grid node " +
                                            std::to_string(m));
    }
    return out;
}

std::vector<double> radius_profile(const CosineSeries& p, const PairGeometry& g,
                                   int patch_index, const CollocationGrid& grid) {
    if (patch_index != 1 && patch_index != 2)
        throw validation_error("patch_index must be 1 or 2");
    const double b = patch_index == 1 ? g.b1 : g.b2;
    return sample_patch(p, grid, signed_size_param(g.eps, g.alpha, b)).R;
}

SineProjection project_to_sine(const std::vector<double>& values, int N, double parity_tol) {
    const int M = static_cast<int>(values.size());
    if (M < 4 || M % 2 != 0) throw validation_error("projection grid length must be even, >= 4");
    if (M < 4 * N) throw validation_error("projection needs M >= 4N");
    SineProjection out;
    out.coeffs = SineSeries(N);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 1; j <= N; ++j) {
        double acc = 0.0;
        for (int m = 0; m < M; ++m) acc += values[static_cast<size_t>(m)] * std::sin(j * two_pi * m / M);
        out.coeffs.a[static_cast<size_t>(j - 1)] = 2.0 * acc / M;
    }
    // Even-part mass via Parseval on the half grid: e(m) = (v(m) + v(M-m)) / 2.
    double mean_sq = 0.0, mean = 0.0, alt = 0.0;
    for (int m = 0; m < M; ++m) {
        const double e = 0.5 * (values[static_cast<size_t>(m)] + values[static_cast<size_t>((M - m) % M)]);
        mean_sq += e * e;
        mean += e;
        alt += (m % 2 == 0 ? e : -e);
    }
    mean_sq /= M;
    mean /= M;
    alt /= M;
    const double leak_sq = 2.0 * mean_sq - mean * mean - alt * alt;
    out.parity_leak = std::sqrt(std::max(0.0, leak_sq));
    if (parity_tol >= 0.0 && out.parity_leak > parity_tol)
        throw validation_error("projection parity leak " + std::to_string(out.parity_leak) +
                               " exceeds tolerance; input is not an odd grid function");
    return out;
}

const BranchEntry* SolutionBranch::find(double eps, double atol) const {
    for (const auto& e : entries)
        if (std::abs(e.eps - eps) <= atol) return &e;
    return nullptr;
}

double signed_size_param(double eps, double alpha, double b) {
    return eps * std::pow(std::abs(eps), alpha) * std::pow(b, 1.0 + alpha);
}

} // namespace gsqg
