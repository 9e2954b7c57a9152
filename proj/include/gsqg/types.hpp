#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsqg {

// Error taxonomy. Everything user-facing derives from gsqg::error so the CLI
// can map failures to exit codes without string matching.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user input: out-of-range parameter, malformed config, inconsistent sizes.
struct validation_error : error {
    using error::error;
};

// A boundary curve left the admissible class (radius or interpatch distance
// became non-positive somewhere on the grid).
struct degenerate_boundary_error : error {
    using error::error;
};

// Special-function domain failures (gamma poles) and quadrature self-test failures.
struct domain_error : error {
    using error::error;
};
struct quadrature_error : error {
    using error::error;
};

// Newton failure; carries the iteration trail for post-mortem.
struct solve_error : error {
    solve_error(const std::string& msg, std::vector<double> history, double cond)
        : error(msg), residual_history(std::move(history)), condition_estimate(cond) {}
    std::vector<double> residual_history;
    double condition_estimate = 0.0;
};

struct io_error : error {
    using error::error;
};

enum class PairMode { corotating, traveling };

std::string to_string(PairMode mode);
PairMode pair_mode_from_string(const std::string& s);

// Shared parameters of a two-patch configuration. alpha is the kernel
// exponent, d the center distance, gamma_i the vortex amplitudes,
// b_i > 0 the patch size ratios, eps the size parameter (signed).
// Admissible ranges: alpha in (0,2), eps in (-1/2, 1/2), d > 2(b1+b2),
// gamma_i nonzero, and gamma1+gamma2 nonzero in corotating mode.
struct PairGeometry {
    double alpha = 1.0;
    double eps = 0.0;
    double gamma1 = 1.0;
    double gamma2 = 1.0;
    double b1 = 1.0;
    double b2 = 1.0;
    double d = 10.0;
};

// Throws validation_error naming the violated constraint. For traveling mode
// gamma2 is an unknown of the problem; its geometry value is the initial
// guess at eps = 0.
void validate_geometry(const PairGeometry& g, PairMode mode);

// Even cosine polynomial p(x) = sum_{j=1}^{N} a[j-1] cos(j x).
// The j = 1 coefficient is pinned to zero by the solver (center normalization)
// but the container allows any value so linearization probes can use it.
struct CosineSeries {
    explicit CosineSeries(int N = 0) : a(static_cast<size_t>(N), 0.0) {}
    std::vector<double> a;

    int modes() const { return static_cast<int>(a.size()); }
    double eval(double x) const;
    double deriv(double x) const;        // p'(x)
    double second_deriv(double x) const; // p''(x)
    double inf_norm() const;
};

// Odd sine polynomial sum_{j=1}^{N} a[j-1] sin(j x); residual container.
struct SineSeries {
    explicit SineSeries(int N = 0) : a(static_cast<size_t>(N), 0.0) {}
    std::vector<double> a;

    int modes() const { return static_cast<int>(a.size()); }
    double eval(double x) const;
    double norm2() const; // l2 of coefficients
};

// Uniform collocation grid x_m = 2 pi m / M.
struct CollocationGrid {
    explicit CollocationGrid(int M);
    int M;
    std::vector<double> x;
};

// Samples a cosine series and its derivative on a grid.
struct PatchSamples {
    std::vector<double> p, dp, R; // R = 1 + s_signed * p
};
PatchSamples sample_patch(const CosineSeries& p, const CollocationGrid& grid, double s_signed);

// Radius profile R_i(x) = 1 + eps|eps|^alpha b_i^{1+alpha} p(x) on the grid.
// patch_index selects b_1 or b_2.
std::vector<double> radius_profile(const CosineSeries& p, const PairGeometry& g,
                                   int patch_index, const CollocationGrid& grid);

// Projection of grid values onto sine modes j = 1..N, plus the l2 coefficient
// mass of the discarded even (cosine + mean) part. Grid length must be even
// and at least 4N. If the leak exceeds parity_tol the projection throws,
// signalling a parity bug upstream; the default tolerance never throws.
struct SineProjection {
    SineSeries coeffs{0};
    double parity_leak = 0.0;
};
SineProjection project_to_sine(const std::vector<double>& values, int N,
                               double parity_tol = -1.0);

// State of the nonlinear problem at one eps. Corotating: scalar1 = Omega
// (rotation speed), scalar2 = xbar (center of rotation). Traveling:
// scalar1 = U (translation speed), scalar2 = gamma2 (second amplitude).
struct SolveState {
    PairMode mode = PairMode::corotating;
    double scalar1 = 0.0;
    double scalar2 = 0.0;
    CosineSeries p1{0};
    CosineSeries p2{0};
};

struct EntryDiagnostics {
    double residual_norm = 0.0;
    int newton_iters = 0;
    double parity_leak = 0.0;
    double min_curvature1 = 0.0;
    double min_curvature2 = 0.0;
    std::vector<double> residual_history; // per-iteration norms, for the convergence log
};

struct BranchEntry {
    double eps = 0.0;
    SolveState state;
    EntryDiagnostics diag;
};

// One continuation run over an eps schedule.
struct SolutionBranch {
    PairMode mode = PairMode::corotating;
    PairGeometry geometry; // eps field unused; per-entry eps governs
    int N = 0;
    int M = 0;
    double tol_residual = 0.0;
    std::vector<double> schedule;
    std::vector<BranchEntry> entries;
    bool complete = false;
    std::string failure_reason;

    const BranchEntry* find(double eps, double atol = 1e-12) const;
};

// signed size parameter s_i = eps |eps|^alpha b_i^{1+alpha}
double signed_size_param(double eps, double alpha, double b);

} // namespace gsqg
