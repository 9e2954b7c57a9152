#pragma once

#include "gsqg/functionals.hpp"
#include "gsqg/linearization.hpp"
#include "gsqg/types.hpp"

#include <functional>
#include <vector>

namespace gsqg {

struct SolverConfig {
    int N = 64;
    int M = 512;
    double tol_residual = 1e-10;
    int max_iter = 25;
    double damping_floor = 1.0 / 16.0;
    double h_fd = 1e-6;
    FdScheme fd_scheme = FdScheme::forward;
    // With false (default) the Jacobian is reused across iterations and
    // refreshed only on slow contraction; quadratic convergence tests set true.
    bool refresh_jacobian_each_iter = false;
    int bisect_depth = 4;
};

struct NewtonReport {
    int iterations = 0;
    double final_residual = 0.0;
    double condition_estimate = 0.0;
    std::vector<double> history; // residual norm per iteration, starting with the guess
};

// Damped Newton on the packed unknowns. Throws solve_error on singular
// Jacobian, failed line search, or iteration cap; the error carries the
// residual history.
SolveState newton_solve(const PairGeometry& geom, const SolveState& guess, const Workspace& ws,
                        const SolverConfig& cfg, NewtonReport* report = nullptr);

// Continuation over an eps schedule, warm-starting each solve from the
// previous same-sign entry and bisecting the step on failure (intermediate
// solves are not recorded). Entries come back sorted by eps. On a failed
// direction the branch is marked incomplete and carries a failure reason.
SolutionBranch continue_branch(PairMode mode, const PairGeometry& base,
                               const std::vector<double>& schedule, const SolverConfig& cfg,
                               const std::function<void(const BranchEntry&)>& on_entry = {});

} // namespace gsqg
