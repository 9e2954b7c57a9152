#include "gsqg/solver.hpp"

#include "gsqg/diagnostics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace gsqg {

namespace {

double stacked_norm(const std::vector<double>& v) {
    double acc = 0.0;
    for (double c : v) acc += c * c;
    return std::sqrt(acc);
}

std::vector<double> residual_vector(const PairGeometry& geom, const SolveState& st,
                                    const Workspace& ws) {
    return assemble(geom, st, ws).stacked();
}

struct LuState {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;
    double condition_estimate = 0.0;
};

LuState factor(const Eigen::MatrixXd& J) {
    LuState s;
    s.lu.compute(J);
    const Eigen::VectorXd diag = s.lu.matrixLU().diagonal().cwiseAbs();
    const double dmax = diag.maxCoeff();
    const double dmin = diag.minCoeff();
    if (!(dmin > 0.0) || !std::isfinite(dmax))
        throw solve_error("singular Jacobian (zero pivot)", {}, std::numeric_limits<double>::infinity());
    s.condition_estimate = dmax / dmin;
    if (s.condition_estimate > 1e14)
        throw solve_error("numerically singular Jacobian (pivot ratio " +
                              std::to_string(s.condition_estimate) + ")",
                          {}, s.condition_estimate);
    return s;
}

} // namespace

SolveState newton_solve(const PairGeometry& geom, const SolveState& guess, const Workspace& ws,
                        const SolverConfig& cfg, NewtonReport* report) {
    if (guess.p1.modes() != ws.N || guess.p2.modes() != ws.N)
        throw validation_error("newton_solve: guess mode count != workspace N");
    SolveState state = guess;
    std::vector<double> r = residual_vector(geom, state, ws);
    double norm = stacked_norm(r);
    std::vector<double> history{norm};
    std::optional<LuState> lu;
    double cond = 0.0;
    int iters = 0;
    bool want_refresh = true; // no factorization yet

    const FdOptions fd{cfg.h_fd, cfg.fd_scheme, true};
    const int dim = unknown_count(ws.N);

    while (norm > cfg.tol_residual) {
        if (iters >= cfg.max_iter)
            throw solve_error("Newton did not converge in " + std::to_string(cfg.max_iter) +
                                  " iterations (residual " + std::to_string(norm) + ")",
                              history, cond);
        bool fresh = false;
        if (!lu || want_refresh || cfg.refresh_jacobian_each_iter) {
            try {
                lu = factor(fd_jacobian(geom, state, ws, fd));
            } catch (solve_error& e) {
                throw solve_error(std::string(e.what()), history, e.condition_estimate);
            }
            cond = lu->condition_estimate;
            want_refresh = false;
            fresh = true;
        }
        Eigen::VectorXd rv(dim);
        for (int i = 0; i < dim; ++i) rv[i] = r[static_cast<size_t>(i)];
        const Eigen::VectorXd delta = lu->lu.solve(-rv);

        const std::vector<double> u0 = pack_unknowns(state);
        double lambda = 1.0;
        bool accepted = false;
        while (true) {
            std::vector<double> u = u0;
            for (int i = 0; i < dim; ++i) u[static_cast<size_t>(i)] += lambda * delta[i];
            SolveState trial = state;
            unpack_unknowns(u, trial);
            std::vector<double> rt;
            double nt = std::numeric_limits<double>::infinity();
            try {
                rt = residual_vector(geom, trial, ws);
                nt = stacked_norm(rt);
            } catch (const degenerate_boundary_error&) {
                // treat as an increase: shrink the step
            }
            if (nt < norm) {
                state = trial;
                r = std::move(rt);
                // slow contraction with a stale factorization: refresh next time
                if (!fresh && nt > 0.25 * norm) want_refresh = true;
                norm = nt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
            if (lambda < cfg.damping_floor) break;
        }
        ++iters;
        if (!accepted) {
            if (!fresh) { // stale Jacobian may point the wrong way; retry fresh
                want_refresh = true;
                history.push_back(norm);
                continue;
            }
            throw solve_error("line search failed at residual " + std::to_string(norm), history,
                              cond);
        }
        history.push_back(norm);
    }

    if (report) {
        report->iterations = iters;
        report->final_residual = norm;
        report->condition_estimate = cond;
        report->history = history;
    }
    return state;
}

namespace {

struct DirectionResult {
    std::vector<BranchEntry> entries;
    bool complete = true;
    std::string failure_reason;
};

BranchEntry make_entry(const PairGeometry& geom, const SolveState& st, const Workspace& ws,
                       const NewtonReport& rep) {
    BranchEntry e;
    e.eps = geom.eps;
    e.state = st;
    const ResidualPair r = assemble(geom, st, ws);
    e.diag.residual_norm = r.norm2();
    e.diag.newton_iters = rep.iterations;
    e.diag.residual_history = rep.history;
    e.diag.parity_leak = std::max(r.parity_leak1, r.parity_leak2);
    const ConvexityReport cv = convexity_check(geom, st);
    e.diag.min_curvature1 = cv.min_curvature1;
    e.diag.min_curvature2 = cv.min_curvature2;
    return e;
}

// Solve at target eps from a warm start, recursively bisecting the step.
SolveState solve_with_bisection(PairGeometry geom, double eps_from, double eps_to,
                                const SolveState& start, const Workspace& ws,
                                const SolverConfig& cfg, int depth, NewtonReport& rep_out) {
    geom.eps = eps_to;
    try {
        return newton_solve(geom, start, ws, cfg, &rep_out);
    } catch (const solve_error&) {
        if (depth >= cfg.bisect_depth) throw;
        const double mid = 0.5 * (eps_from + eps_to);
        NewtonReport mid_rep;
        const SolveState half =
            solve_with_bisection(geom, eps_from, mid, start, ws, cfg, depth + 1, mid_rep);
        return solve_with_bisection(geom, mid, eps_to, half, ws, cfg, depth + 1, rep_out);
    }
}

DirectionResult walk_direction(const PairGeometry& base, const std::vector<double>& targets,
                               const SolveState& trivial, const Workspace& ws,
                               const SolverConfig& cfg,
                               const std::function<void(const BranchEntry&)>& on_entry) {
    DirectionResult out;
    SolveState current = trivial;
    double eps_prev = 0.0;
    for (double eps : targets) {
        PairGeometry geom = base;
        geom.eps = eps;
        try {
            NewtonReport rep;
            current = solve_with_bisection(geom, eps_prev, eps, current, ws, cfg, 0, rep);
            eps_prev = eps;
            out.entries.push_back(make_entry(geom, current, ws, rep));
            if (on_entry) on_entry(out.entries.back());
        } catch (const solve_error& e) {
            out.complete = false;
            out.failure_reason = "continuation stalled at eps = " + std::to_string(eps) +
                                 " (bisection depth exhausted): " + e.what();
            break;
        } catch (const degenerate_boundary_error& e) {
            out.complete = false;
            out.failure_reason = "degenerate boundary at eps = " + std::to_string(eps) + ": " +
                                 e.what();
            break;
        }
    }
    return out;
}

} // namespace

SolutionBranch continue_branch(PairMode mode, const PairGeometry& base,
                               const std::vector<double>& schedule, const SolverConfig& cfg,
                               const std::function<void(const BranchEntry&)>& on_entry) {
    if (schedule.empty()) throw validation_error("continuation schedule is empty");
    {
        PairGeometry probe = base;
        for (double e : schedule) {
            probe.eps = e;
            validate_geometry(probe, mode);
        }
    }
    if (cfg.N < 2 || cfg.M < 4 * cfg.N)
        throw validation_error("solver needs N >= 2 and M >= 4N");

    Workspace ws(base.alpha, cfg.N, cfg.M);
    SolutionBranch branch;
    branch.mode = mode;
    branch.geometry = base;
    branch.geometry.eps = 0.0;
    branch.N = cfg.N;
    branch.M = cfg.M;
    branch.tol_residual = cfg.tol_residual;
    branch.schedule = schedule;
    branch.complete = true;

    std::vector<double> pos, neg;
    bool has_zero = false;
    for (double e : schedule) {
        if (e > 0.0)
            pos.push_back(e);
        else if (e < 0.0)
            neg.push_back(e);
        else
            has_zero = true;
    }
    if (!has_zero)
        throw validation_error("continuation schedule must contain eps = 0 (branch root)");
    std::sort(pos.begin(), pos.end());
    std::sort(neg.begin(), neg.end(), std::greater<>());

    const SolveState trivial = trivial_state(mode, base, cfg.N);
    {
        PairGeometry g0 = base;
        g0.eps = 0.0;
        branch.entries.push_back(make_entry(g0, trivial, ws, NewtonReport{}));
        if (on_entry) on_entry(branch.entries.back());
    }
    for (const auto* side : {&pos, &neg}) {
        if (side->empty()) continue;
        DirectionResult res = walk_direction(base, *side, trivial, ws, cfg, on_entry);
        for (auto& e : res.entries) branch.entries.push_back(std::move(e));
        if (!res.complete) {
            branch.complete = false;
            if (!branch.failure_reason.empty()) branch.failure_reason += "; ";
            branch.failure_reason += res.failure_reason;
        }
    }
    std::sort(branch.entries.begin(), branch.entries.end(),
              [](const BranchEntry& a, const BranchEntry& b) { return a.eps < b.eps; });
    return branch;
}

} // namespace gsqg
