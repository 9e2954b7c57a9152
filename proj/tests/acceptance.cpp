// Acceptance gate: one binary running every product-level criterion at its
// stated tolerance. Each criterion prints a single [PASS]/[FAIL] line with
// the measured quantity; the exit status is nonzero when any line fails.

#include "gsqg/diagnostics.hpp"
#include "gsqg/linearization.hpp"
#include "gsqg/solver.hpp"
#include "gsqg/special.hpp"

#include "support/oracle.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

using namespace gsqg;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d. %s: %s\n", ok ? "PASS" : "FAIL", idx, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

std::string fmtg(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

PairGeometry asym_geometry(double alpha) {
    PairGeometry g;
    g.alpha = alpha;
    g.gamma1 = 2.0;
    g.gamma2 = 1.0;
    g.d = 10.0;
    return g;
}

PairGeometry sym_geometry(double alpha) {
    PairGeometry g = asym_geometry(alpha);
    g.gamma1 = 1.0;
    g.gamma2 = 1.0;
    return g;
}

// Unequal sizes: with b1 = b2 the discrete mirror symmetry keeps gamma2
// pinned at gamma1 exactly, which would make the amplitude-limit criterion
// vacuous. Size asymmetry is what drives the deviation.
PairGeometry traveling_geometry(double alpha) {
    PairGeometry g = asym_geometry(alpha);
    g.b1 = 1.2;
    g.b2 = 0.8;
    return g;
}

SolutionBranch run_branch(const std::string& label, PairMode mode, const PairGeometry& g,
                          const std::vector<double>& schedule, const SolverConfig& cfg) {
    std::printf("-- branch: %s\n", label.c_str());
    std::fflush(stdout);
    SolutionBranch b = continue_branch(mode, g, schedule, cfg, [](const BranchEntry& e) {
        std::printf("   eps %+.4f  iters %d  residual %.3e\n", e.eps, e.diag.newton_iters,
                    e.diag.residual_norm);
        std::fflush(stdout);
    });
    if (!b.complete) std::printf("   incomplete: %s\n", b.failure_reason.c_str());
    return b;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::fabs(c));
    return m;
}

} // namespace

int main() {
    std::printf("acceptance gate: vortex patch pair solver\n");
    try {
        // ---- 1. multiplier calibration against the quadrature oracle
        {
            double worst = 0.0, worst_alpha = 0.0;
            int worst_j = 0;
            for (double alpha : {1.0, 1.25, 1.5, 1.75}) {
                for (int j = 1; j <= 32; ++j) {
                    const double lib = sigma_j(j, alpha);
                    const double ora = oracle::sigma_quadrature(j, alpha);
                    const double rel = std::fabs(lib - ora) / std::max(std::fabs(ora), 1e-5);
                    if (rel > worst) {
                        worst = rel;
                        worst_alpha = alpha;
                        worst_j = j;
                    }
                }
            }
            std::ostringstream d;
            d << "worst rel " << fmt(worst) << " at alpha " << fmtg(worst_alpha) << ", j "
              << worst_j << " (128 values)";
            report(1, "multiplier calibration", worst <= 1e-6, d.str());
        }

        // ---- 2. the point-vortex equilibria annihilate the residual
        {
            double worst = 0.0;
            for (double alpha : {1.0, 1.5}) {
                const PairGeometry g = asym_geometry(alpha);
                const Workspace ws(alpha, 64, 512);
                const ResidualPair rf =
                    assemble_F(g, trivial_state(PairMode::corotating, g, 64), ws);
                const ResidualPair rg =
                    assemble_G(g, trivial_state(PairMode::traveling, g, 64), ws);
                worst = std::max({worst, max_abs(rf.r1.a), max_abs(rf.r2.a), max_abs(rg.r1.a),
                                  max_abs(rg.r2.a)});
            }
            report(2, "equilibrium exactness", worst < 1e-10,
                   "max sine coefficient " + fmt(worst) + " (both modes, alpha 1.0 and 1.5)");
        }

        // ---- shared branches for criteria 3-7, 9, 10
        SolverConfig cfg;
        cfg.N = 64;
        cfg.M = 512;
        const std::vector<double> sched_co = {0.0,  0.005, -0.005, 0.01, -0.01, 0.02, -0.02, 0.03,
                                              -0.03, 0.04, -0.04,  0.05, 0.06,  0.07, 0.08};
        const std::vector<double> sched_sym = {0.0, 0.01, 0.02, 0.04};
        const std::vector<double> sched_tr = {0.0, 0.005, 0.01, 0.02, 0.03,
                                              0.04, 0.05, 0.06, 0.07, 0.08};

        const SolutionBranch co10 = run_branch("corotating alpha 1.0 (gamma 2:1)",
                                               PairMode::corotating, asym_geometry(1.0),
                                               sched_co, cfg);
        const SolutionBranch co15 = run_branch("corotating alpha 1.5 (gamma 2:1)",
                                               PairMode::corotating, asym_geometry(1.5),
                                               sched_co, cfg);
        const SolutionBranch sym10 = run_branch("corotating alpha 1.0 (symmetric)",
                                                PairMode::corotating, sym_geometry(1.0),
                                                sched_sym, cfg);
        const SolutionBranch tr10 = run_branch("traveling alpha 1.0 (b 1.2/0.8)",
                                               PairMode::traveling, traveling_geometry(1.0),
                                               sched_tr, cfg);
        const SolutionBranch tr15 = run_branch("traveling alpha 1.5 (b 1.2/0.8)",
                                               PairMode::traveling, traveling_geometry(1.5),
                                               sched_tr, cfg);

        // ---- 3. existence at desk scale
        {
            bool ok = true;
            double worst_res = 0.0, min_profile = 1e300;
            std::ostringstream d;
            for (const SolutionBranch* b : {&co10, &co15}) {
                if (!b->complete) {
                    ok = false;
                    d << "branch alpha " << fmtg(b->geometry.alpha) << " incomplete; ";
                }
                if (b->find(0.04) == nullptr) {
                    ok = false;
                    d << "alpha " << fmtg(b->geometry.alpha) << " missed eps 0.04; ";
                }
                for (const BranchEntry& e : b->entries) {
                    worst_res = std::max(worst_res, e.diag.residual_norm);
                    if (e.eps != 0.0)
                        min_profile = std::min(
                            min_profile,
                            std::max(e.state.p1.inf_norm(), e.state.p2.inf_norm()));
                }
            }
            ok = ok && worst_res <= 1e-10 && min_profile > 1e-10;
            d << "worst residual " << fmt(worst_res) << ", smallest nonzero-eps profile norm "
              << fmt(min_profile);
            report(3, "existence at desk scale", ok, d.str());
        }

        // ---- 4. asymptotic scaling of the branch scalars
        {
            bool ok = true;
            std::ostringstream d;
            for (const SolutionBranch* b : {&co10, &co15, &tr10, &tr15}) {
                const double alpha = b->geometry.alpha;
                try {
                    const ScalingFit fit = scaling_fit(*b);
                    const bool in_band = std::fabs(fit.slope - alpha) <= 0.3;
                    ok = ok && in_band;
                    d << (b->mode == PairMode::corotating ? "corotating" : "traveling")
                      << " alpha " << fmtg(alpha) << ": slope " << fmtg(fit.slope) << " (band "
                      << fmtg(alpha - 0.3) << ".." << fmtg(alpha + 0.3) << ", "
                      << fit.points_used << " pts); ";
                } catch (const error& e) {
                    ok = false;
                    d << "fit failed: " << e.what() << "; ";
                }
            }
            report(4, "asymptotic scaling", ok, d.str());
        }

        // ---- 5. reflection symmetry of paired +-eps entries
        {
            bool ok = true;
            std::ostringstream d;
            for (const SolutionBranch* b : {&co10, &co15}) {
                const ReflectionReport r = reflection_check(*b);
                ok = ok && r.pairs_used >= 4 && r.literal_max <= 10.0 * b->tol_residual;
                d << "alpha " << fmtg(b->geometry.alpha) << ": literal " << fmt(r.literal_max)
                  << ", pi-rotation pairing " << fmt(r.conjugated_max) << " ("
                  << r.pairs_used << " pairs); ";
            }
            d << "bound " << fmt(10.0 * cfg.tol_residual);
            report(5, "reflection symmetry", ok, d.str());
        }

        // ---- 6. symmetric reduction
        {
            const SymmetryReport s = symmetric_reduction_check(sym10);
            const bool ok = sym10.complete && s.max_profile_mismatch <= 10.0 * cfg.tol_residual &&
                            s.max_center_offset <= 10.0 * cfg.tol_residual;
            std::ostringstream d;
            d << "profile mismatch " << fmt(s.max_profile_mismatch) << ", center offset "
              << fmt(s.max_center_offset) << " over " << s.entries_used << " entries";
            report(6, "symmetric reduction", ok, d.str());
        }

        // ---- 7. convexity of every accepted patch up to eps = 0.04
        {
            double min_curv = 1e300;
            double at_eps = 0.0, at_alpha = 0.0;
            int states = 0;
            for (const SolutionBranch* b : {&co10, &co15, &sym10, &tr10, &tr15}) {
                for (const BranchEntry& e : b->entries) {
                    if (std::fabs(e.eps) > 0.04 + 1e-12) continue;
                    ++states;
                    const double m = std::min(e.diag.min_curvature1, e.diag.min_curvature2);
                    if (m < min_curv) {
                        min_curv = m;
                        at_eps = e.eps;
                        at_alpha = b->geometry.alpha;
                    }
                }
            }
            std::ostringstream d;
            d << "min curvature " << fmtg(min_curv) << " (eps " << fmtg(at_eps) << ", alpha "
              << fmtg(at_alpha) << ", " << states << " states)";
            report(7, "patch convexity", min_curv > 0.5, d.str());
        }

        // ---- 8. jacobian consistency at the point-vortex limit
        {
            double worst_block = 0.0;
            for (double alpha : {1.0, 1.5}) {
                const PairGeometry g = asym_geometry(alpha);
                const Workspace ws(alpha, 64, 512);
                for (PairMode mode : {PairMode::corotating, PairMode::traveling}) {
                    const SolveState st = trivial_state(mode, g, 64);
                    const Eigen::MatrixXd J = fd_jacobian(g, st, ws);
                    const Eigen::MatrixXd T = trivial_matrix(mode, g, 64);
                    worst_block = std::max(worst_block, (J - T).cwiseAbs().maxCoeff());
                }
            }

            // sampled direction: a third-mode cosine perturbation of patch 1
            // must excite exactly the third dispersion multiplier
            const PairGeometry g = asym_geometry(1.5);
            const Workspace ws(1.5, 64, 512);
            SolveState st = trivial_state(PairMode::corotating, g, 64);
            const double t = 1e-6;
            st.p1.a[2] = t;
            const std::vector<double> vp = eval_F_i2(1, g, st, ws);
            st.p1.a[2] = -t;
            const std::vector<double> vm = eval_F_i2(1, g, st, ws);
            const double s3 = oracle::sigma_quadrature(3, 1.5);
            double worst_dir = 0.0;
            for (int m = 0; m < ws.M; ++m) {
                const double got = (vp[static_cast<size_t>(m)] - vm[static_cast<size_t>(m)]) /
                                   (2.0 * t);
                const double want = 3.0 * s3 * g.gamma1 * std::sin(3.0 * ws.grid.x[static_cast<size_t>(m)]);
                worst_dir = std::max(worst_dir, std::fabs(got - want));
            }
            const bool ok = worst_block <= 1e-6 && worst_dir <= 1e-5;
            report(8, "jacobian consistency", ok,
                   "block diff " + fmt(worst_block) + ", sampled direction diff " +
                       fmt(worst_dir));
        }

        // ---- 9. resolution robustness of an accepted state
        {
            const BranchEntry* e = co15.find(0.04);
            if (e == nullptr) {
                report(9, "resolution robustness", false, "no accepted state at eps 0.04");
            } else {
                PairGeometry g = asym_geometry(1.5);
                g.eps = 0.04;
                SolverConfig fine = cfg;
                fine.N = 128;
                fine.M = 1024;
                fine.max_iter = 15;
                const Workspace ws(1.5, fine.N, fine.M);
                SolveState guess = trivial_state(PairMode::corotating, g, fine.N);
                guess.scalar1 = e->state.scalar1;
                guess.scalar2 = e->state.scalar2;
                for (size_t j = 0; j < e->state.p1.a.size(); ++j) {
                    guess.p1.a[j] = e->state.p1.a[j];
                    guess.p2.a[j] = e->state.p2.a[j];
                }
                NewtonReport rep;
                const SolveState refined = newton_solve(g, guess, ws, fine, &rep);
                const double dscalar = std::fabs(refined.scalar1 - e->state.scalar1);
                double dcoef = 0.0, tail = 0.0;
                for (size_t j = 0; j < 64; ++j) {
                    dcoef = std::max(dcoef, std::fabs(refined.p1.a[j] - e->state.p1.a[j]));
                    dcoef = std::max(dcoef, std::fabs(refined.p2.a[j] - e->state.p2.a[j]));
                }
                for (size_t j = 64; j < 128; ++j)
                    tail = std::max(tail, std::fabs(refined.p1.a[j]));
                const bool ok = dscalar <= 1e-8 && dcoef <= 10.0 * cfg.tol_residual;
                std::ostringstream d;
                d << "N 64->128, M 512->1024: delta Omega " << fmt(dscalar)
                  << ", max retained coefficient delta " << fmt(dcoef) << ", new tail "
                  << fmt(tail) << ", " << rep.iterations << " refinement iters";
                report(9, "resolution robustness", ok, d.str());
            }
        }

        // ---- 10. traveling pairs pin the second amplitude as eps -> 0
        {
            bool ok = true;
            std::ostringstream d;
            for (const SolutionBranch* b : {&tr10, &tr15}) {
                ok = ok && b->complete;
                double prev = -1.0;
                bool monotone = true;
                for (const BranchEntry& e : b->entries) {
                    const double dev = std::fabs(e.state.scalar2 - b->geometry.gamma1);
                    if (e.eps == 0.0 && dev > 1e-14) ok = false;
                    if (dev < prev - 1e-15) monotone = false;
                    prev = dev;
                }
                ok = ok && monotone;
                const double dev_small = std::fabs(b->find(0.005)->state.scalar2 -
                                                   b->geometry.gamma1);
                const double dev_big = std::fabs(b->find(0.08)->state.scalar2 -
                                                 b->geometry.gamma1);
                ok = ok && dev_big > dev_small;
                d << "alpha " << fmtg(b->geometry.alpha) << ": |gamma2 - gamma1| "
                  << fmt(dev_small) << " at eps 0.005 rising to " << fmt(dev_big)
                  << " at 0.08" << (monotone ? " (monotone)" : " (NOT monotone)") << "; ";
            }
            report(10, "traveling amplitude limit", ok, d.str());
        }
    } catch (const std::exception& e) {
        std::printf("[FAIL] fatal: unhandled exception: %s\n", e.what());
        return 1;
    }

    std::printf("acceptance: %d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
