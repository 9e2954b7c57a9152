#include "gsqg/io.hpp"
#include "gsqg/special.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace {

std::vector<double> parse_schedule(const std::string& text) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string tok = text.substr(pos, next - pos);
        try {
            size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw gsqg::validation_error("cannot parse eps schedule token '" + tok + "'");
        }
        pos = next + 1;
    }
    if (out.empty()) throw gsqg::validation_error("eps schedule override is empty");
    return out;
}

struct SolveOverrides {
    std::string mode, eps, outdir;
    double alpha = 0.0, tol = 0.0;
    double gamma1 = 0.0, gamma2 = 0.0, b1 = 0.0, b2 = 0.0, d = 0.0;
    int N = 0, M = 0;
};

int do_solve(const std::string& config_path, CLI::App* cmd, const SolveOverrides& ovr) {
    gsqg::RunConfig cfg = gsqg::load_run_config(config_path);
    if (cmd->count("--mode")) cfg.mode = gsqg::pair_mode_from_string(ovr.mode);
    if (cmd->count("--alpha")) cfg.geometry.alpha = ovr.alpha;
    if (cmd->count("--eps-schedule")) cfg.eps_schedule = parse_schedule(ovr.eps);
    if (cmd->count("--output-dir")) cfg.output_dir = ovr.outdir;
    if (cmd->count("--gamma1")) cfg.geometry.gamma1 = ovr.gamma1;
    if (cmd->count("--gamma2")) cfg.geometry.gamma2 = ovr.gamma2;
    if (cmd->count("--b1")) cfg.geometry.b1 = ovr.b1;
    if (cmd->count("--b2")) cfg.geometry.b2 = ovr.b2;
    if (cmd->count("--d")) cfg.geometry.d = ovr.d;
    if (cmd->count("--N")) cfg.solver.N = ovr.N;
    if (cmd->count("--M")) cfg.solver.M = ovr.M;
    if (cmd->count("--tol-residual")) cfg.solver.tol_residual = ovr.tol;
    // re-validate after overrides
    {
        gsqg::PairGeometry probe = cfg.geometry;
        for (double e : cfg.eps_schedule) {
            probe.eps = e;
            gsqg::validate_geometry(probe, cfg.mode);
        }
        if (cfg.solver.N < 2 || cfg.solver.M < 4 * cfg.solver.N)
            throw gsqg::validation_error("need N >= 2 and M >= 4N");
    }
    const gsqg::RunResult res = gsqg::run_solve(cfg);
    std::printf("mode=%s alpha=%g entries=%zu complete=%s\n", gsqg::to_string(res.branch.mode).c_str(),
                res.branch.geometry.alpha, res.branch.entries.size(),
                res.branch.complete ? "true" : "false");
    for (const auto& e : res.branch.entries)
        std::printf("  eps=%- 12g scalar1=%.12g scalar2=%.12g residual=%.3e iters=%d\n", e.eps,
                    e.state.scalar1, e.state.scalar2, e.diag.residual_norm, e.diag.newton_iters);
    if (!res.branch.complete)
        std::printf("incomplete: %s\n", res.branch.failure_reason.c_str());
    for (const auto& f : res.files_written) std::printf("wrote %s\n", f.c_str());
    return res.exit_code;
}

int do_check(const std::string& branch_path) {
    const gsqg::CheckResult res = gsqg::run_check(branch_path);
    std::printf("checked %d entries, worst residual %.3e\n", res.entries_checked,
                res.worst_residual);
    if (res.exit_code != 0) std::printf("%s", res.detail.c_str());
    std::printf(res.exit_code == 0 ? "OK\n" : "FAILED\n");
    return res.exit_code;
}

int do_sigma(double alpha, int max_j, const std::string& norm_name) {
    gsqg::SigmaNorm norm = gsqg::SigmaNorm::calibrated;
    if (norm_name == "calibrated")
        norm = gsqg::SigmaNorm::calibrated;
    else if (norm_name == "two_over_pi")
        norm = gsqg::SigmaNorm::two_over_pi;
    else if (norm_name == "raw")
        norm = gsqg::SigmaNorm::raw;
    else
        throw gsqg::validation_error("--norm must be calibrated, two_over_pi or raw");
    const std::vector<double> sig = gsqg::sigma_table(max_j, alpha, norm);
    std::printf("# alpha=%.17g norm=%s\n", alpha, norm_name.c_str());
    for (int j = 1; j <= max_j; ++j) std::printf("%d %.17g\n", j, sig[static_cast<size_t>(j - 1)]);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical construction of co-rotating and traveling vortex patch pairs"};
    app.require_subcommand(1);

    auto* solve = app.add_subcommand("solve", "run continuation over an eps schedule");
    std::string config_path;
    SolveOverrides ovr;
    solve->add_option("--config", config_path, "JSON config file")->required();
    solve->add_option("--mode", ovr.mode, "override: corotating | traveling");
    solve->add_option("--alpha", ovr.alpha, "override: kernel exponent in (0,2)");
    solve->add_option("--eps-schedule", ovr.eps, "override: comma-separated eps values");
    solve->add_option("--output-dir", ovr.outdir, "override: output directory");
    solve->add_option("--gamma1", ovr.gamma1, "override: first amplitude");
    solve->add_option("--gamma2", ovr.gamma2, "override: second amplitude");
    solve->add_option("--b1", ovr.b1, "override: first size ratio");
    solve->add_option("--b2", ovr.b2, "override: second size ratio");
    solve->add_option("--d", ovr.d, "override: center distance");
    solve->add_option("--N", ovr.N, "override: cosine modes per patch");
    solve->add_option("--M", ovr.M, "override: collocation grid size");
    solve->add_option("--tol-residual", ovr.tol, "override: Newton residual tolerance");

    auto* check = app.add_subcommand("check", "re-verify a stored branch file");
    std::string branch_path;
    check->add_option("--branch", branch_path, "branch JSON file")->required();

    auto* sigma = app.add_subcommand("sigma", "print dispersion multipliers");
    double s_alpha = 1.0;
    int s_maxj = 32;
    std::string s_norm = "calibrated";
    sigma->add_option("--alpha", s_alpha, "kernel exponent in (0,2)")->required();
    sigma->add_option("--N,--max-j", s_maxj, "largest mode");
    sigma->add_option("--norm", s_norm, "calibrated | two_over_pi | raw");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) return do_solve(config_path, solve, ovr);
        if (check->parsed()) return do_check(branch_path);
        if (sigma->parsed()) return do_sigma(s_alpha, s_maxj, s_norm);
    } catch (const gsqg::validation_error& e) {
        std::fprintf(stderr, "validation error: %s\n", e.what());
        return 2;
    } catch (const gsqg::solve_error& e) {
        std::fprintf(stderr, "solve error: %s\n", e.what());
        return 4;
    } catch (const gsqg::io_error& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 5;
    } catch (const gsqg::error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 1;
}
