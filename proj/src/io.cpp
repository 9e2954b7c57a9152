#include "gsqg/io.hpp"

#include "gsqg/diagnostics.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace gsqg {

namespace {

using nlohmann::json;

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string num12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string numg(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

const char* const known_keys[] = {
    "mode", "alpha", "eps_schedule", "gamma1", "gamma2", "b1", "b2", "d",
    "N", "M", "tol_residual", "max_iter", "h_fd", "fd_scheme", "bisect_depth",
    "damping_floor", "refresh_jacobian_each_iter", "output_dir",
    "write_branch_json", "write_boundary_csv", "write_diagnostics_json",
    "write_convergence_log"};

double get_number(const json& j, const std::string& key, double fallback, bool* present = nullptr) {
    if (!j.contains(key)) {
        if (present) *present = false;
        return fallback;
    }
    if (present) *present = true;
    if (!j[key].is_number())
        throw validation_error("config key '" + key + "' must be a number");
    return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw validation_error("config key '" + key + "' must be an integer");
    return j[key].get<int>();
}

bool get_bool(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_boolean())
        throw validation_error("config key '" + key + "' must be a boolean");
    return j[key].get<bool>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string())
        throw validation_error("config key '" + key + "' must be a string");
    return j[key].get<std::string>();
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw io_error(std::string("config parse error: ") + e.what());
    }
    if (!j.is_object()) throw validation_error("config root must be a JSON object");
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : known_keys)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known) throw validation_error("unknown config key '" + item.key() + "'");
    }
    RunConfig cfg;
    if (!j.contains("mode")) throw validation_error("config requires key 'mode'");
    cfg.mode = pair_mode_from_string(get_string(j, "mode", ""));
    if (!j.contains("alpha")) throw validation_error("config requires key 'alpha'");
    cfg.geometry.alpha = get_number(j, "alpha", 0.0);
    if (!j.contains("eps_schedule") || !j["eps_schedule"].is_array() ||
        j["eps_schedule"].empty())
        throw validation_error("config requires a non-empty array 'eps_schedule'");
    for (const auto& v : j["eps_schedule"]) {
        if (!v.is_number())
            throw validation_error("config key 'eps_schedule' must contain numbers only");
        cfg.eps_schedule.push_back(v.get<double>());
    }
    cfg.geometry.gamma1 = get_number(j, "gamma1", 1.0);
    cfg.geometry.gamma2 = get_number(j, "gamma2", 1.0);
    cfg.geometry.b1 = get_number(j, "b1", 1.0);
    cfg.geometry.b2 = get_number(j, "b2", 1.0);
    cfg.geometry.d = get_number(j, "d", 10.0);
    cfg.solver.N = get_int(j, "N", 64);
    cfg.solver.M = get_int(j, "M", 512);
    cfg.solver.tol_residual = get_number(j, "tol_residual", 1e-10);
    cfg.solver.max_iter = get_int(j, "max_iter", 25);
    cfg.solver.h_fd = get_number(j, "h_fd", 1e-6);
    const std::string scheme = get_string(j, "fd_scheme", "forward");
    if (scheme == "forward")
        cfg.solver.fd_scheme = FdScheme::forward;
    else if (scheme == "central")
        cfg.solver.fd_scheme = FdScheme::central;
    else
        throw validation_error("config key 'fd_scheme' must be 'forward' or 'central'");
    cfg.solver.bisect_depth = get_int(j, "bisect_depth", 4);
    cfg.solver.damping_floor = get_number(j, "damping_floor", 1.0 / 16.0);
    cfg.solver.refresh_jacobian_each_iter = get_bool(j, "refresh_jacobian_each_iter", false);
    cfg.output_dir = get_string(j, "output_dir", ".");
    cfg.emit.branch_json = get_bool(j, "write_branch_json", true);
    cfg.emit.boundary_csv = get_bool(j, "write_boundary_csv", true);
    cfg.emit.diagnostics_json = get_bool(j, "write_diagnostics_json", true);
    cfg.emit.convergence_log = get_bool(j, "write_convergence_log", true);

    PairGeometry probe = cfg.geometry;
    for (double e : cfg.eps_schedule) {
        probe.eps = e;
        validate_geometry(probe, cfg.mode);
    }
    if (cfg.solver.N < 2) throw validation_error("config key 'N' must be >= 2");
    if (cfg.solver.M < 4 * cfg.solver.N)
        throw validation_error("config keys must satisfy M >= 4N");
    if (!(cfg.solver.tol_residual > 0.0))
        throw validation_error("config key 'tol_residual' must be positive");
    if (cfg.solver.max_iter < 1) throw validation_error("config key 'max_iter' must be >= 1");
    if (!(cfg.solver.h_fd > 0.0)) throw validation_error("config key 'h_fd' must be positive");
    if (cfg.solver.bisect_depth < 0)
        throw validation_error("config key 'bisect_depth' must be >= 0");
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    return parse_run_config(read_file(path));
}

namespace {

void emit_double_array(std::ostringstream& os, const std::vector<double>& v) {
    os << "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << num17(v[i]);
    }
    os << "]";
}

} // namespace

std::string branch_to_json(const SolutionBranch& b) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"format\": \"gsqg-branch-v1\",\n";
    os << "  \"mode\": \"" << to_string(b.mode) << "\",\n";
    os << "  \"alpha\": " << num17(b.geometry.alpha) << ",\n";
    os << "  \"gamma1\": " << num17(b.geometry.gamma1) << ",\n";
    os << "  \"gamma2\": " << num17(b.geometry.gamma2) << ",\n";
    os << "  \"b1\": " << num17(b.geometry.b1) << ",\n";
    os << "  \"b2\": " << num17(b.geometry.b2) << ",\n";
    os << "  \"d\": " << num17(b.geometry.d) << ",\n";
    os << "  \"N\": " << b.N << ",\n";
    os << "  \"M\": " << b.M << ",\n";
    os << "  \"tol_residual\": " << num17(b.tol_residual) << ",\n";
    os << "  \"schedule\": ";
    emit_double_array(os, b.schedule);
    os << ",\n";
    os << "  \"complete\": " << (b.complete ? "true" : "false") << ",\n";
    os << "  \"failure_reason\": " << json(b.failure_reason).dump() << ",\n";
    os << "  \"entries\": [";
    for (size_t i = 0; i < b.entries.size(); ++i) {
        const BranchEntry& e = b.entries[i];
        os << (i ? ",\n    {" : "\n    {");
        os << "\"eps\": " << num17(e.eps) << ", ";
        os << "\"scalar1\": " << num17(e.state.scalar1) << ", ";
        os << "\"scalar2\": " << num17(e.state.scalar2) << ", ";
        os << "\"p1\": ";
        emit_double_array(os, e.state.p1.a);
        os << ", \"p2\": ";
        emit_double_array(os, e.state.p2.a);
        os << ", \"residual_norm\": " << num17(e.diag.residual_norm);
        os << ", \"newton_iters\": " << e.diag.newton_iters;
        os << ", \"parity_leak\": " << num17(e.diag.parity_leak);
        os << ", \"min_curvature1\": " << num17(e.diag.min_curvature1);
        os << ", \"min_curvature2\": " << num17(e.diag.min_curvature2);
        os << "}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

SolutionBranch branch_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw io_error(std::string("branch parse error: ") + e.what());
    }
    if (get_string(j, "format", "") != "gsqg-branch-v1")
        throw io_error("unrecognized branch file format");
    SolutionBranch b;
    b.mode = pair_mode_from_string(get_string(j, "mode", ""));
    b.geometry.alpha = get_number(j, "alpha", 0.0);
    b.geometry.gamma1 = get_number(j, "gamma1", 1.0);
    b.geometry.gamma2 = get_number(j, "gamma2", 1.0);
    b.geometry.b1 = get_number(j, "b1", 1.0);
    b.geometry.b2 = get_number(j, "b2", 1.0);
    b.geometry.d = get_number(j, "d", 10.0);
    b.N = get_int(j, "N", 0);
    b.M = get_int(j, "M", 0);
    b.tol_residual = get_number(j, "tol_residual", 0.0);
    if (!j.contains("schedule") || !j["schedule"].is_array())
        throw io_error("branch file missing 'schedule' array");
    for (const auto& v : j["schedule"]) b.schedule.push_back(v.get<double>());
    b.complete = get_bool(j, "complete", false);
    b.failure_reason = get_string(j, "failure_reason", "");
    if (!j.contains("entries") || !j["entries"].is_array())
        throw io_error("branch file missing 'entries' array");
    for (const auto& je : j["entries"]) {
        BranchEntry e;
        e.eps = get_number(je, "eps", 0.0);
        e.state.mode = b.mode;
        e.state.scalar1 = get_number(je, "scalar1", 0.0);
        e.state.scalar2 = get_number(je, "scalar2", 0.0);
        if (!je.contains("p1") || !je.contains("p2"))
            throw io_error("branch entry missing profile arrays");
        e.state.p1 = CosineSeries(static_cast<int>(je["p1"].size()));
        e.state.p2 = CosineSeries(static_cast<int>(je["p2"].size()));
        for (size_t k = 0; k < je["p1"].size(); ++k) e.state.p1.a[k] = je["p1"][k].get<double>();
        for (size_t k = 0; k < je["p2"].size(); ++k) e.state.p2.a[k] = je["p2"][k].get<double>();
        e.diag.residual_norm = get_number(je, "residual_norm", 0.0);
        e.diag.newton_iters = get_int(je, "newton_iters", 0);
        e.diag.parity_leak = get_number(je, "parity_leak", 0.0);
        e.diag.min_curvature1 = get_number(je, "min_curvature1", 0.0);
        e.diag.min_curvature2 = get_number(je, "min_curvature2", 0.0);
        b.entries.push_back(std::move(e));
    }
    return b;
}

std::string boundary_csv(const PairGeometry& geom, const SolveState& state, int points) {
    if (points < 8) throw validation_error("boundary_csv needs points >= 8");
    const double s1 = signed_size_param(geom.eps, geom.alpha, geom.b1);
    const double s2 = signed_size_param(geom.eps, geom.alpha, geom.b2);
    std::ostringstream os;
    os << "patch,x,X,Y\n";
    for (int m = 0; m <= points; ++m) {
        const double x = 2.0 * std::numbers::pi * (m % points) / points;
        const double r1 = geom.eps * geom.b1 * (1.0 + s1 * state.p1.eval(x));
        os << "1," << num12(x) << "," << num12(r1 * std::cos(x)) << ","
           << num12(r1 * std::sin(x)) << "\n";
    }
    for (int m = 0; m <= points; ++m) {
        const double x = 2.0 * std::numbers::pi * (m % points) / points;
        const double r2 = geom.eps * geom.b2 * (1.0 + s2 * state.p2.eval(x));
        os << "2," << num12(x) << "," << num12(geom.d - r2 * std::cos(x)) << ","
           << num12(-r2 * std::sin(x)) << "\n";
    }
    return os.str();
}

std::string convergence_log_text(const SolutionBranch& b) {
    std::ostringstream os;
    os << "# convergence log: mode " << to_string(b.mode) << " alpha "
       << numg(b.geometry.alpha) << " N " << b.N << " M " << b.M << " tol "
       << numg(b.tol_residual) << "\n";
    for (const BranchEntry& e : b.entries) {
        os << "eps " << num17(e.eps) << " iters " << e.diag.newton_iters << " residual "
           << num17(e.diag.residual_norm) << "\n";
        for (size_t k = 0; k < e.diag.residual_history.size(); ++k)
            os << "  iter " << k << " residual " << num17(e.diag.residual_history[k]) << "\n";
    }
    if (!b.complete) os << "# incomplete: " << b.failure_reason << "\n";
    return os.str();
}

std::string schedule_hash(const std::vector<double>& schedule) {
    std::string text;
    for (size_t i = 0; i < schedule.size(); ++i) {
        if (i) text += ",";
        text += num17(schedule[i]);
    }
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw io_error("read failure on: " + path);
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw io_error("write failure on: " + path);
}

namespace {

std::string diagnostics_json_text(const SolutionBranch& b) {
    std::ostringstream os;
    os << "{\n  \"entries\": [";
    for (size_t i = 0; i < b.entries.size(); ++i) {
        const BranchEntry& e = b.entries[i];
        os << (i ? ",\n    {" : "\n    {");
        os << "\"eps\": " << num17(e.eps) << ", \"residual_norm\": "
           << num17(e.diag.residual_norm) << ", \"newton_iters\": " << e.diag.newton_iters
           << ", \"parity_leak\": " << num17(e.diag.parity_leak) << ", \"min_curvature1\": "
           << num17(e.diag.min_curvature1) << ", \"min_curvature2\": "
           << num17(e.diag.min_curvature2) << ", \"residual_history\": ";
        emit_double_array(os, e.diag.residual_history);
        os << "}";
    }
    os << "\n  ],\n";
    os << "  \"scaling_fit\": ";
    try {
        const ScalingFit f = scaling_fit(b);
        os << "{\"slope\": " << num17(f.slope) << ", \"intercept\": " << num17(f.intercept)
           << ", \"points_used\": " << f.points_used << ", \"max_log_residual\": "
           << num17(f.max_log_residual) << "}";
    } catch (const error& e) {
        os << "{\"skipped\": " << json(std::string(e.what())).dump() << "}";
    }
    os << ",\n  \"reflection\": ";
    {
        const ReflectionReport r = reflection_check(b);
        os << "{\"pairs_used\": " << r.pairs_used << ", \"literal_max\": "
           << num17(r.literal_max) << ", \"conjugated_max\": " << num17(r.conjugated_max)
           << ", \"scalar_max\": " << num17(r.scalar_max) << "}";
    }
    os << ",\n  \"symmetric_reduction\": ";
    try {
        const SymmetryReport s = symmetric_reduction_check(b);
        os << "{\"entries_used\": " << s.entries_used << ", \"max_profile_mismatch\": "
           << num17(s.max_profile_mismatch) << ", \"max_center_offset\": "
           << num17(s.max_center_offset) << "}";
    } catch (const error& e) {
        os << "{\"skipped\": " << json(std::string(e.what())).dump() << "}";
    }
    os << "\n}\n";
    return os.str();
}

} // namespace

RunResult run_solve(const RunConfig& config) {
    namespace fs = std::filesystem;
    RunResult result;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw io_error("cannot create output directory: " + config.output_dir);

    result.branch = continue_branch(config.mode, config.geometry, config.eps_schedule,
                                    config.solver);
    const SolutionBranch& b = result.branch;
    const std::string tag =
        to_string(b.mode) + "_" + numg(b.geometry.alpha) + "_" + schedule_hash(b.schedule);
    if (config.emit.branch_json) {
        const std::string path = config.output_dir + "/branch_" + tag + ".json";
        write_file(path, branch_to_json(b));
        result.files_written.push_back(path);
    }
    if (config.emit.boundary_csv) {
        for (const BranchEntry& e : b.entries) {
            PairGeometry g = b.geometry;
            g.eps = e.eps;
            const std::string path = config.output_dir + "/" + to_string(b.mode) + "_" +
                                     numg(b.geometry.alpha) + "_" + numg(e.eps) + ".csv";
            write_file(path, boundary_csv(g, e.state, b.M));
            result.files_written.push_back(path);
        }
    }
    if (config.emit.diagnostics_json) {
        const std::string path = config.output_dir + "/diagnostics_" + tag + ".json";
        write_file(path, diagnostics_json_text(b));
        result.files_written.push_back(path);
    }
    if (config.emit.convergence_log) {
        const std::string path = config.output_dir + "/convergence_" + tag + ".log";
        write_file(path, convergence_log_text(b));
        result.files_written.push_back(path);
    }
    bool any_nonzero = false;
    for (const auto& e : b.entries)
        if (e.eps != 0.0) any_nonzero = true;
    result.exit_code = b.complete ? 0 : (any_nonzero ? 3 : 4);
    return result;
}

CheckResult run_check(const std::string& branch_path) {
    const SolutionBranch b = branch_from_json(read_file(branch_path));
    if (b.entries.empty()) throw validation_error("branch file has no entries");
    if (b.N < 2 || b.M < 4 * b.N) throw validation_error("branch file has invalid N/M");
    Workspace ws(b.geometry.alpha, b.N, b.M);
    CheckResult res;
    std::ostringstream detail;
    for (const BranchEntry& e : b.entries) {
        PairGeometry g = b.geometry;
        g.eps = e.eps;
        SolveState st = e.state;
        st.mode = b.mode;
        const ResidualPair r = assemble(g, st, ws);
        const double norm = r.norm2();
        res.worst_residual = std::max(res.worst_residual, norm);
        ++res.entries_checked;
        if (norm > 1.01 * b.tol_residual) {
            res.exit_code = 4;
            detail << "entry eps = " << num17(e.eps) << " re-assembled residual " << num17(norm)
                   << " exceeds tol " << num17(b.tol_residual) << "\n";
        }
        const ConvexityReport cv = convexity_check(g, st);
        if (std::abs(cv.min_curvature1 - e.diag.min_curvature1) > 1e-8 ||
            std::abs(cv.min_curvature2 - e.diag.min_curvature2) > 1e-8) {
            res.exit_code = 4;
            detail << "entry eps = " << num17(e.eps)
                   << " stored curvature minima do not match recomputation\n";
        }
    }
    res.detail = detail.str();
    return res;
}

} // namespace gsqg
