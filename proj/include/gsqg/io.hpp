#pragma once

#include "gsqg/solver.hpp"
#include "gsqg/types.hpp"

#include <string>
#include <vector>

namespace gsqg {

struct EmitFlags {
    bool branch_json = true;
    bool boundary_csv = true;
    bool diagnostics_json = true;
    bool convergence_log = true;
};

struct RunConfig {
    PairMode mode = PairMode::corotating;
    PairGeometry geometry; // eps ignored; schedule governs
    std::vector<double> eps_schedule;
    SolverConfig solver;
    std::string output_dir = ".";
    EmitFlags emit;
};

// Parses a flat JSON object. Unknown keys and type mismatches raise
// validation_error naming the key; malformed JSON raises io_error with the
// parser position.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Branch file round trip. The emitter writes every number with 17
// significant digits, so parse-then-emit is byte identical.
std::string branch_to_json(const SolutionBranch& branch);
SolutionBranch branch_from_json(const std::string& text);

// Boundary sample of one entry: columns patch,x,X,Y in physical coordinates.
// Patch 1 sits at the origin with radius scale eps*b1; patch 2 is reflected
// (scale -eps*b2) and translated by d along the first axis. Rows close each
// curve.
std::string boundary_csv(const PairGeometry& geom, const SolveState& state, int points);

// Plain-text convergence log: one block per entry with the Newton residual
// trail.
std::string convergence_log_text(const SolutionBranch& branch);

// FNV-1a (64-bit, hex) over the canonical text of a schedule; used in file names.
std::string schedule_hash(const std::vector<double>& schedule);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

struct RunResult {
    int exit_code = 0; // 0 full, 3 partial branch, 4 nothing solved
    SolutionBranch branch;
    std::vector<std::string> files_written;
};

// Runs continuation per the config and writes the requested outputs.
RunResult run_solve(const RunConfig& config);

struct CheckResult {
    int exit_code = 0; // 0 verified, 4 residual mismatch
    int entries_checked = 0;
    double worst_residual = 0.0;
    std::string detail;
};

// Reloads a branch file and re-assembles every entry's residual at the
// stored resolution.
CheckResult run_check(const std::string& branch_path);

} // namespace gsqg
