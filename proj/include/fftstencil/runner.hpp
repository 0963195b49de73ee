#pragma once

#include <iosfwd>
#include <string>

#include "fftstencil/problem.hpp"

namespace fftstencil {

struct RunOptions {
    RunMode mode = RunMode::Solve;
    std::string out_path;                  // empty: derive from format
    std::optional<OutputFormat> out_format; // overrides the spec's output
};

/// Executes one spec in the given mode and writes a human-readable report.
/// Returns the process exit code: 0 ok, 1 verification failure. Spec and
/// I/O problems propagate as exceptions (the CLI maps them to exit 2).
int run_problem(const ProblemSpec& spec, const RunOptions& opts, std::ostream& out);

} // namespace fftstencil
