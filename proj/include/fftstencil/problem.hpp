#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fftstencil/boundary.hpp"
#include "fftstencil/grid_io.hpp"
#include "fftstencil/kernel.hpp"

namespace fftstencil {

enum class SolverChoice { Fft, Naive, Both };
enum class InitKind { Zeros, Delta, Random, File };
enum class OutputFormat { Csv, Raw, None };
enum class RunMode { Solve, Verify, Bench, Accuracy };

/// Declarative description of a single solve, loaded from a JSON spec file.
/// Unknown keys in the file are errors.
struct ProblemSpec {
    GridShape shape;
    StencilKernel kernel{1, 1};
    bool periodic = true;
    std::optional<BoundaryRule> boundary; // set when aperiodic
    std::uint64_t timesteps = 0;
    SolverChoice solver = SolverChoice::Fft;
    Index cutoff = 32;
    InitKind init = InitKind::Zeros;
    std::uint64_t seed = 0;       // init = random
    std::string init_file;       // init = file
    OutputFormat output = OutputFormat::None;
    std::optional<RunMode> mode; // file default; the CLI subcommand wins
};

ProblemSpec parse_problem_spec(const std::string& path);
ProblemSpec parse_problem_spec_text(const std::string& json_text);

/// Builds the initial grid for a spec. Random init draws from uniform
/// [-1, 1) via SplitMix64 (documented in the README for reproducibility).
FieldGrid initial_grid(const ProblemSpec& spec);

/// The documented SplitMix64 step, exposed so tests can pin values.
std::uint64_t splitmix64_next(std::uint64_t& state);

} // namespace fftstencil
