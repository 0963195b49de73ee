#include "fftstencil/runner.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>

#include "fftstencil/aperiodic.hpp"
#include "fftstencil/modal.hpp"

namespace fftstencil {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

FieldGrid run_solver(const ProblemSpec& spec, const FieldGrid& a0, bool use_fft,
                     StageTimings* st = nullptr) {
    if (spec.periodic) {
        if (use_fft) return solve_periodic(a0, spec.kernel, spec.timesteps, st);
        return evolve_periodic_naive(a0, spec.kernel, spec.timesteps);
    }
    if (use_fft)
        return solve_aperiodic(a0, spec.kernel, *spec.boundary, spec.timesteps,
                               spec.cutoff, st);
    return evolve_aperiodic_naive(a0, spec.kernel, *spec.boundary, spec.timesteps);
}

void write_output(const ProblemSpec& spec, const RunOptions& opts, const FieldGrid& g,
                  std::ostream& out) {
    OutputFormat fmt = opts.out_format.value_or(spec.output);
    if (fmt == OutputFormat::None) return;
    const GridFormat gf = fmt == OutputFormat::Csv ? GridFormat::Csv : GridFormat::Raw;
    std::string path = opts.out_path;
    if (path.empty()) path = gf == GridFormat::Csv ? "grid_out.csv" : "grid_out.raw";
    write_grid(g, path, gf);
    out << "wrote " << (gf == GridFormat::Csv ? "csv" : "raw") << " grid to " << path
        << "\n";
}

void print_stage_table(std::ostream& out, const StageTimings& st, double total,
                       double naive_seconds = -1) {
    const auto row = [&](const char* name, double v) {
        out << "  " << std::left << std::setw(20) << name << std::setprecision(6)
            << std::fixed << v << "\n";
    };
    out << "stage timings (seconds):\n";
    row("forward_fft", st.forward_fft);
    row("squaring", st.squaring);
    row("hadamard", st.hadamard);
    row("inverse_fft", st.inverse_fft);
    row("boundary_recursion", st.boundary_recursion);
    row("total", total);
    if (naive_seconds >= 0) row("naive_total", naive_seconds);
    out.unsetf(std::ios::fixed);
}

int run_solve(const ProblemSpec& spec, const RunOptions& opts, std::ostream& out) {
    if (spec.solver == SolverChoice::Both)
        throw SpecError("solve mode needs solver 'fft' or 'naive'");
    const FieldGrid a0 = initial_grid(spec);
    const auto t0 = clock_type::now();
    const FieldGrid result = run_solver(spec, a0, spec.solver == SolverChoice::Fft);
    out << "solve: " << (spec.solver == SolverChoice::Fft ? "fft" : "naive")
        << " solver finished in " << std::setprecision(6) << seconds_since(t0)
        << " s\n";
    write_output(spec, opts, result, out);
    return 0;
}

int run_verify(const ProblemSpec& spec, const RunOptions& opts, std::ostream& out) {
    const FieldGrid a0 = initial_grid(spec);
    const FieldGrid fft_result = run_solver(spec, a0, true);
    const FieldGrid naive_result = run_solver(spec, a0, false);

    double max_abs = 0, max_rel = 0, max_oracle = 0;
    for (Index i = 0; i < spec.shape.values(); ++i) {
        const double d = std::abs(fft_result.data[i] - naive_result.data[i]);
        const double o = std::abs(naive_result.data[i]);
        max_abs = std::max(max_abs, d);
        max_oracle = std::max(max_oracle, o);
        if (o > 0) max_rel = std::max(max_rel, d / o);
    }
    const double threshold = 1e-8 * (1.0 + max_oracle);
    const bool ok = max_abs <= threshold;
    out << "verify: max-abs diff = " << max_abs << ", max-rel diff = " << max_rel
        << ", threshold = " << threshold << "\n"
        << "verify: " << (ok ? "PASS" : "FAIL") << "\n";
    write_output(spec, opts, fft_result, out);
    return ok ? 0 : 1;
}

int run_bench(const ProblemSpec& spec, const RunOptions& opts, std::ostream& out) {
    const FieldGrid a0 = initial_grid(spec);
    StageTimings st;
    double total = 0;
    double naive_seconds = -1;

    if (spec.solver != SolverChoice::Naive) {
        const auto t0 = clock_type::now();
        (void)run_solver(spec, a0, true, &st);
        total = seconds_since(t0);
    }
    if (spec.solver != SolverChoice::Fft) {
        const auto t0 = clock_type::now();
        (void)run_solver(spec, a0, false);
        naive_seconds = seconds_since(t0);
    }
    print_stage_table(out, st, total, naive_seconds);
    (void)opts;
    return 0;
}

int run_accuracy(const ProblemSpec& spec, const RunOptions& opts, std::ostream& out) {
    const ModalProblem modal =
        spec.periodic
            ? modal_problem_periodic(spec.shape, spec.kernel, spec.timesteps)
            : modal_problem_aperiodic(spec.shape, spec.kernel, *spec.boundary,
                                      spec.timesteps);

    const FieldGrid fft_result = run_solver(spec, modal.initial, true);
    const FieldGrid naive_result = run_solver(spec, modal.initial, false);

    double err_fft = 0, err_naive = 0;
    for (Index i = 0; i < spec.shape.values(); ++i) {
        err_fft = std::max(err_fft, std::abs(fft_result.data[i] - modal.reference.data[i]));
        err_naive =
            std::max(err_naive, std::abs(naive_result.data[i] - modal.reference.data[i]));
    }
    out << std::setprecision(12) << "accuracy: err_fft = " << err_fft
        << ", err_naive = " << err_naive << ", gap = " << std::abs(err_fft - err_naive)
        << "\n";
    (void)opts;
    return 0;
}

} // namespace

int run_problem(const ProblemSpec& spec, const RunOptions& opts, std::ostream& out) {
    switch (opts.mode) {
    case RunMode::Solve:
        return run_solve(spec, opts, out);
    case RunMode::Verify:
        return run_verify(spec, opts, out);
    case RunMode::Bench:
        return run_bench(spec, opts, out);
    case RunMode::Accuracy:
        return run_accuracy(spec, opts, out);
    }
    throw SpecError("run_problem: unreachable");
}

} // namespace fftstencil
