#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "fftstencil/parallel.hpp"
#include "fftstencil/runner.hpp"
#include "fftstencil/stencils.hpp"

namespace {

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    // Flag absent: honor the environment, then hardware concurrency.
    if (const char* env = std::getenv("FFTSTENCIL_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0; // library default: hardware concurrency
}

int list_stencils() {
    for (const auto& name : fftstencil::builtin_stencil_names()) {
        const auto k = fftstencil::builtin_stencil(name);
        std::cout << name << ": " << k.rank() << "-D, " << k.taps().size()
                  << " taps, radius " << k.radius() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"FFT-based linear stencil engine"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_path;
    std::string format;
    int threads = 0;

    auto add_run_subcommand = [&](const char* name, const char* desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--spec", spec_path, "problem spec file (JSON)")->required();
        sub->add_option("--threads", threads, "worker threads (default: hardware)");
        sub->add_option("--out", out_path, "output grid path");
        sub->add_option("--format", format, "output format: csv or raw")
            ->check(CLI::IsMember({"csv", "raw"}));
        return sub;
    };

    CLI::App* solve = add_run_subcommand("solve", "run one solver and write the grid");
    CLI::App* verify =
        add_run_subcommand("verify", "run fft and naive solvers and compare");
    CLI::App* bench = add_run_subcommand("bench", "per-stage timing table");
    CLI::App* accuracy =
        add_run_subcommand("accuracy", "compare both solvers against modal truth");
    CLI::App* stencils = app.add_subcommand("stencils", "list builtin stencils");

    CLI11_PARSE(app, argc, argv);

    if (stencils->parsed()) return list_stencils();

    fftstencil::RunOptions opts;
    if (solve->parsed()) opts.mode = fftstencil::RunMode::Solve;
    if (verify->parsed()) opts.mode = fftstencil::RunMode::Verify;
    if (bench->parsed()) opts.mode = fftstencil::RunMode::Bench;
    if (accuracy->parsed()) opts.mode = fftstencil::RunMode::Accuracy;
    opts.out_path = out_path;
    if (format == "csv") opts.out_format = fftstencil::OutputFormat::Csv;
    if (format == "raw") opts.out_format = fftstencil::OutputFormat::Raw;

    try {
        fftstencil::set_thread_count(resolve_threads(threads));
        const auto spec = fftstencil::parse_problem_spec(spec_path);
        return fftstencil::run_problem(spec, opts, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
