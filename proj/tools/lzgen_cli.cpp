// lzgen_cli.cpp — command-line surface: simulate | sweep | optimize | catapult |
// leakage | spectrum. Exit codes: 0 success, 2 validation, 3 solver, 4 infeasible.

#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lzgen/io.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "run";
    unsigned threads = 1;
    unsigned seed = 0;  // reserved; runs are deterministic
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file (JSON, comments allowed)")
        ->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--threads", args.threads, "worker threads for sweeps/optimizations");
    cmd->add_option("--seed", args.seed, "reserved; runs are deterministic");
}

int dispatch(const CommonArgs& args,
             const std::function<void(const lzgen::RunConfig&, const std::string&, unsigned)>&
                 runner) {
    try {
        const lzgen::RunConfig cfg = lzgen::load_config(args.config_path);
        runner(cfg, args.out_dir, args.threads);
        return 0;
    } catch (const lzgen::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 2;
    } catch (const lzgen::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 4;
    } catch (const lzgen::SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-microwave-photon source design toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    int rc = 0;

    auto* simulate = app.add_subcommand("simulate", "propagate a pulsed Schrodinger evolution");
    add_common(simulate, args);
    simulate->callback([&] { rc = dispatch(args, lzgen::run_simulate); });

    auto* sweep = app.add_subcommand("sweep", "grid sweeps over rise time, range, or shape");
    add_common(sweep, args);
    sweep->callback([&] { rc = dispatch(args, lzgen::run_sweep); });

    auto* optimize = app.add_subcommand("optimize", "constrained efficiency optimization");
    add_common(optimize, args);
    optimize->callback([&] { rc = dispatch(args, lzgen::run_optimize); });

    auto* catapult = app.add_subcommand("catapult", "emit a catapult trajectory");
    add_common(catapult, args);
    catapult->callback([&] { rc = dispatch(args, lzgen::run_catapult); });

    auto* leakage = app.add_subcommand("leakage", "leakage scans outside the qubit subspace");
    add_common(leakage, args);
    leakage->callback([&] { rc = dispatch(args, lzgen::run_leakage); });

    auto* spectrum = app.add_subcommand("spectrum", "control-pulse spectral leakage estimates");
    add_common(spectrum, args);
    spectrum->callback([&] { rc = dispatch(args, lzgen::run_spectrum); });

    CLI11_PARSE(app, argc, argv);
    return rc;
}
