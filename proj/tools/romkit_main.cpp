#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "rom/commands.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 solver failure,
// 4 missing input artifact.
int dispatch(const std::string& command, const rom::ExperimentConfig& cfg) {
    if (command == "run-fom") return rom::cmd_run_fom(cfg);
    if (command == "build-rom") return rom::cmd_build_rom(cfg);
    if (command == "estimate") return rom::cmd_estimate(cfg);
    if (command == "adapt-deim") return rom::cmd_adapt_deim(cfg);
    return rom::cmd_sweep(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced-order model experiment harness for the 1D viscous Burgers equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    long seed = -1;
    std::string scheme;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "Path to a section.key=value config file")
            ->required();
        sub->add_option("--out", out_dir, "Output directory (overrides output.dir)");
        sub->add_option("--seed", seed, "Random seed (overrides run.seed)");
        sub->add_option("--scheme", scheme, "Time scheme (overrides time.scheme)")
            ->check(CLI::IsMember({"explicit", "implicit"}));
    };

    add_common(app.add_subcommand("run-fom", "Integrate the full model and its adjoint"));
    add_common(app.add_subcommand(
        "build-rom", "Build state and nonlinear-term bases plus interpolation indices"));
    add_common(app.add_subcommand(
        "estimate", "Run the reduced model and the fast goal-oriented error estimate"));
    add_common(app.add_subcommand(
        "adapt-deim", "Re-select interpolation points using dual-weighted residual modes"));
    add_common(app.add_subcommand("sweep", "Evaluate a grid of (k, m, alpha, mu) points"));

    CLI11_PARSE(app, argc, argv);

    try {
        rom::ExperimentConfig cfg = rom::parse_config_file(config_path);
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (seed >= 0) cfg.seed = seed;
        if (scheme == "explicit") cfg.scheme = rom::Scheme::explicit_euler;
        if (scheme == "implicit") cfg.scheme = rom::Scheme::implicit_euler;
        return dispatch(app.get_subcommands().front()->get_name(), cfg);
    } catch (const rom::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const rom::missing_artifact_error& e) {
        std::cerr << "missing artifact: " << e.what() << "\n";
        return 4;
    } catch (const rom::convergence_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const rom::linear_solve_error& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
