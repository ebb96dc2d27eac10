#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "hartmann/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"2D magnetic Prandtl (Prandtl-Hartmann) boundary-layer solver "
                 "and estimate-verification engine"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    long long seed_override = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--seed", seed_override, "override the config RNG seed");
    };

    CLI::App* cmd_run = app.add_subcommand("run", "time-step a scenario and write diagnostics");
    CLI::App* cmd_check = app.add_subcommand("check", "static inequality suites on synthetic fields");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "vanishing-viscosity convergence table");
    CLI::App* cmd_perturb = app.add_subcommand("perturb", "twin-run Gronwall/uniqueness study");
    for (CLI::App* c : {cmd_run, cmd_check, cmd_sweep, cmd_perturb}) add_common(c);

    CLI11_PARSE(app, argc, argv);

    try {
        hartmann::RunConfig cfg = hartmann::load_config(config_path);
        if (seed_override >= 0) cfg.seed = static_cast<unsigned long long>(seed_override);
        if (cmd_run->parsed()) return hartmann::run_command(cfg, out_dir);
        if (cmd_check->parsed()) return hartmann::check_command(cfg, out_dir);
        if (cmd_sweep->parsed()) return hartmann::sweep_command(cfg, out_dir);
        if (cmd_perturb->parsed()) return hartmann::perturb_command(cfg, out_dir);
    } catch (const hartmann::ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    } catch (const hartmann::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
