// Command-line driver: synth, protect, steady, reset, otto, validate.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pmre/config.hpp"
#include "pmre/experiments.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    int dim_override = 0;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config file")->required();
    cmd->add_option("--out", opts.out_path,
                    "output CSV path (falls back to the config's output key)");
    cmd->add_option("--dim", opts.dim_override, "override the truncation dimension");
}

pmre::config::ExperimentConfig load(CommonOpts& opts) {
    auto cfg = pmre::config::parse_config_file(opts.config_path);
    if (opts.dim_override > 0) {
        if (opts.dim_override < 8 || opts.dim_override > 128)
            throw pmre::config::ConfigError(0, "--dim must lie in [8, 128]");
        cfg.dim = opts.dim_override;
    }
    if (opts.out_path.empty()) opts.out_path = cfg.output;
    if (opts.out_path.empty())
        throw pmre::config::ConfigError(0, "no output path: pass --out or set output =");
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pulsed multireservoir engineering of a trapped ion's vibrational mode"};
    app.require_subcommand(1);

    CommonOpts synth_opts, protect_opts, steady_opts, reset_opts, otto_opts;
    bool otto_numeric = false;
    std::string validate_config;

    auto* synth = app.add_subcommand("synth", "state synthesis: fidelity vs stage count");
    add_common(synth, synth_opts);
    auto* protect = app.add_subcommand("protect", "state protection against dissipation");
    add_common(protect, protect_opts);
    auto* steady = app.add_subcommand("steady", "steady-state extraction");
    add_common(steady, steady_opts);
    auto* reset = app.add_subcommand("reset", "optical-pumping reset trajectory");
    add_common(reset, reset_opts);
    auto* otto = app.add_subcommand("otto", "quench Otto cycle energetics sweep");
    add_common(otto, otto_opts);
    otto->add_flag("--numeric", otto_numeric, "add trace-based energetics to each row");
    auto* validate = app.add_subcommand("validate", "run the built-in invariant suite");
    validate->add_option("--config", validate_config, "optional config to screen");

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace pmre::experiments;
        CommandResult result;
        if (synth->parsed()) {
            const auto cfg = load(synth_opts);
            result = cmd_synth(cfg, synth_opts.out_path);
        } else if (protect->parsed()) {
            const auto cfg = load(protect_opts);
            result = cmd_protect(cfg, protect_opts.out_path);
        } else if (steady->parsed()) {
            const auto cfg = load(steady_opts);
            result = cmd_steady(cfg, steady_opts.out_path);
        } else if (reset->parsed()) {
            const auto cfg = load(reset_opts);
            result = cmd_reset(cfg, reset_opts.out_path);
        } else if (otto->parsed()) {
            const auto cfg = load(otto_opts);
            result = cmd_otto(cfg, otto_opts.out_path, otto_numeric);
        } else if (validate->parsed()) {
            std::optional<pmre::config::ExperimentConfig> cfg;
            if (!validate_config.empty())
                cfg = pmre::config::parse_config_file(validate_config);
            return cmd_validate(std::cout, cfg ? &*cfg : nullptr);
        }
        for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
        return result.exit_code;
    } catch (const pmre::config::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
