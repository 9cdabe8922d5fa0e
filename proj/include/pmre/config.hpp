// config.hpp: experiment configuration files. Flat key = value text with
// [section] blocks; unknown keys are errors.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmre/types.hpp"

namespace pmre::config {

struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_, const std::string& msg)
        : std::runtime_error("config line " + std::to_string(line_) + ": " + msg),
          line(line_) {}
};

// Tagged state: vacuum | number | coherent | thermal | squeezed | squeezed_coherent
struct StateSpec {
    std::string kind{"vacuum"};
    int n{0};
    double nbar{0.0};
    double r{0.0};
    Cplx alpha{0.0};
    bool present{false};
};

// One [channel] section: a preset name with its parameters, raw laser lines,
// or an ideal jump operator in its Table-row form (damping a, heating a^dag,
// squeezed a + tanh(r) a^dag, displaced variants) with an explicit epsilon.
struct ChannelConfig {
    std::string preset;                          // laser preset
    std::vector<std::pair<int, double>> lines;   // raw lines (m, rabi_ratio)
    std::string ideal;                           // ideal operator form
    double r{0.0};
    double nbar{0.0};
    Cplx alpha{0.0};
    double tau_r_omega_r{-1.0};  // < 0: inherit the global pulse_area
    double epsilon{-1.0};        // >= 0: the increment itself (ideal) or the
                                 // pulse area realizing it (laser channels)
    int config_line{0};
};

struct OttoConfig {
    double nu0{1.0};
    double nu1{0.8};
    Cplx zeta{0.0};
    double nbar_A{0.0};
    Cplx alpha{0.0};
    std::vector<double> theta;
    std::string sweep{"none"};  // none | chi | alpha_im | nu_ratio
    double sweep_start{0.0};
    double sweep_stop{0.0};
    int sweep_points{1};
    bool present{false};
};

struct ResetConfig {
    double omega_tilde{0.05};
    double gamma30{1.0};
    double t_end{-1.0};  // < 0: 3.2 / gamma_eff (covers the fit window)
    double dt{-1.0};     // < 0: 0.005 / gamma30
    int target_level{1};
    int sample_every{200};
    bool present{false};
};

struct ExperimentConfig {
    int dim{40};
    double eta{0.05};
    double pulse_area{4.5};
    int n_stages{0};
    int record_every{1};
    std::string stepper{"recursion"};  // recursion | kraus | exponential
    std::string output;

    std::vector<ChannelConfig> channels;
    StateSpec initial_state;
    StateSpec target_state;
    OttoConfig otto;
    ResetConfig reset;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

} // namespace pmre::config
