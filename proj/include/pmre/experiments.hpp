// experiments.hpp: experiment orchestration behind the CLI subcommands. Each
// command consumes a parsed config, writes a CSV result file plus a JSON run
// summary, and reports warnings through the summary.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmre/collision.hpp"
#include "pmre/config.hpp"
#include "pmre/lasers.hpp"

namespace pmre::experiments {

inline constexpr const char* kVersion = "0.1.0";

// Preset expansion for the laser-backed channel forms; raw lines share the
// config-wide eta. The optional per-channel epsilon key picks the pulse area
// that realizes that increment. Ideal channels are not expressible as laser
// specs and are rejected here.
std::vector<lasers::ChannelSpec> resolve_channels(const config::ExperimentConfig& cfg);

std::vector<lasers::EngineeredChannel> engineer_channels(
    const FockSpace& space, const std::vector<lasers::ChannelSpec>& specs);

// All channel forms: laser presets and raw lines are rescaled, ideal channels
// are built directly in their Table-row operator form.
std::vector<lasers::EngineeredChannel> build_channels(const FockSpace& space,
                                                      const config::ExperimentConfig& cfg);

Mat build_state(const FockSpace& space, const config::StateSpec& spec);

struct CommandResult {
    int exit_code{0};
    std::vector<std::string> warnings;
};

CommandResult cmd_synth(const config::ExperimentConfig& cfg, const std::string& out_path);
CommandResult cmd_protect(const config::ExperimentConfig& cfg, const std::string& out_path);
CommandResult cmd_steady(const config::ExperimentConfig& cfg, const std::string& out_path);
CommandResult cmd_reset(const config::ExperimentConfig& cfg, const std::string& out_path);
CommandResult cmd_otto(const config::ExperimentConfig& cfg, const std::string& out_path,
                       bool numeric);

// Built-in invariant suite; prints one line per check with the measured
// residual. Passing a config additionally screens its channels (epsilon
// guard, single-step positivity probe). Returns 0 when green, 1 otherwise.
int cmd_validate(std::ostream& out, const config::ExperimentConfig* cfg = nullptr);

} // namespace pmre::experiments
