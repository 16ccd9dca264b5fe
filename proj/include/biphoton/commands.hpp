#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "biphoton/config.hpp"

namespace biphoton {

enum class Command { G2, Hom, Sweep, Compare, Figure };

// Bundled reference scenarios; each pins a full parameter set so one command
// reproduces the corresponding curve.
enum class FigureId { Fig2, Fig4a, Fig4b, Fig5a, Fig5b };

std::optional<Command> parse_command_name(const std::string& name);
std::optional<FigureId> parse_figure_id(const std::string& name);
std::string figure_name(FigureId id);

struct CommandOverrides {
    std::optional<std::string> out_dir;
    std::optional<OutputFormat> format;
    bool normalize = false;
    std::optional<std::size_t> grid_n;
};

// Baseline configuration used by figure commands when no config is given.
RunConfig default_config();

// Replaces source/channel/detector/scan with the scenario's parameter set;
// grid and output settings are kept.
void apply_figure_preset(FigureId id, RunConfig& config);

// Executes a command: computes, then writes every output file atomically at
// the end. Summary lines go to `out`, diagnostics to `err`. Exit status: 0
// success, 2 configuration error, 3 numerical failure.
int run_command(Command command, RunConfig config, std::optional<FigureId> figure,
                const CommandOverrides& overrides, std::ostream& out, std::ostream& err);

} // namespace biphoton
