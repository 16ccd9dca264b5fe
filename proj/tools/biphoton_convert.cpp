#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "biphoton/commands.hpp"
#include "biphoton/errors.hpp"

int main(int argc, char** argv) {
    CLI::App app{"simulator for converted-pair time correlations and two-photon interference"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string format;
    std::string figure_id;
    bool normalize = false;
    std::size_t grid_n = 0;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("--config", config_path, "JSON configuration file");
        if (config_required)
            opt->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--format", format, "csv, svg or both")
            ->check(CLI::IsMember({"csv", "svg", "both"}));
        cmd->add_flag("--normalize", normalize, "peak-normalize emitted traces");
        cmd->add_option("--grid-n", grid_n, "override grid samples per axis");
    };

    add_common(app.add_subcommand("g2", "detector-averaged coincidence trace"), true);
    add_common(app.add_subcommand("hom", "interference dip trace"), true);
    add_common(app.add_subcommand("sweep", "visibility sweep"), true);
    add_common(app.add_subcommand("compare", "closed-form vs numeric report"), true);
    auto* fig = app.add_subcommand("figure", "reproduce a bundled scenario");
    add_common(fig, false);
    fig->add_option("--figure", figure_id, "fig2, fig4a, fig4b, fig5a or fig5b")->required();

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    const auto command = biphoton::parse_command_name(sub);

    std::optional<biphoton::FigureId> figure;
    if (!figure_id.empty()) {
        figure = biphoton::parse_figure_id(figure_id);
        if (!figure) {
            std::cerr << "config error: unknown figure id '" << figure_id << "'\n";
            return 2;
        }
    }

    biphoton::RunConfig config;
    try {
        config = config_path.empty() ? biphoton::default_config()
                                     : biphoton::parse_config_file(config_path);
    } catch (const biphoton::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    biphoton::CommandOverrides overrides;
    if (!out_dir.empty())
        overrides.out_dir = out_dir;
    if (!format.empty())
        overrides.format = format == "csv" ? biphoton::OutputFormat::Csv
                          : format == "svg" ? biphoton::OutputFormat::Svg
                                            : biphoton::OutputFormat::Both;
    overrides.normalize = normalize;
    if (grid_n != 0)
        overrides.grid_n = grid_n;

    return biphoton::run_command(*command, std::move(config), figure, overrides, std::cout,
                                 std::cerr);
}
