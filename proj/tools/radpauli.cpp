// radpauli: verification workflows for radial Pauli operators.
//
//   radpauli <command> [--config run.yaml] [--out dir] [--svg] [--jobs n] [--seed n]
//
// Exit codes: 0 all contracts hold, 1 a contract is violated, 2 usage or config error.

#include <iostream>

#include <CLI11.hpp>

#include "radpauli/cli.hpp"
#include "radpauli/errors.hpp"

int main(int argc, char** argv) {
    namespace rc = radpauli::cli;
    CLI::App app{"Spectral verification for radially symmetric magnetic fields"};
    app.footer(rc::default_config_text());
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    rc::CommandOptions opt;
    app.add_option("--config", config_path, "YAML run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "directory for CSV/SVG output (CSV goes to stdout when unset)");
    app.add_flag("--svg", opt.svg, "also write an SVG plot");
    app.add_option("--jobs", opt.jobs, "worker threads for batteries")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "seed for battery sampling");
    app.fallthrough();

    for (const auto& name : rc::command_names()) app.add_subcommand(name, rc::command_summary(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (!out_dir.empty()) opt.out_dir = out_dir;

    rc::RunConfig cfg;
    try {
        cfg = config_path.empty() ? rc::RunConfig{} : rc::load_config(config_path);
    } catch (const rc::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return rc::run_command(command, cfg, opt, std::cout, std::cerr);
    } catch (const rc::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << command << ": " << e.what() << "\n";
        return 1;
    }
}
