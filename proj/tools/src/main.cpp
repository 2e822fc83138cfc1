#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slspec/cli/run_spec.hpp"
#include "slspec/cli/runner.hpp"

namespace {

int run_command(const std::string& path, const std::vector<std::string>& overrides) {
    using namespace slspec::cli;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "slspec: cannot read " << path << "\n";
        return exit_spec_error;
    }
    std::stringstream text;
    text << in.rdbuf();

    RunSpec spec;
    try {
        spec = parse_spec(text.str(), overrides);
    } catch (const SpecError& e) {
        std::cerr << "slspec: " << path << ": " << e.what() << "\n";
        return exit_spec_error;
    }

    const RunOutcome outcome = run(spec);
    if (outcome.exit_code != exit_ok) {
        std::cerr << "slspec: " << outcome.message << "\n";
        return outcome.exit_code;
    }
    if (spec.output.empty()) {
        std::cout << outcome.csv << std::flush;
        return exit_ok;
    }
    std::ofstream out(spec.output, std::ios::binary);
    out << outcome.csv;
    if (!out) {
        std::cerr << "slspec: cannot write " << spec.output << "\n";
        return exit_numerical_failure;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sturm-Liouville spectral toolkit"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> overrides;
    CLI::App* run = app.add_subcommand("run", "Execute a run specification and emit CSV");
    run->add_option("--set", overrides, "Override a spec entry, section.key=value")->take_all();
    run->add_option("file", file, "Run specification")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : slspec::cli::exit_spec_error;
    }
    return run_command(file, overrides);
}
