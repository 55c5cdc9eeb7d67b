#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rolldist/errors.hpp"
#include "rolldist/scenario.hpp"

namespace {

int run_check(const std::string& path, bool json, int grid_override,
              const std::vector<std::string>& tol_overrides, long long seed_override,
              int jobs) {
    using namespace rolldist;
    Scenario s = load_scenario(path);
    if (grid_override > 0)
        for (auto& g : s.grid) g.count = grid_override;
    if (seed_override >= 0) s.rng_seed = static_cast<std::uint64_t>(seed_override);
    for (const auto& ov : tol_overrides) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::ScenarioSyntaxError, "--tol expects NAME=VALUE, got '" + ov + "'");
        std::string name = ov.substr(0, eq);
        default_tolerance(name); // validates the name
        s.tol_overrides[name] = std::stod(ov.substr(eq + 1));
    }
    Report rep = run_checks(s, jobs);
    std::cout << (json ? emit_report_json(rep) : emit_report_text(rep));
    return report_exit_code(rep);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numeric verification of rolling maps and tangency distributions"};
    app.require_subcommand(1);

    std::string scenario_path;
    bool json = false;
    int grid_override = 0;
    std::vector<std::string> tol_overrides;
    long long seed_override = -1;
    int jobs = 1;

    auto* check = app.add_subcommand("check", "run the checks of a scenario file");
    check->add_option("scenario", scenario_path, "scenario file")->required();
    check->add_flag("--json", json, "emit the report as JSON");
    check->add_option("--grid", grid_override, "override every grid count");
    check->add_option("--tol", tol_overrides, "override a tolerance, NAME=VALUE");
    check->add_option("--seed", seed_override, "override the sampling seed");
    check->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 256));

    auto* ls = app.add_subcommand("list-surfaces", "list built-in surfaces");
    auto* lc = app.add_subcommand("list-checks", "list check names and default tolerances");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (ls->parsed()) {
            for (const auto& name : rolldist::builtin_surface_names())
                std::cout << name << "\n";
            return 0;
        }
        if (lc->parsed()) {
            for (const auto& name : rolldist::known_checks())
                std::printf("%-20s default tol %g\n", name.c_str(),
                            rolldist::default_tolerance(name));
            return 0;
        }
        return run_check(scenario_path, json, grid_override, tol_overrides, seed_override,
                         jobs);
    } catch (const rolldist::Error& e) {
        std::cerr << "error [" << rolldist::error_kind_name(e.kind()) << "]: " << e.what()
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
