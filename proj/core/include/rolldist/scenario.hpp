#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rolldist/expr.hpp"

namespace rolldist {

struct GridSpec {
    double lo = -1.0, hi = 1.0;
    int count = 5;
};

// Scenario file, format:
//
//   rolldist-scenario v1
//   seed = catenoid               # or seed.x/.y/.z = <expr>
//   partner = associate           # builtin name, expressions, or absent
//   theta = 0.3 0.7 1.1 1.5       # associate family parameters
//   grid.u = -1 1 5               # lo hi count
//   checks = isometry flatness
//   V.x = ... V.y = ... V.z = ... # distribution block (optional)
//   m = ...
//   tol.flatness = 1e-8
//   seed-rng = 7
//   complex-sampling = on|off
//   const.NAME = 1.5
struct Scenario {
    std::string name;
    std::string seed_name;
    SurfacePatch seed;
    std::string partner_name;
    std::optional<SurfacePatch> partner;
    std::vector<double> thetas;
    std::optional<std::array<std::string, 3>> v_text;
    std::optional<std::string> m_text;
    std::array<GridSpec, 4> grid{GridSpec{}, GridSpec{}, GridSpec{0.4, 1.2, 3},
                                 GridSpec{0.4, 1.2, 3}};
    std::map<std::string, double> tol_overrides;
    std::vector<std::string> checks;
    std::uint64_t rng_seed = 0;
    bool complex_sampling = false;
};

// All recognized check names, in canonical order.
const std::vector<std::string>& known_checks();

double default_tolerance(const std::string& check);

Scenario parse_scenario_text(const std::string& text, const std::string& name);

// Throws FileError / ScenarioSyntaxError / UnknownCheckName / UnknownSurface.
Scenario load_scenario(const std::string& path);

struct CheckResult {
    std::string name;
    int points = 0;
    int skipped = 0;
    std::map<std::string, int> skip_reasons;
    double max_residual = 0.0;
    std::string max_location;
    double tolerance = 0.0;
    bool pass() const { return points == 0 || max_residual <= tolerance; }
};

struct Report {
    std::string scenario;
    std::uint64_t rng_seed = 0;
    std::vector<CheckResult> checks;
    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass()) return false;
        return true;
    }
};

Report run_checks(const Scenario& s, int jobs = 1);

std::string emit_report_json(const Report& r);
std::string emit_report_text(const Report& r);

// 0 pass, 1 fail (scenario errors are raised before a report exists and
// map to exit code 2 in the CLI).
int report_exit_code(const Report& r);

} // namespace rolldist
