#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include "rolldist/errors.hpp"
#include "rolldist/scenario.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(ROLLDIST_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string scn(const char* name) {
    return std::string(ROLLDIST_SCENARIO_DIR) + "/" + name;
}

} // namespace

TEST_CASE("list subcommands") {
    RunResult ls = run("list-surfaces");
    CHECK(ls.exit_code == 0);
    CHECK(ls.out.find("catenoid") != std::string::npos);
    RunResult lc = run("list-checks");
    CHECK(lc.exit_code == 0);
    for (const auto& name : rolldist::known_checks())
        CHECK(lc.out.find(name) != std::string::npos);
}

TEST_CASE("passing scenario exits 0") {
    RunResult r = run("check " + scn("plane-splitting.scn") + " --grid 2 --jobs 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verdict: pass") != std::string::npos);
}

TEST_CASE("failing scenario exits 1") {
    RunResult r = run("check " + scn("mismatch.scn"));
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("malformed scenario exits 2 with a diagnostic") {
    RunResult r = run("check " + scn("malformed.scn"));
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("ScenarioSyntaxError") != std::string::npos);
    CHECK(r.out.find("gird.u") != std::string::npos);
    RunResult missing = run("check /nonexistent.scn");
    CHECK(missing.exit_code == 2);
}

TEST_CASE("json reports are byte-identical across runs and job counts") {
    std::string base = "check " + scn("plane-splitting.scn") + " --json --grid 2";
    RunResult a = run(base + " --jobs 1");
    RunResult b = run(base + " --jobs 8");
    RunResult c = run(base + " --jobs 8");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    CHECK(a.out.find("\"format\": \"rolldist-report v1\"") != std::string::npos);
}

TEST_CASE("tolerance overrides change the verdict") {
    RunResult r = run("check " + scn("mismatch.scn") + " --tol isometry=1.0");
    CHECK(r.exit_code == 0);
    RunResult bad = run("check " + scn("mismatch.scn") + " --tol bogus=1.0");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("scenario parser surface") {
    using namespace rolldist;
    Scenario s = parse_scenario_text("rolldist-scenario v1\n"
                                     "seed = plane\n"
                                     "grid.u = 0 1 3\n"
                                     "checks = isometry\n",
                                     "inline");
    CHECK(s.grid[0].count == 3);
    CHECK(s.checks.size() == 1);
    // near-miss check names get a suggestion
    try {
        (void)parse_scenario_text("rolldist-scenario v1\nseed = plane\nchecks = flatnes\n",
                                  "inline");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownCheckName);
        CHECK(std::string(e.what()).find("flatness") != std::string::npos);
    }
}
