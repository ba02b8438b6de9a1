#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

// End-to-end checks of the command-line binary: subcommands, exit codes
// (0 success, 1 check failure, 2 usage/input error), and output artifacts.

namespace {

int runCli(const std::string& args) {
    std::string cmd = std::string(OSCULANT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
}

}  // namespace

TEST_CASE("analyze, verify, cubic, and plot succeed on good input") {
    CHECK(runCli("analyze --curve b2 --grid 1024") == 0);
    CHECK(runCli("verify --theorem 1.3 --curve b2 --grid 1024") == 0);
    CHECK(runCli("verify --theorem 5.5 --curve b2 --grid 1024") == 0);  // not applicable
    CHECK(runCli("cubic --a -1 --b 0") == 0);
    CHECK(runCli("audit-axioms --curve circle --side inscribed --grid 5") == 0);
}

TEST_CASE("usage and input errors exit with code 2") {
    CHECK(runCli("") == 2);
    CHECK(runCli("frobnicate") == 2);
    CHECK(runCli("analyze") == 2);                       // missing --curve
    CHECK(runCli("analyze --curve no-such-curve") == 2);
    CHECK(runCli("cubic --a -3 --b 2") == 2);            // singular cubic
    CHECK(runCli("cubic --a 1 --b 1/0") == 2);           // malformed rational
    CHECK(runCli("audit-axioms --curve circle --side sideways") == 2);
    CHECK(runCli("report --config /nonexistent.cfg") == 2);
}

TEST_CASE("plot emits a deterministic SVG file") {
    REQUIRE(runCli("plot --curve b4 --svg cli_plot_a.svg --grid 1024") == 0);
    REQUIRE(runCli("plot --curve b4 --svg cli_plot_b.svg --grid 1024") == 0);
    std::string a = slurp("cli_plot_a.svg");
    CHECK(a == slurp("cli_plot_b.svg"));
    CHECK(a.find("<svg") == 0);
    CHECK(a.find("glyph-S") != std::string::npos);
    std::remove("cli_plot_a.svg");
    std::remove("cli_plot_b.svg");
}

TEST_CASE("report exits 1 when a check fails and 0 on a clean run") {
    {
        std::ofstream cfg("cli_clean.cfg");
        cfg << "grid = 1024\n[curves]\nb4\n[theorems]\n5.4\n[cubics]\n0 1\n";
    }
    CHECK(runCli("report --config cli_clean.cfg --json cli_clean.json") == 0);
    std::string json = slurp("cli_clean.json");
    CHECK(json.find("\"golden_match\": true") != std::string::npos);

    {
        std::ofstream cfg("cli_fail.cfg");
        cfg << "[cubics]\n-3 2\n";  // singular: discriminant vanishes
    }
    CHECK(runCli("report --config cli_fail.cfg") == 1);

    {
        std::ofstream cfg("cli_bad.cfg");
        cfg << "[whatever]\n";
    }
    CHECK(runCli("report --config cli_bad.cfg") == 2);

    std::remove("cli_clean.cfg");
    std::remove("cli_clean.json");
    std::remove("cli_fail.cfg");
    std::remove("cli_bad.cfg");
}
