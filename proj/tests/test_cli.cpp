#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "blockage/scenario_io.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "blockage_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out_path = work_dir() / "stdout.txt";
    const std::string cmd = std::string(BLOCKAGE_CLI_PATH) + " " + args + " > " +
                            out_path.string() + " 2> " + (work_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.out = buffer.str();
    return result;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fs::path write_scenario(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

const std::string kMidScenario =
    "beam_waist = 2\n"
    "aperture_radius = 2\n"
    "shadow_radius = 2\n"
    "shadow_offset = 0\n"
    "tx_power = 10\n"
    "noise_power = 1\n"
    "rate_threshold = 1\n"
    "samples = 200000\n";

}  // namespace

TEST_CASE("hb reports all methods and honors --json") {
    const auto path = write_scenario("mid.scn", kMidScenario);
    const auto r = run_cli("hb --scenario " + path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("I = ") != std::string::npos);
    CHECK(r.out.find("method=exact") != std::string::npos);
    CHECK(r.out.find("method=theorem-1") != std::string::npos);
    CHECK(r.out.find("method=theorem-2") != std::string::npos);

    const auto j = run_cli("hb --json --scenario " + path.string());
    CHECK(j.exit_code == 0);
    CHECK(j.out.find("\"I\"") != std::string::npos);
    CHECK(j.out.find("\"results\"") != std::string::npos);
}

TEST_CASE("hb with no shadow returns the collected fraction for every method") {
    const auto path = write_scenario("open.scn",
                                     "beam_waist = 2\naperture_radius = 2\n"
                                     "shadow_radius = 0\nshadow_offset = 0\n");
    const auto r = run_cli("hb --method exact,theorem-1,theorem-2,monte-carlo --scenario " +
                           path.string());
    CHECK(r.exit_code == 0);
    // Every h_b equals I: all I_b lines report zero.
    std::istringstream lines(r.out);
    std::string line;
    std::string i_value;
    int seen = 0;
    while (std::getline(lines, line)) {
        if (line.rfind("I = ", 0) == 0) i_value = line.substr(4);
        const auto pos = line.find("h_b=");
        if (pos != std::string::npos) {
            const auto end = line.find(' ', pos);
            CHECK(line.substr(pos + 4, end - pos - 4) == i_value);
            CHECK(line.find("I_b=0 ") != std::string::npos);
            ++seen;
        }
    }
    CHECK(seen == 4);
}

TEST_CASE("exact and theorem-1 stay close on a wide-beam scenario") {
    const auto path = write_scenario("wide.scn",
                                     "beam_waist = 8\naperture_radius = 8\n"
                                     "shadow_radius = 1\nshadow_offset = 1\n");
    const auto r = run_cli("hb --json --scenario " + path.string());
    CHECK(r.exit_code == 0);
    // Parse the two shadow integrals out of the JSON text.
    auto value_after = [&](const std::string& key) {
        const auto pos = r.out.find(key);
        REQUIRE(pos != std::string::npos);
        const auto colon = r.out.find("\"I_b\":", pos);
        return std::stod(r.out.substr(colon + 6));
    };
    const double exact = value_after("\"exact\"");
    const double t1 = value_after("\"theorem-1\"");
    CHECK(std::fabs(exact - t1) <= 1e-4);
}

TEST_CASE("exit codes distinguish the failure classes") {
    CHECK(run_cli("hb --scenario /nonexistent.scn").exit_code == 3);

    const auto bad = write_scenario("bad.scn", "beam_waist = oops\n");
    CHECK(run_cli("hb --scenario " + bad.string()).exit_code == 4);

    const auto negative = write_scenario("neg.scn",
                                         "beam_waist = -1\naperture_radius = 1\n"
                                         "shadow_radius = 1\nshadow_offset = 0\n");
    CHECK(run_cli("hb --scenario " + negative.string()).exit_code == 5);

    const auto mid = write_scenario("mid2.scn", kMidScenario);
    CHECK(run_cli("hb --scenario " + mid.string() +
                  " --abs-tol 1e-15 --rel-tol 1e-15")
              .exit_code == 6);

    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("hb").exit_code == 2);  // missing required --scenario
}

TEST_CASE("parse errors name the offending line") {
    const auto bad = write_scenario("bad2.scn", "beam_waist = 1\nnot a pair\n");
    const auto r = run_cli("hb --scenario " + bad.string());
    CHECK(r.exit_code == 4);
    CHECK(read_file(work_dir() / "stderr.txt").find("line 2") != std::string::npos);
}

TEST_CASE("sweep writes csv with exact row counts and monotone columns") {
    const auto path = write_scenario("mid3.scn", kMidScenario);
    const auto out_csv = work_dir() / "sweep_r.csv";

    const auto minimal = run_cli("sweep --scenario " + path.string() +
                                 " --var r --start 0 --stop 1 --steps 2 --out " +
                                 out_csv.string());
    CHECK(minimal.exit_code == 0);
    {
        std::istringstream in(read_file(out_csv));
        std::string line;
        int rows = -1;  // header
        while (std::getline(in, line))
            if (!line.empty()) ++rows;
        CHECK(rows == 2);
    }

    const auto full = run_cli("sweep --scenario " + path.string() +
                              " --var r --start 0 --stop 6 --steps 13" +
                              " --method exact,theorem-1,theorem-2,monte-carlo --out " +
                              out_csv.string());
    CHECK(full.exit_code == 0);
    const auto table = blockage::parse_csv(read_file(out_csv));
    CHECK(table.variable == "r");
    CHECK(table.columns.size() == 4);
    for (std::size_t col = 0; col < table.columns.size(); ++col)
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            CHECK(table.rows[i][col] >= table.rows[i - 1][col] - 1e-9);

    const auto ab = run_cli("sweep --scenario " + path.string() +
                            " --var alpha_b --start 0.1 --stop 3 --steps 12 --out " +
                            out_csv.string());
    CHECK(ab.exit_code == 0);
    const auto ab_table = blockage::parse_csv(read_file(out_csv));
    for (std::size_t col = 0; col < ab_table.columns.size(); ++col)
        for (std::size_t i = 1; i < ab_table.rows.size(); ++i)
            CHECK(ab_table.rows[i][col] <= ab_table.rows[i - 1][col] + 1e-9);

    CHECK(run_cli("sweep --scenario " + path.string() +
                  " --var r --start 0 --stop 1 --steps 2 --out /nonexistent/dir/x.csv")
              .exit_code == 3);
}

TEST_CASE("validate passes by default and fails under an impossible tolerance") {
    const auto ok = run_cli("validate");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("overall: PASS") != std::string::npos);
    // Nine data rows, reference column present.
    CHECK(ok.out.find("2.25e-06") != std::string::npos);
    int rows = 0;
    std::istringstream in(ok.out);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && (line[0] >= '0' && line[0] <= '9')) ++rows;
    CHECK(rows == 9);

    const auto fail = run_cli("validate --tol-factor 1e-12");
    CHECK(fail.exit_code == 7);
    CHECK(fail.out.find("overall: FAIL") != std::string::npos);
}

TEST_CASE("outage reports branch, support provenance and mc agreement") {
    const auto path = write_scenario("mid4.scn", kMidScenario);
    const auto r = run_cli("outage --scenario " + path.string() + " --mc");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("branch = C2") != std::string::npos);
    CHECK(r.out.find("upper:(relevance-bound)") != std::string::npos);
    CHECK(r.out.find("agreement = PASS") != std::string::npos);

    // Zero rate threshold: never in outage.
    const auto served = write_scenario(
        "served.scn",
        "beam_waist = 2\naperture_radius = 2\nshadow_radius = 2\nshadow_offset = 0\n"
        "tx_power = 1\nnoise_power = 1\nrate_threshold = 0\n");
    const auto r1 = run_cli("outage --scenario " + served.string());
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("P_o = 0\n") != std::string::npos);
    CHECK(r1.out.find("branch = C1") != std::string::npos);

    // Saturating threshold: certain outage.
    const auto out = write_scenario(
        "out.scn",
        "beam_waist = 2\naperture_radius = 2\nshadow_radius = 2\nshadow_offset = 0\n"
        "tx_power = 1\nnoise_power = 1\nrate_threshold = 4\n");
    const auto r2 = run_cli("outage --scenario " + out.string());
    CHECK(r2.exit_code == 0);
    CHECK(r2.out.find("P_o = 1\n") != std::string::npos);
    CHECK(r2.out.find("branch = C3") != std::string::npos);
}

TEST_CASE("bounds prints provenance and honors --a2") {
    const auto path = write_scenario("mid5.scn", kMidScenario);
    const auto r = run_cli("bounds --scenario " + path.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("support.lower = 0 (clamped)") != std::string::npos);
    CHECK(r.out.find("support.upper = 4 (relevance-bound)") != std::string::npos);

    const auto user = run_cli("bounds --scenario " + path.string() + " --a2 5");
    CHECK(user.exit_code == 0);
    CHECK(user.out.find("support.upper = 5 (user)") != std::string::npos);
}

TEST_CASE("sampling overrides reach the estimator") {
    const auto path = write_scenario("mid7.scn", kMidScenario);
    const std::string base = "hb --json --method monte-carlo --scenario " + path.string();
    const auto a = run_cli(base + " --samples 5000 --seed 7");
    const auto b = run_cli(base + " --samples 5000 --seed 7");
    const auto c = run_cli(base + " --samples 5000 --seed 8");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("every command is byte-identical across reruns") {
    const auto path = write_scenario("mid6.scn", kMidScenario);
    const auto out_csv = work_dir() / "determinism.csv";
    const std::string commands[] = {
        "hb --scenario " + path.string(),
        "hb --json --method exact,monte-carlo --scenario " + path.string(),
        "sweep --scenario " + path.string() +
            " --var r --start 0 --stop 4 --steps 7 --method theorem-2,monte-carlo --out " +
            out_csv.string(),
        "validate",
        "outage --mc --scenario " + path.string(),
        "bounds --scenario " + path.string(),
    };
    for (const auto& cmd : commands) {
        CAPTURE(cmd);
        const auto first = run_cli(cmd);
        const std::string first_csv = read_file(out_csv);
        const auto second = run_cli(cmd);
        const std::string second_csv = read_file(out_csv);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.out == second.out);
        CHECK(first_csv == second_csv);
    }
}
