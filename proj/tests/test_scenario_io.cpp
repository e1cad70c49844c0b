#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "blockage/scenario_io.hpp"

using namespace blockage;

TEST_CASE("scenario parsing with units and defaults") {
    const std::string text =
        "# link geometry\n"
        "beam_waist = 2 cm\n"
        "aperture_radius = 20mm\n"
        "shadow_radius = 0.01\n"
        "shadow_offset = 0 m\n"
        "tx_power = 100 mW\n"
        "noise_power = 1e-3 W\n"
        "rate_threshold = 1.5\n";
    const ScenarioFile f = parse_scenario_text(text);
    CHECK(f.scenario.beam_waist == doctest::Approx(0.02));
    CHECK(f.scenario.aperture_radius == doctest::Approx(0.02));
    CHECK(f.scenario.shadow_radius == doctest::Approx(0.01));
    CHECK(f.scenario.shadow_offset == 0.0);
    REQUIRE(f.outage.has_value());
    CHECK(f.outage->tx_power == doctest::Approx(0.1));
    CHECK(f.outage->noise_power == doctest::Approx(1e-3));
    CHECK(f.outage->rate_threshold == doctest::Approx(1.5));
    // solver defaults
    CHECK(f.quadrature.abs_tol == 1e-10);
    CHECK(f.quadrature.rel_tol == 1e-10);
    CHECK(f.quadrature.max_subdivisions == 200);
    CHECK(f.mc.samples == 1'000'000);
    CHECK(f.mc.seed == 42);
    CHECK_FALSE(f.support_upper.has_value());
}

TEST_CASE("parse errors carry the offending line") {
    const std::string bad =
        "beam_waist = 1\n"
        "aperture_radius = banana\n";
    try {
        (void)parse_scenario_text(bad);
        FAIL("expected ScenarioParseError");
    } catch (const ScenarioParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("banana") != std::string::npos);
    }
}

TEST_CASE("unknown, duplicate and missing keys are rejected by name") {
    CHECK_THROWS_WITH_AS((void)parse_scenario_text("beam_waist = 1\nwaist = 2\n"),
                         "line 2: unknown key 'waist'", ScenarioParseError);
    CHECK_THROWS_WITH_AS((void)parse_scenario_text("beam_waist = 1\nbeam_waist = 2\n"),
                         "line 2: duplicate key 'beam_waist'", ScenarioParseError);
    try {
        (void)parse_scenario_text("beam_waist = 1\naperture_radius = 1\nshadow_radius = 1\n");
        FAIL("expected ScenarioParseError");
    } catch (const ScenarioParseError& e) {
        CHECK(std::string(e.what()).find("shadow_offset") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_scenario_text("beam_waist = 1\naperture_radius = 1\n"
                                              "shadow_radius = 1\nshadow_offset = 0\n"
                                              "tx_power = 1\n"),
                    ScenarioParseError);  // outage keys are all-or-none
    CHECK_THROWS_AS((void)parse_scenario_text("beam_waist = 1 km\n"), ScenarioParseError);
}

TEST_CASE("missing file maps to an io error") {
    CHECK_THROWS_AS((void)load_scenario_file("/nonexistent/path.scn"), IoError);
}

TEST_CASE("format_double emits shortest round-trip decimals") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
    for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, 2.2250738585072014e-308}) {
        const std::string text = format_double(v);
        CHECK(std::stod(text) == v);
    }
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec;
    spec.methods = {Method::theorem2};
    spec.start = 1.0;
    spec.stop = 0.0;
    CHECK_THROWS_AS(validate(spec), std::domain_error);
    spec.stop = 2.0;
    spec.steps = 1;
    CHECK_THROWS_AS(validate(spec), std::domain_error);
    spec.steps = 2;
    spec.methods.clear();
    CHECK_THROWS_AS(validate(spec), std::domain_error);
}

namespace {

ScenarioFile mid_scenario() {
    return parse_scenario_text(
        "beam_waist = 2\naperture_radius = 2\nshadow_radius = 2\nshadow_offset = 0\n"
        "tx_power = 10\nnoise_power = 1\nrate_threshold = 1\nsamples = 20000\n");
}

}  // namespace

TEST_CASE("offset sweep produces monotone spreads and exact row counts") {
    SweepSpec spec{SweepVariable::offset, 0.0, 6.0, 13,
                   {Method::exact_quadrature, Method::theorem1, Method::theorem2,
                    Method::monte_carlo}};
    const SweepTable table = run_sweep(mid_scenario(), spec);
    CHECK(table.variable == "r");
    CHECK(table.axis.size() == 13);
    CHECK(table.rows.size() == 13);
    CHECK(table.columns.size() == 4);
    for (std::size_t col = 0; col < table.columns.size(); ++col) {
        for (std::size_t i = 1; i < table.rows.size(); ++i) {
            CAPTURE(table.columns[col]);
            CAPTURE(i);
            CHECK(table.rows[i][col] >= table.rows[i - 1][col] - 1e-9);
        }
    }
}

TEST_CASE("shadow-radius sweep is nonincreasing for every method") {
    SweepSpec spec{SweepVariable::shadow_radius, 0.1, 3.0, 12,
                   {Method::exact_quadrature, Method::theorem1, Method::theorem2,
                    Method::monte_carlo}};
    const SweepTable table = run_sweep(mid_scenario(), spec);
    CHECK(table.variable == "alpha_b");
    for (std::size_t col = 0; col < table.columns.size(); ++col) {
        for (std::size_t i = 1; i < table.rows.size(); ++i) {
            CAPTURE(table.columns[col]);
            CHECK(table.rows[i][col] <= table.rows[i - 1][col] + 1e-9);
        }
    }
}

TEST_CASE("minimal two-step sweep emits exactly two rows") {
    SweepSpec spec{SweepVariable::offset, 0.0, 1.0, 2, {Method::theorem2}};
    const SweepTable table = run_sweep(mid_scenario(), spec);
    CHECK(table.rows.size() == 2);
}

TEST_CASE("link sweeps tabulate outage probabilities") {
    SweepSpec spec{SweepVariable::snr_db, 0.0, 20.0, 5,
                   {Method::theorem2, Method::monte_carlo}};
    const SweepTable table = run_sweep(mid_scenario(), spec);
    CHECK(table.variable == "snr_db");
    for (const auto& row : table.rows)
        for (double v : row) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }

    // Outage falls with SNR for both the closed form and the estimate.
    for (std::size_t col = 0; col < table.columns.size(); ++col)
        for (std::size_t i = 1; i < table.rows.size(); ++i)
            CHECK(table.rows[i][col] <= table.rows[i - 1][col] + 1e-9);

    ScenarioFile no_outage = mid_scenario();
    no_outage.outage.reset();
    CHECK_THROWS_AS((void)run_sweep(no_outage, spec), std::domain_error);
}

TEST_CASE("csv round-trips bit for bit") {
    SweepSpec spec{SweepVariable::offset, 0.0, 5.0, 9,
                   {Method::theorem1, Method::theorem2}};
    const SweepTable table = run_sweep(mid_scenario(), spec);
    const std::string csv = to_csv(table);

    CHECK(csv.find('\r') == std::string::npos);
    CHECK(csv.substr(0, csv.find('\n')) == "r,theorem-1,theorem-2");

    const SweepTable parsed = parse_csv(csv);
    REQUIRE(parsed.axis.size() == table.axis.size());
    for (std::size_t i = 0; i < table.axis.size(); ++i) {
        CHECK(std::memcmp(&parsed.axis[i], &table.axis[i], sizeof(double)) == 0);
        for (std::size_t j = 0; j < table.columns.size(); ++j)
            CHECK(std::memcmp(&parsed.rows[i][j], &table.rows[i][j], sizeof(double)) == 0);
    }
}
