#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "blockage/geometry.hpp"
#include "blockage/oracles.hpp"
#include "blockage/outage.hpp"
#include "blockage/quadrature.hpp"

namespace blockage {

// Scenario files are keyed text, one `key = value` per line, `#` comments.
// Length values take an optional unit suffix (m, cm, mm; default m), powers
// take W or mW (default W). Keys:
//   beam_waist, aperture_radius, shadow_radius, shadow_offset   (required)
//   tx_power, noise_power, rate_threshold                       (outage inputs)
//   support_upper                                               (support override)
//   abs_tol, rel_tol, max_subdivisions, samples, seed           (solver knobs)
// Unknown keys are rejected; missing required keys are reported by name.
struct ScenarioFile {
    LinkScenario scenario;
    std::optional<OutageParams> outage;
    std::optional<double> support_upper;
    QuadratureConfig quadrature;
    McConfig mc;
};

class ScenarioParseError : public std::runtime_error {
public:
    ScenarioParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    explicit ScenarioParseError(const std::string& message)
        : std::runtime_error(message), line_(0) {}
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario_file(const std::string& path);

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

enum class SweepVariable { offset, shadow_radius, snr_db, rate_threshold };
std::string_view sweep_variable_name(SweepVariable v);  // "r", "alpha_b", "snr_db", "r_th"
std::optional<SweepVariable> sweep_variable_from_name(std::string_view name);

struct SweepSpec {
    SweepVariable variable = SweepVariable::offset;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
    std::vector<Method> methods;
};

void validate(const SweepSpec& spec);

// One row per grid point: the axis value followed by one column per method.
// Geometry sweeps (r, alpha_b) tabulate the geometric spread; link sweeps
// (snr_db, r_th) tabulate the outage probability, where "theorem-2" is the
// closed form and every other method is a Monte Carlo estimate driven by that
// spread model.
struct SweepTable {
    std::string variable;
    std::vector<std::string> columns;
    std::vector<double> axis;
    std::vector<std::vector<double>> rows;  // rows[i][j] = column j at axis i
};

SweepTable run_sweep(const ScenarioFile& file, const SweepSpec& spec);

// Comma-separated, header row, LF endings, shortest round-trip decimals.
std::string to_csv(const SweepTable& table);
SweepTable parse_csv(const std::string& text);  // inverse of to_csv

}  // namespace blockage
