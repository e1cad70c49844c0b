#include "blockage/scenario_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "blockage/approx.hpp"
#include "blockage/exact.hpp"

namespace blockage {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, int line) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ScenarioParseError(line, "malformed number: '" + text + "'");
    return value;
}

// Splits "1.5 cm" / "1.5cm" into the number and its suffix.
std::pair<std::string, std::string> split_unit(const std::string& text) {
    auto pos = text.find_first_not_of("+-0123456789.eE");
    if (pos == std::string::npos || pos == 0) return {text, ""};
    return {trim(text.substr(0, pos)), trim(text.substr(pos))};
}

double parse_length(const std::string& text, int line) {
    const auto [num, unit] = split_unit(text);
    const double v = parse_number(num, line);
    if (unit.empty() || unit == "m") return v;
    if (unit == "cm") return v * 1e-2;
    if (unit == "mm") return v * 1e-3;
    throw ScenarioParseError(line, "unknown length unit: '" + unit + "'");
}

double parse_power(const std::string& text, int line) {
    const auto [num, unit] = split_unit(text);
    const double v = parse_number(num, line);
    if (unit.empty() || unit == "W") return v;
    if (unit == "mW") return v * 1e-3;
    throw ScenarioParseError(line, "unknown power unit: '" + unit + "'");
}

std::uint64_t parse_unsigned(const std::string& text, int line) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw ScenarioParseError(line, "malformed integer: '" + text + "'");
    return value;
}

}  // namespace

ScenarioFile parse_scenario_text(const std::string& text) {
    ScenarioFile file;
    std::set<std::string> seen;
    std::optional<double> tx_power, noise_power, rate_threshold;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ScenarioParseError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ScenarioParseError(line_no, "empty key");
        if (value.empty()) throw ScenarioParseError(line_no, "empty value for '" + key + "'");
        if (!seen.insert(key).second)
            throw ScenarioParseError(line_no, "duplicate key '" + key + "'");

        if (key == "beam_waist") file.scenario.beam_waist = parse_length(value, line_no);
        else if (key == "aperture_radius") file.scenario.aperture_radius = parse_length(value, line_no);
        else if (key == "shadow_radius") file.scenario.shadow_radius = parse_length(value, line_no);
        else if (key == "shadow_offset") file.scenario.shadow_offset = parse_length(value, line_no);
        else if (key == "tx_power") tx_power = parse_power(value, line_no);
        else if (key == "noise_power") noise_power = parse_power(value, line_no);
        else if (key == "rate_threshold") rate_threshold = parse_number(value, line_no);
        else if (key == "support_upper") file.support_upper = parse_length(value, line_no);
        else if (key == "abs_tol") file.quadrature.abs_tol = parse_number(value, line_no);
        else if (key == "rel_tol") file.quadrature.rel_tol = parse_number(value, line_no);
        else if (key == "max_subdivisions")
            file.quadrature.max_subdivisions = static_cast<int>(parse_unsigned(value, line_no));
        else if (key == "samples") file.mc.samples = parse_unsigned(value, line_no);
        else if (key == "seed") file.mc.seed = parse_unsigned(value, line_no);
        else throw ScenarioParseError(line_no, "unknown key '" + key + "'");
    }

    for (const char* required :
         {"beam_waist", "aperture_radius", "shadow_radius", "shadow_offset"}) {
        if (!seen.contains(required))
            throw ScenarioParseError(std::string("missing required key '") + required + "'");
    }

    if (tx_power || noise_power || rate_threshold) {
        if (!(tx_power && noise_power && rate_threshold))
            throw ScenarioParseError(
                "outage parameters are all-or-none: tx_power, noise_power, rate_threshold");
        file.outage = OutageParams{*tx_power, *noise_power, *rate_threshold};
    }
    return file;
}

ScenarioFile load_scenario_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open scenario file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario_text(buffer.str());
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string_view sweep_variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::offset: return "r";
        case SweepVariable::shadow_radius: return "alpha_b";
        case SweepVariable::snr_db: return "snr_db";
        case SweepVariable::rate_threshold: return "r_th";
    }
    return "unknown";
}

std::optional<SweepVariable> sweep_variable_from_name(std::string_view name) {
    if (name == "r") return SweepVariable::offset;
    if (name == "alpha_b") return SweepVariable::shadow_radius;
    if (name == "snr_db") return SweepVariable::snr_db;
    if (name == "r_th") return SweepVariable::rate_threshold;
    return std::nullopt;
}

void validate(const SweepSpec& spec) {
    if (!(spec.start < spec.stop)) throw std::domain_error("sweep start must be below stop");
    if (spec.steps < 2) throw std::domain_error("sweep needs at least 2 steps");
    if (spec.methods.empty()) throw std::domain_error("sweep needs at least one method");
}

namespace {

double spread_for(const ScenarioFile& file, const LinkScenario& s, Method method) {
    const ValidatedScenario v = validate_scenario(s);
    switch (method) {
        case Method::exact_quadrature:
            return geometric_spread_exact(v, file.quadrature).value;
        case Method::theorem1: return geometric_spread_theorem1(v).value;
        case Method::theorem2: return geometric_spread_theorem2(v).value;
        case Method::monte_carlo: {
            if (s.shadow_radius == 0.0) return collected_fraction_unblocked(v);
            const BlockageResult ib = mc_shadow_integral(v, file.mc);
            const double h = collected_fraction_unblocked(v) - ib.value;
            return h < 0.0 ? 0.0 : (h > 1.0 ? 1.0 : h);
        }
    }
    return 0.0;
}

double outage_for(const ScenarioFile& file, const OutageParams& p, Method method) {
    const ValidatedScenario v = validate_scenario(file.scenario);
    const UniformOffsetModel model{support_bounds(v, file.support_upper)};
    if (method == Method::theorem2)
        return outage_probability(v, p, model).probability;
    const Method hb = method == Method::monte_carlo ? Method::theorem2 : method;
    return mc_outage(v, p, model, file.mc, hb, file.quadrature).value;
}

}  // namespace

SweepTable run_sweep(const ScenarioFile& file, const SweepSpec& spec) {
    validate(spec);
    SweepTable table;
    table.variable = std::string(sweep_variable_name(spec.variable));
    for (Method m : spec.methods) table.columns.emplace_back(method_cli_name(m));

    const bool link_sweep = spec.variable == SweepVariable::snr_db ||
                            spec.variable == SweepVariable::rate_threshold;
    if (link_sweep && !file.outage)
        throw std::domain_error(
            "link sweeps need tx_power, noise_power and rate_threshold in the scenario");

    const double step = (spec.stop - spec.start) / (spec.steps - 1);
    for (int i = 0; i < spec.steps; ++i) {
        const double x = spec.start + step * i;
        table.axis.push_back(x);
        std::vector<double> row;
        row.reserve(spec.methods.size());

        if (!link_sweep) {
            LinkScenario s = file.scenario;
            if (spec.variable == SweepVariable::offset) s.shadow_offset = x;
            else s.shadow_radius = x;
            for (Method m : spec.methods) row.push_back(spread_for(file, s, m));
        } else {
            OutageParams p = *file.outage;
            if (spec.variable == SweepVariable::snr_db) {
                p.noise_power = 1.0;
                p.tx_power = std::pow(10.0, x / 10.0);
            } else {
                p.rate_threshold = x;
            }
            for (Method m : spec.methods) row.push_back(outage_for(file, p, m));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string to_csv(const SweepTable& table) {
    std::string out = table.variable;
    for (const auto& c : table.columns) {
        out += ',';
        out += c;
    }
    out += '\n';
    for (std::size_t i = 0; i < table.axis.size(); ++i) {
        out += format_double(table.axis[i]);
        for (double v : table.rows[i]) {
            out += ',';
            out += format_double(v);
        }
        out += '\n';
    }
    return out;
}

SweepTable parse_csv(const std::string& text) {
    SweepTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ScenarioParseError("empty CSV");
    {
        std::istringstream header(line);
        std::string cell;
        bool first = true;
        while (std::getline(header, cell, ',')) {
            if (first) table.variable = cell, first = false;
            else table.columns.push_back(cell);
        }
    }
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        bool first = true;
        std::vector<double> row;
        while (std::getline(cells, cell, ',')) {
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc{} || ptr != cell.data() + cell.size())
                throw ScenarioParseError(line_no, "malformed CSV number: '" + cell + "'");
            if (first) table.axis.push_back(v), first = false;
            else row.push_back(v);
        }
        if (row.size() != table.columns.size())
            throw ScenarioParseError(line_no, "CSV row width mismatch");
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace blockage
