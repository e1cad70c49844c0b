#include "blockage/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blockage {

std::string_view method_name(Method m) {
    switch (m) {
        case Method::exact_quadrature: return "exact-quadrature";
        case Method::theorem1: return "theorem-1";
        case Method::theorem2: return "theorem-2";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

std::string_view method_cli_name(Method m) {
    switch (m) {
        case Method::exact_quadrature: return "exact";
        case Method::theorem1: return "theorem-1";
        case Method::theorem2: return "theorem-2";
        case Method::monte_carlo: return "monte-carlo";
    }
    return "unknown";
}

std::optional<Method> method_from_cli_name(std::string_view name) {
    if (name == "exact" || name == "exact-quadrature") return Method::exact_quadrature;
    if (name == "theorem-1") return Method::theorem1;
    if (name == "theorem-2") return Method::theorem2;
    if (name == "monte-carlo") return Method::monte_carlo;
    return std::nullopt;
}

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::domain_error(message);
}

}  // namespace

ValidatedScenario validate_scenario(const LinkScenario& s) {
    require(std::isfinite(s.beam_waist), "beam_waist must be finite");
    require(std::isfinite(s.aperture_radius), "aperture_radius must be finite");
    require(std::isfinite(s.shadow_radius), "shadow_radius must be finite");
    require(std::isfinite(s.shadow_offset), "shadow_offset must be finite");
    require(s.beam_waist > 0.0, "beam_waist must be positive");
    require(s.aperture_radius > 0.0, "aperture_radius must be positive");
    require(s.shadow_radius >= 0.0, "shadow_radius must be nonnegative");
    require(s.shadow_offset >= 0.0, "shadow_offset must be nonnegative");

    const bool relevant = s.shadow_offset - s.shadow_radius < s.aperture_radius;
    return ValidatedScenario{s, relevant};
}

ValidatedScenario validate_scenario(const ValidatedScenario& s) {
    return validate_scenario(s.scenario);
}

double clamp_unit(double value, double max_violation) {
    if (value < 0.0) {
        if (-value > max_violation)
            throw std::domain_error("value below 0 by " + std::to_string(-value) +
                                    ", exceeds clamp guard");
        return 0.0;
    }
    if (value > 1.0) {
        if (value - 1.0 > max_violation)
            throw std::domain_error("value above 1 by " + std::to_string(value - 1.0) +
                                    ", exceeds clamp guard");
        return 1.0;
    }
    return value;
}

}  // namespace blockage
