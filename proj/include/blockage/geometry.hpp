#pragma once

#include <optional>
#include <string_view>

namespace blockage {

// Evaluation route for the shadow integral / geometric spread.
enum class Method {
    exact_quadrature,
    theorem1,
    theorem2,
    monte_carlo,
};

// Long-form tag ("exact-quadrature", ...) used in reports.
std::string_view method_name(Method m);
// Short CLI spelling ("exact", "theorem-1", "theorem-2", "monte-carlo").
std::string_view method_cli_name(Method m);
std::optional<Method> method_from_cli_name(std::string_view name);

// Geometry of one link instant at the receiver plane. All lengths in meters.
struct LinkScenario {
    double beam_waist = 0.0;       // Gaussian beam waist at the RX plane, > 0
    double aperture_radius = 0.0;  // circular detection aperture radius, > 0
    double shadow_radius = 0.0;    // blocker shadow radius, >= 0
    double shadow_offset = 0.0;    // beam center to shadow center distance, >= 0
};

// A LinkScenario that passed validate_scenario, annotated with whether the
// blocker can influence reception at all (shadow_offset - shadow_radius <
// aperture_radius).
struct ValidatedScenario {
    LinkScenario scenario;
    bool blocker_relevant = false;
};

// Rejects non-finite values and values outside the documented ranges with a
// std::domain_error naming the offending field. Idempotent.
ValidatedScenario validate_scenario(const LinkScenario& s);
ValidatedScenario validate_scenario(const ValidatedScenario& s);

// A shadow-integral or geometric-spread value in [0,1] with its provenance.
struct BlockageResult {
    double value = 0.0;
    Method method = Method::exact_quadrature;
    double error_estimate = 0.0;  // quadrature bound or MC standard error; 0 for closed forms
};

// Clamps `value` to [0,1]. A violation larger than `max_violation` indicates a
// real defect rather than floating-point noise and raises std::domain_error.
double clamp_unit(double value, double max_violation);

}  // namespace blockage
