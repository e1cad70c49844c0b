#pragma once

#include <optional>
#include <string_view>

#include "blockage/exact.hpp"
#include "blockage/geometry.hpp"
#include "blockage/quadrature.hpp"

namespace blockage {

// Coefficients of the Gaussian-profile (theorem-2) approximation
//   I_b(r) ~= peak * exp(-decay_rate * r^2).
struct Theorem2Coefficients {
    double peak = 0.0;        // shadow fraction at zero offset, in (0,1)
    double curvature = 0.0;   // dimensionless second-order coefficient, < 0
    double decay_rate = 0.0;  // Gaussian rate in 1/m^2, > 0
};

// Requires shadow_radius > 0 (the decay rate is undefined for an empty shadow).
Theorem2Coefficients theorem2_coefficients(const ValidatedScenario& s);

// Square-equal-area closed form: the shadow disk is replaced by a square of
// the same area, making the offset Gaussian integral separable.
BlockageResult shadow_integral_theorem1(const ValidatedScenario& s);

// Gaussian-profile closed form peak * exp(-decay_rate * r^2); 0 for an empty shadow.
BlockageResult shadow_integral_theorem2(const ValidatedScenario& s);

// Geometric spread h_b = I - I_b for each closed form, clamped to [0,1].
BlockageResult geometric_spread_theorem1(const ValidatedScenario& s);
BlockageResult geometric_spread_theorem2(const ValidatedScenario& s);

enum class SupportBoundSource {
    closed_form,      // from the spread-nonnegativity root
    relevance_bound,  // aperture_radius + shadow_radius
    user,             // caller override
};
std::string_view support_source_name(SupportBoundSource s);

// Effective support [lower, upper] of the uniform shadow-offset distribution.
struct UniformSupport {
    double lower = 0.0;
    double upper = 0.0;
    bool lower_clamped = false;  // true when the closed-form lower bound is not real/positive
    SupportBoundSource upper_source = SupportBoundSource::relevance_bound;
};

// Derives the support. The lower bound is the radius where the theorem-2
// spread reaches zero, when that radius is real; otherwise 0 (clamped). The
// upper bound is the caller's override when given, else the relevance bound.
// Requires shadow_radius > 0; throws if the bounds collapse (upper <= lower).
UniformSupport support_bounds(const ValidatedScenario& s,
                              std::optional<double> user_upper = std::nullopt);

}  // namespace blockage
