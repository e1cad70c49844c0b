#include "blockage/approx.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockage {

namespace {

// Both closed forms and the support bounds hinge on erf evaluated at
// (sqrt(pi)*ab +- 2r) / (sqrt(2)*w). The argument is built from the exact same
// expression everywhere so that theorem-1 at r = 0 reproduces the theorem-2
// peak bit for bit.
struct EqualAreaTerms {
    double side_scaled;   // sqrt(pi) * shadow_radius
    double denom;         // sqrt(2) * beam_waist
    double erf_at_zero;   // erf(side_scaled / denom)
};

EqualAreaTerms equal_area_terms(const LinkScenario& s) {
    const double side = std::sqrt(std::numbers::pi) * s.shadow_radius;
    const double denom = std::numbers::sqrt2 * s.beam_waist;
    return {side, denom, std::erf(side / denom)};
}

double clamp_silent(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

Theorem2Coefficients theorem2_coefficients(const ValidatedScenario& s) {
    const double ab = s.scenario.shadow_radius;
    const double w = s.scenario.beam_waist;
    if (!(ab > 0.0))
        throw std::domain_error("shadow_radius must be positive: decay rate undefined");

    const EqualAreaTerms t = equal_area_terms(s.scenario);
    const double u0 = t.side_scaled / t.denom;
    const double peak = t.erf_at_zero * t.erf_at_zero;
    const double curvature =
        -(std::numbers::sqrt2 * (ab / w) * t.erf_at_zero * std::exp(-u0 * u0));
    const double decay_rate = (2.0 / (w * w)) * (std::fabs(curvature) / peak);
    return {peak, curvature, decay_rate};
}

BlockageResult shadow_integral_theorem1(const ValidatedScenario& s) {
    const double r = s.scenario.shadow_offset;
    const EqualAreaTerms t = equal_area_terms(s.scenario);
    const double minus = std::erf((t.side_scaled - 2.0 * r) / t.denom);
    const double plus = std::erf((t.side_scaled + 2.0 * r) / t.denom);
    const double value = 0.5 * t.erf_at_zero * (minus + plus);
    return {clamp_silent(value), Method::theorem1, 0.0};
}

BlockageResult shadow_integral_theorem2(const ValidatedScenario& s) {
    if (s.scenario.shadow_radius == 0.0) return {0.0, Method::theorem2, 0.0};
    const Theorem2Coefficients c = theorem2_coefficients(s);
    const double r = s.scenario.shadow_offset;
    const double value = c.peak * std::exp(-c.decay_rate * (r * r));
    return {clamp_silent(value), Method::theorem2, 0.0};
}

namespace {

BlockageResult spread_from(const ValidatedScenario& s, const BlockageResult& ib) {
    const double i = collected_fraction_unblocked(s);
    return {clamp_silent(i - ib.value), ib.method, ib.error_estimate};
}

}  // namespace

BlockageResult geometric_spread_theorem1(const ValidatedScenario& s) {
    return spread_from(s, shadow_integral_theorem1(s));
}

BlockageResult geometric_spread_theorem2(const ValidatedScenario& s) {
    return spread_from(s, shadow_integral_theorem2(s));
}

std::string_view support_source_name(SupportBoundSource s) {
    switch (s) {
        case SupportBoundSource::closed_form: return "closed-form";
        case SupportBoundSource::relevance_bound: return "relevance-bound";
        case SupportBoundSource::user: return "user";
    }
    return "unknown";
}

UniformSupport support_bounds(const ValidatedScenario& s, std::optional<double> user_upper) {
    const Theorem2Coefficients c = theorem2_coefficients(s);
    const double i = collected_fraction_unblocked(s);
    const double w = s.scenario.beam_waist;

    UniformSupport out;
    if (c.peak > i) {
        // Root of the theorem-2 spread: below this offset the approximate
        // spread would be negative.
        out.lower = (w / std::numbers::sqrt2) * std::sqrt(c.peak / std::fabs(c.curvature)) *
                    std::sqrt(std::log(c.peak / i));
        out.lower_clamped = false;
    } else {
        out.lower = 0.0;
        out.lower_clamped = true;
    }

    if (user_upper) {
        if (!(*user_upper > 0.0) || !std::isfinite(*user_upper))
            throw std::domain_error("support upper bound override must be positive and finite");
        out.upper = *user_upper;
        out.upper_source = SupportBoundSource::user;
    } else {
        out.upper = s.scenario.aperture_radius + s.scenario.shadow_radius;
        out.upper_source = SupportBoundSource::relevance_bound;
    }

    if (!(out.upper > out.lower))
        throw std::domain_error("support upper bound must exceed lower bound");
    return out;
}

}  // namespace blockage
