#include "blockage/outage.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blockage {

void validate(const OutageParams& p) {
    if (!(std::isfinite(p.tx_power) && p.tx_power > 0.0))
        throw std::domain_error("tx_power must be positive and finite");
    if (!(std::isfinite(p.noise_power) && p.noise_power > 0.0))
        throw std::domain_error("noise_power must be positive and finite");
    if (!(std::isfinite(p.rate_threshold) && p.rate_threshold >= 0.0))
        throw std::domain_error("rate_threshold must be nonnegative and finite");
}

double snr_threshold(const OutageParams& p) { return std::exp2(p.rate_threshold); }

double capacity(const ValidatedScenario& s, const OutageParams& p, Method method,
                const QuadratureConfig& q) {
    validate(p);
    double spread = 0.0;
    switch (method) {
        case Method::exact_quadrature: spread = geometric_spread_exact(s, q).value; break;
        case Method::theorem1: spread = geometric_spread_theorem1(s).value; break;
        case Method::theorem2: spread = geometric_spread_theorem2(s).value; break;
        case Method::monte_carlo:
            throw std::domain_error("capacity requires a deterministic spread method");
    }
    return std::log2(1.0 + spread * p.tx_power / p.noise_power);
}

double uniform_pdf(double x, const UniformOffsetModel& m) {
    const auto& s = m.support;
    if (x < s.lower || x > s.upper) return 0.0;
    return 1.0 / (s.upper - s.lower);
}

double uniform_cdf(double x, const UniformOffsetModel& m) {
    const auto& s = m.support;
    if (x < s.lower) return 0.0;
    if (x > s.upper) return 1.0;
    return (x - s.lower) / (s.upper - s.lower);
}

ThresholdRadius outage_threshold_radius(const ValidatedScenario& s, const OutageParams& p) {
    validate(p);
    const Theorem2Coefficients c = theorem2_coefficients(s);
    const double i = collected_fraction_unblocked(s);
    const double spread_floor = (snr_threshold(p) - 1.0) * p.noise_power / p.tx_power;

    // Outage means exp(-decay * r^2) >= y; the event is empty for y >= 1 and
    // certain for y <= 0.
    const double y = (i - spread_floor) / c.peak;
    if (y >= 1.0) return {ThresholdRadius::Kind::always_served, 0.0};
    if (y <= 0.0) return {ThresholdRadius::Kind::always_out, 0.0};

    const double radius = (s.scenario.beam_waist / std::numbers::sqrt2) *
                          std::sqrt(c.peak / std::fabs(c.curvature)) *
                          std::sqrt(std::log(1.0 / y));
    return {ThresholdRadius::Kind::finite, radius};
}

std::string_view branch_name(OutageBranch b) {
    switch (b) {
        case OutageBranch::c1: return "C1";
        case OutageBranch::c2: return "C2";
        case OutageBranch::c3: return "C3";
    }
    return "unknown";
}

OutageEvaluation outage_probability(const ValidatedScenario& s, const OutageParams& p,
                                    const UniformOffsetModel& m) {
    if (!(m.support.upper > m.support.lower))
        throw std::domain_error("support upper bound must exceed lower bound");

    const ThresholdRadius t = outage_threshold_radius(s, p);
    switch (t.kind) {
        case ThresholdRadius::Kind::always_served: return {0.0, OutageBranch::c1, t};
        case ThresholdRadius::Kind::always_out: return {1.0, OutageBranch::c3, t};
        case ThresholdRadius::Kind::finite: break;
    }

    // The three branches of the closed form are exactly the pieces of the CDF.
    if (t.radius < m.support.lower) return {0.0, OutageBranch::c1, t};
    if (t.radius > m.support.upper) return {1.0, OutageBranch::c3, t};
    return {uniform_cdf(t.radius, m), OutageBranch::c2, t};
}

}  // namespace blockage
