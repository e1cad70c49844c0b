#pragma once

#include <string_view>

#include "blockage/approx.hpp"
#include "blockage/geometry.hpp"
#include "blockage/quadrature.hpp"

namespace blockage {

// Link-budget inputs for the outage analysis.
struct OutageParams {
    double tx_power = 1.0;        // watts, > 0
    double noise_power = 1.0;     // watts, > 0
    double rate_threshold = 0.0;  // bits/s/Hz, >= 0
};

void validate(const OutageParams& p);

// SNR-domain threshold 2^rate_threshold; >= 1, == 1 iff rate_threshold == 0.
double snr_threshold(const OutageParams& p);

// Instantaneous capacity log2(1 + h_b * tx_power / noise_power) with the
// geometric spread evaluated by the chosen deterministic method.
double capacity(const ValidatedScenario& s, const OutageParams& p, Method method,
                const QuadratureConfig& q = {});

// Uniform shadow-offset distribution over the effective support.
struct UniformOffsetModel {
    UniformSupport support;
};

double uniform_pdf(double x, const UniformOffsetModel& m);
double uniform_cdf(double x, const UniformOffsetModel& m);

// Offset radius below which the link is in outage under the theorem-2 spread.
// The boundary regimes are markers, not errors: the outage event may be empty
// (always served) or certain (always out) for every offset.
struct ThresholdRadius {
    enum class Kind { always_served, always_out, finite };
    Kind kind = Kind::finite;
    double radius = 0.0;  // meaningful for Kind::finite; 0 otherwise
};

ThresholdRadius outage_threshold_radius(const ValidatedScenario& s, const OutageParams& p);

// Piece of the closed-form outage expression that fired.
enum class OutageBranch { c1, c2, c3 };
std::string_view branch_name(OutageBranch b);

struct OutageEvaluation {
    double probability = 0.0;
    OutageBranch branch = OutageBranch::c1;
    ThresholdRadius threshold;
};

// Closed-form outage probability: the CDF of the uniform offset evaluated at
// the threshold radius, with the boundary markers mapping to 0 and 1.
OutageEvaluation outage_probability(const ValidatedScenario& s, const OutageParams& p,
                                    const UniformOffsetModel& m);

}  // namespace blockage
