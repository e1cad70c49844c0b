#pragma once

#include <cstdint>
#include <string>

#include "blockage/geometry.hpp"
#include "blockage/outage.hpp"
#include "blockage/quadrature.hpp"

namespace blockage {

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
};

void validate(const McConfig& c);

// Monte Carlo shadow integral: beam power over the shadow disk, estimated by
// uniform disk sampling (inverse-CDF in radius). Deterministic given seed;
// error_estimate is the standard error of the mean.
BlockageResult mc_shadow_integral(const ValidatedScenario& s, const McConfig& c);

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Empirical outage probability: offsets drawn Uniform[lower, upper], capacity
// evaluated with the requested spread method, fraction below the rate
// threshold reported with its binomial standard error.
McEstimate mc_outage(const ValidatedScenario& s, const OutageParams& p,
                     const UniformOffsetModel& m, const McConfig& c, Method hb_method,
                     const QuadratureConfig& q = {});

// Offset grid in units of the shadow radius.
struct GridSpec {
    double start = 0.0;
    double stop = 6.0;
    int points = 121;
};

struct ErrorReport {
    double mse = 0.0;
    double nmse = 0.0;  // mse / mean(exact^2) over the same grid
    double max_abs_error = 0.0;
    std::string grid;
};

// Error of a closed form against the exact quadrature over the offset grid,
// with the shadow radius normalized to 1 and beam waist = wd_over_ab.
// Method::exact_quadrature compares the exact route against itself.
ErrorReport approximation_error_sweep(double wd_over_ab, Method method,
                                      const GridSpec& grid = {},
                                      const QuadratureConfig& q = {});

}  // namespace blockage
