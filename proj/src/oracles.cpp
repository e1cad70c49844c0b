#include "blockage/oracles.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "blockage/approx.hpp"
#include "blockage/exact.hpp"
#include "blockage/kernels.hpp"
#include "blockage/rng.hpp"

namespace blockage {

void validate(const McConfig& c) {
    if (c.samples == 0) throw std::domain_error("samples must be >= 1");
}

BlockageResult mc_shadow_integral(const ValidatedScenario& s, const McConfig& c) {
    validate(c);
    if (!(s.scenario.shadow_radius > 0.0))
        throw std::domain_error("shadow_radius must be positive for Monte Carlo sampling");

    const kernels::McMoments m =
        kernels::mc_disk_gaussian(s.scenario.beam_waist, s.scenario.shadow_radius,
                                  s.scenario.shadow_offset, c.samples, c.seed);
    // Sampling noise may overshoot the unit interval near saturation; allow a
    // clamp of a few standard errors before treating it as a defect.
    const double value = clamp_unit(m.value, 1e-9 + 4.0 * m.std_error);
    return {value, Method::monte_carlo, m.std_error};
}

McEstimate mc_outage(const ValidatedScenario& s, const OutageParams& p,
                     const UniformOffsetModel& m, const McConfig& c, Method hb_method,
                     const QuadratureConfig& q) {
    validate(c);
    validate(p);
    if (!(m.support.upper > m.support.lower))
        throw std::domain_error("support upper bound must exceed lower bound");

    // Capacity is monotone in the spread, so "capacity <= rate threshold" is
    // the single comparison spread <= (2^r_th - 1) * noise / power; using the
    // threshold form keeps the indicator identical across backends.
    const double spread_floor = (snr_threshold(p) - 1.0) * p.noise_power / p.tx_power;
    const double n = static_cast<double>(c.samples);

    std::uint64_t count = 0;
    if (hb_method == Method::theorem2) {
        const Theorem2Coefficients coeff = theorem2_coefficients(s);
        const double collected = collected_fraction_unblocked(s);
        count = kernels::mc_count_outage_theorem2(m.support.lower, m.support.upper, collected,
                                                  coeff.peak, coeff.decay_rate, spread_floor,
                                                  c.samples, c.seed);
    } else {
        const Philox4x32 rng{c.seed};
        ValidatedScenario draw = s;
        const double range = m.support.upper - m.support.lower;
        for (std::uint64_t i = 0; i < c.samples; ++i) {
            draw.scenario.shadow_offset =
                std::fma(rng.uniform(i), range, m.support.lower);
            double spread = 0.0;
            switch (hb_method) {
                case Method::exact_quadrature:
                    spread = geometric_spread_exact(draw, q).value;
                    break;
                case Method::theorem1:
                    spread = geometric_spread_theorem1(draw).value;
                    break;
                default:
                    throw std::domain_error("mc_outage spread method must be deterministic");
            }
            if (spread <= spread_floor) ++count;
        }
    }

    const double p_hat = static_cast<double>(count) / n;
    const double std_error = std::sqrt(p_hat * (1.0 - p_hat) / n);
    return {p_hat, std_error};
}

ErrorReport approximation_error_sweep(double wd_over_ab, Method method, const GridSpec& grid,
                                      const QuadratureConfig& q) {
    if (!(wd_over_ab > 0.0) || !std::isfinite(wd_over_ab))
        throw std::domain_error("wd_over_ab must be positive and finite");
    if (grid.points < 2) throw std::domain_error("grid must have at least 2 points");
    if (!(grid.stop > grid.start)) throw std::domain_error("grid stop must exceed start");
    if (method == Method::monte_carlo)
        throw std::domain_error("error sweep compares deterministic routes only");

    const double step = (grid.stop - grid.start) / (grid.points - 1);
    double sq_sum = 0.0;
    double exact_sq_sum = 0.0;
    double max_abs = 0.0;

    for (int i = 0; i < grid.points; ++i) {
        const double offset = grid.start + step * i;
        const ValidatedScenario s =
            validate_scenario(LinkScenario{wd_over_ab, 1.0, 1.0, offset});
        const double exact = shadow_integral_exact(s, q).value;
        double approx = exact;
        switch (method) {
            case Method::theorem1: approx = shadow_integral_theorem1(s).value; break;
            case Method::theorem2: approx = shadow_integral_theorem2(s).value; break;
            case Method::exact_quadrature: break;
            case Method::monte_carlo: break;  // rejected above
        }
        const double diff = approx - exact;
        sq_sum += diff * diff;
        exact_sq_sum += exact * exact;
        max_abs = std::fmax(max_abs, std::fabs(diff));
    }

    ErrorReport report;
    report.mse = sq_sum / grid.points;
    const double exact_mean_sq = exact_sq_sum / grid.points;
    report.nmse = exact_mean_sq > 0.0 ? report.mse / exact_mean_sq : 0.0;
    report.max_abs_error = max_abs;
    report.grid = std::to_string(grid.points) + " uniform offsets in [" +
                  std::to_string(grid.start) + ", " + std::to_string(grid.stop) +
                  "] shadow radii";
    return report;
}

}  // namespace blockage
