#include "blockage/exact.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace blockage {

double collected_fraction(double beam_waist, double aperture_radius) {
    const double e = std::erf(std::numbers::sqrt2 * aperture_radius / beam_waist);
    return e * e;
}

double collected_fraction_unblocked(const ValidatedScenario& s) {
    return collected_fraction(s.scenario.beam_waist, s.scenario.aperture_radius);
}

BlockageResult shadow_integral_exact(const ValidatedScenario& s, const QuadratureConfig& q) {
    const double w = s.scenario.beam_waist;
    const double ab = s.scenario.shadow_radius;
    const double r = s.scenario.shadow_offset;

    if (ab == 0.0) return {0.0, Method::exact_quadrature, 0.0};

    // One-dimensional reduced integrand over the shadow chord, with the
    // substitution x = ab*sin(t) so the endpoint square-root behaviour of the
    // chord half-length sqrt(ab^2 - x^2) = ab*cos(t) becomes smooth.
    const double prefactor = std::sqrt(2.0 / std::numbers::pi) / w;
    const double inv_w = 1.0 / w;
    auto integrand = [=](double t) {
        const double ct = std::cos(t);
        const double x = ab * std::sin(t);
        const double dx = (x - r) * inv_w;
        return std::exp(-2.0 * dx * dx) *
               std::erf(std::numbers::sqrt2 * ab * ct * inv_w) * ab * ct;
    };

    // Bracket the chord to where the Gaussian factor is alive (10 waists is
    // exp(-200) ~ 1e-87 of the peak). A beam far narrower than the shadow is
    // then an O(1) feature of the shrunken panel instead of a needle that an
    // open rule can lose on a panel boundary.
    const double x_lo = std::fmax(-ab, r - 10.0 * w);
    const double x_hi = std::fmin(ab, r + 10.0 * w);
    if (!(x_lo < x_hi)) return {0.0, Method::exact_quadrature, 0.0};
    const double t_lo = std::asin(x_lo / ab);
    const double t_hi = std::asin(x_hi / ab);
    QuadratureOutcome out = integrate_adaptive(integrand, t_lo, t_hi, q);
    out.value *= prefactor;
    out.error_bound *= prefactor;
    if (!out.converged) {
        throw ConvergenceError("shadow integral did not converge: achieved error " +
                                   std::to_string(out.error_bound) + " after " +
                                   std::to_string(out.subdivisions) + " subdivisions",
                               out);
    }
    return {clamp_unit(out.value, 1e-9), Method::exact_quadrature, out.error_bound};
}

BlockageResult geometric_spread_exact(const ValidatedScenario& s, const QuadratureConfig& q) {
    const BlockageResult ib = shadow_integral_exact(s, q);
    const double i = collected_fraction_unblocked(s);
    // Spread values outside [0,1] arise when the shadow is larger than the
    // aperture; they are clamped silently, in contrast to the shadow integral
    // itself which is a probability fraction by construction.
    double h = i - ib.value;
    h = h < 0.0 ? 0.0 : (h > 1.0 ? 1.0 : h);
    return {h, Method::exact_quadrature, ib.error_estimate};
}

}  // namespace blockage
