#pragma once

#include "blockage/geometry.hpp"
#include "blockage/quadrature.hpp"

namespace blockage {

// Fraction of beam power collected by an unblocked square-surrogate aperture:
// erf(sqrt(2) * aperture_radius / beam_waist)^2.
double collected_fraction(double beam_waist, double aperture_radius);
double collected_fraction_unblocked(const ValidatedScenario& s);

// Shadow integral evaluated by adaptive quadrature of the one-dimensional
// reduced form. Throws ConvergenceError when the subdivision budget is
// exhausted before the tolerances are met.
BlockageResult shadow_integral_exact(const ValidatedScenario& s,
                                     const QuadratureConfig& q = {});

// Geometric spread h_b = I - I_b with the exact shadow integral.
BlockageResult geometric_spread_exact(const ValidatedScenario& s,
                                      const QuadratureConfig& q = {});

}  // namespace blockage
