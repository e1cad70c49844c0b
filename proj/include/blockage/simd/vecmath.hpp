#pragma once

#include <limits>

#include "blockage/simd/pack.hpp"

// Width-generic exp and cos built only from pack operations, so every lane is
// bit-identical between the scalar and AVX2 instantiations. Polynomials use
// exact reciprocal-factorial coefficients; accuracy lands within a couple of
// ulp of libm (checked by tests), far inside the statistical tolerances of the
// Monte Carlo estimators these back.

namespace blockage::simd {

namespace detail {

// 1.5 * 2^52: adding and subtracting rounds to the nearest integer for
// |x| < 2^51 under round-to-nearest-even.
inline constexpr double kRoundMagic = 6755399441055744.0;

template <class P>
P round_nearest(P x) {
    const P magic = P::broadcast(kRoundMagic);
    return (x + magic) - magic;
}

template <class P>
P clamp(P x, double lo, double hi) {
    x = select(cmp_lt(x, P::broadcast(lo)), P::broadcast(lo), x);
    x = select(cmp_gt(x, P::broadcast(hi)), P::broadcast(hi), x);
    return x;
}

}  // namespace detail

// exp(x) for finite x; underflows to 0 below -708.39..., +inf above 709.78...
template <class P>
P exp_pd(P x) {
    const P log2e = P::broadcast(1.4426950408889634074);  // 1/ln(2)
    const P ln2_hi = P::broadcast(6.93147180369123816490e-01);
    const P ln2_lo = P::broadcast(1.90821492927058770002e-10);

    const P xc = detail::clamp(x, -710.0, 710.0);
    const P n = detail::round_nearest(xc * log2e);
    P t = fmadd(n, negate(ln2_hi), xc);
    t = fmadd(n, negate(ln2_lo), t);

    // exp(t) on |t| <= ln(2)/2 by degree-14 Taylor (truncation ~1e-19 relative).
    P p = P::broadcast(1.1470745597729725e-11);  // 1/14!
    p = fmadd(p, t, P::broadcast(1.6059043836821613e-10));
    p = fmadd(p, t, P::broadcast(2.08767569878681e-9));
    p = fmadd(p, t, P::broadcast(2.505210838544172e-8));
    p = fmadd(p, t, P::broadcast(2.755731922398589e-7));
    p = fmadd(p, t, P::broadcast(2.7557319223985893e-6));
    p = fmadd(p, t, P::broadcast(2.48015873015873e-5));
    p = fmadd(p, t, P::broadcast(1.984126984126984e-4));
    p = fmadd(p, t, P::broadcast(1.388888888888889e-3));
    p = fmadd(p, t, P::broadcast(8.333333333333333e-3));
    p = fmadd(p, t, P::broadcast(4.1666666666666664e-2));
    p = fmadd(p, t, P::broadcast(1.6666666666666666e-1));
    p = fmadd(p, t, P::broadcast(0.5));
    p = fmadd(p, t, P::broadcast(1.0));
    p = fmadd(p, t, P::broadcast(1.0));

    P result = p * exp2_integral(n);
    result = select(cmp_lt(x, P::broadcast(-708.39641853226408)), P::broadcast(0.0), result);
    result = select(cmp_gt(x, P::broadcast(709.78271289338397)),
                    P::broadcast(std::numeric_limits<double>::infinity()), result);
    return result;
}

// cos(theta) for theta in [0, 2*pi). The quadrant count stays in {0,...,4},
// so a two-part Cody-Waite reduction by pi/2 is exact to ~1e-27.
template <class P>
P cos_pd(P theta) {
    const P two_over_pi = P::broadcast(0.63661977236758134308);
    const P pio2_hi = P::broadcast(1.57079632673412561417e+00);
    const P pio2_lo = P::broadcast(6.07710050650619224932e-11);

    const P q = detail::round_nearest(theta * two_over_pi);
    P r = fmadd(q, negate(pio2_hi), theta);
    r = fmadd(q, negate(pio2_lo), r);
    const P z = r * r;

    // cos(r), |r| <= pi/4: sum (-1)^k z^k / (2k)!, k = 0..10.
    P c = P::broadcast(4.110317623312165e-19);
    c = fmadd(c, z, P::broadcast(-1.5619206968586225e-16));
    c = fmadd(c, z, P::broadcast(4.779477332387385e-14));
    c = fmadd(c, z, P::broadcast(-1.1470745597729725e-11));
    c = fmadd(c, z, P::broadcast(2.08767569878681e-9));
    c = fmadd(c, z, P::broadcast(-2.755731922398589e-7));
    c = fmadd(c, z, P::broadcast(2.48015873015873e-5));
    c = fmadd(c, z, P::broadcast(-1.388888888888889e-3));
    c = fmadd(c, z, P::broadcast(4.1666666666666664e-2));
    c = fmadd(c, z, P::broadcast(-0.5));
    c = fmadd(c, z, P::broadcast(1.0));

    // sin(r)/r: sum (-1)^k z^k / (2k+1)!, k = 0..9; then scale by r.
    P s = P::broadcast(-8.22063524662433e-18);  // -1/19!
    s = fmadd(s, z, P::broadcast(2.8114572543455206e-15));
    s = fmadd(s, z, P::broadcast(-7.647163731819816e-13));
    s = fmadd(s, z, P::broadcast(1.6059043836821613e-10));
    s = fmadd(s, z, P::broadcast(-2.505210838544172e-8));
    s = fmadd(s, z, P::broadcast(2.7557319223985893e-6));
    s = fmadd(s, z, P::broadcast(-1.984126984126984e-4));
    s = fmadd(s, z, P::broadcast(8.333333333333333e-3));
    s = fmadd(s, z, P::broadcast(-1.6666666666666666e-1));
    s = fmadd(s, z, P::broadcast(1.0));
    s = s * r;

    const P q1 = P::broadcast(1.0), q2 = P::broadcast(2.0), q3 = P::broadcast(3.0);
    return select(cmp_eq(q, q1), negate(s),
                  select(cmp_eq(q, q2), negate(c), select(cmp_eq(q, q3), s, c)));
}

}  // namespace blockage::simd
