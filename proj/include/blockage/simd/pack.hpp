#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>
#endif

// Width-generic wrapper over IEEE double lanes. pack<1> is the scalar
// reference; pack<4> maps to AVX2. Every operation here is a single correctly
// rounded IEEE-754 operation in both widths, so code written once against this
// interface produces bit-identical lanes under either instantiation. The
// kernel equivalence tests assert that property directly.
//
// Translation units using pack must be compiled with -ffp-contract=off so the
// scalar path cannot be contracted into implicit fmas.

namespace blockage::simd {

template <int W>
struct pack;

template <int W>
struct mask;

template <>
struct mask<1> {
    bool m;
    friend mask operator|(mask a, mask b) { return {a.m || b.m}; }
    friend mask operator&(mask a, mask b) { return {a.m && b.m}; }
};

template <>
struct pack<1> {
    double v;
    static constexpr int width = 1;

    static pack broadcast(double x) { return {x}; }
    static pack load(const double* p) { return {*p}; }
    void store(double* p) const { *p = v; }

    friend pack operator+(pack a, pack b) { return {a.v + b.v}; }
    friend pack operator-(pack a, pack b) { return {a.v - b.v}; }
    friend pack operator*(pack a, pack b) { return {a.v * b.v}; }

    // a*b + c with a single rounding.
    friend pack fmadd(pack a, pack b, pack c) { return {std::fma(a.v, b.v, c.v)}; }
    friend pack sqrt(pack a) { return {std::sqrt(a.v)}; }
    friend pack negate(pack a) {
        return {std::bit_cast<double>(std::bit_cast<std::uint64_t>(a.v) ^ 0x8000000000000000ull)};
    }

    friend mask<1> cmp_lt(pack a, pack b) { return {a.v < b.v}; }
    friend mask<1> cmp_le(pack a, pack b) { return {a.v <= b.v}; }
    friend mask<1> cmp_gt(pack a, pack b) { return {a.v > b.v}; }
    friend mask<1> cmp_eq(pack a, pack b) { return {a.v == b.v}; }
    friend pack select(mask<1> m, pack if_true, pack if_false) {
        return m.m ? if_true : if_false;
    }

    // 2^n for n holding a small integral value (exponent scaling).
    friend pack exp2_integral(pack n) {
        const auto i = static_cast<std::int64_t>(n.v);
        return {std::bit_cast<double>(static_cast<std::uint64_t>(i + 1023) << 52)};
    }
};

inline int count_true(mask<1> m) { return m.m ? 1 : 0; }

#if defined(__AVX2__) && defined(__FMA__)

template <>
struct mask<4> {
    __m256d m;
    friend mask operator|(mask a, mask b) { return {_mm256_or_pd(a.m, b.m)}; }
    friend mask operator&(mask a, mask b) { return {_mm256_and_pd(a.m, b.m)}; }
};

template <>
struct pack<4> {
    __m256d v;
    static constexpr int width = 4;

    static pack broadcast(double x) { return {_mm256_set1_pd(x)}; }
    static pack load(const double* p) { return {_mm256_loadu_pd(p)}; }
    void store(double* p) const { _mm256_storeu_pd(p, v); }

    friend pack operator+(pack a, pack b) { return {_mm256_add_pd(a.v, b.v)}; }
    friend pack operator-(pack a, pack b) { return {_mm256_sub_pd(a.v, b.v)}; }
    friend pack operator*(pack a, pack b) { return {_mm256_mul_pd(a.v, b.v)}; }

    friend pack fmadd(pack a, pack b, pack c) { return {_mm256_fmadd_pd(a.v, b.v, c.v)}; }
    friend pack sqrt(pack a) { return {_mm256_sqrt_pd(a.v)}; }
    friend pack negate(pack a) {
        return {_mm256_xor_pd(a.v, _mm256_set1_pd(-0.0))};
    }

    friend mask<4> cmp_lt(pack a, pack b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ)}; }
    friend mask<4> cmp_le(pack a, pack b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_LE_OQ)}; }
    friend mask<4> cmp_gt(pack a, pack b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ)}; }
    friend mask<4> cmp_eq(pack a, pack b) { return {_mm256_cmp_pd(a.v, b.v, _CMP_EQ_OQ)}; }
    friend pack select(mask<4> m, pack if_true, pack if_false) {
        return {_mm256_blendv_pd(if_false.v, if_true.v, m.m)};
    }

    friend pack exp2_integral(pack n) {
        // n is integral and within the normal exponent range, so the int32
        // conversion (round-to-nearest) and the scalar truncation agree.
        const __m128i n32 = _mm256_cvtpd_epi32(n.v);
        const __m256i n64 = _mm256_cvtepi32_epi64(n32);
        const __m256i biased = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
        return {_mm256_castsi256_pd(_mm256_slli_epi64(biased, 52))};
    }
};

inline int count_true(mask<4> m) {
    return __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(m.m)));
}

#endif  // __AVX2__ && __FMA__

}  // namespace blockage::simd
