#pragma once

#include <cstdint>
#include <numbers>
#include <span>

#include "blockage/rng.hpp"
#include "blockage/simd/pack.hpp"
#include "blockage/simd/vecmath.hpp"

// Width-generic kernel bodies, instantiated once per backend translation unit.
// Accumulation uses four fixed Kahan lanes regardless of width: the vector
// path maps hardware lanes onto them, the scalar path walks them round-robin,
// and the epilogue reduces them in a fixed order. Sample index i always lands
// in lane i mod 4, which is what makes the two instantiations bit-identical.

namespace blockage::kernels::detail {

struct KahanLanes {
    double sum[4] = {0, 0, 0, 0};
    double comp[4] = {0, 0, 0, 0};

    void add(int lane, double value) {
        const double y = value - comp[lane];
        const double t = sum[lane] + y;
        comp[lane] = (t - sum[lane]) - y;
        sum[lane] = t;
    }

    double total() const {
        double acc = 0.0;
        for (int lane = 0; lane < 4; ++lane) acc += sum[lane] - comp[lane];
        return acc;
    }
};

#if defined(__AVX2__) && defined(__FMA__)
inline void kahan_add(KahanLanes& lanes, simd::pack<4> value) {
    const simd::pack<4> sum = simd::pack<4>::load(lanes.sum);
    const simd::pack<4> comp = simd::pack<4>::load(lanes.comp);
    const simd::pack<4> y = value - comp;
    const simd::pack<4> t = sum + y;
    ((t - sum) - y).store(lanes.comp);
    t.store(lanes.sum);
}
#endif

inline void kahan_add(KahanLanes& lanes, int lane, simd::pack<1> value) {
    lanes.add(lane, value.v);
}

struct DiskParams {
    double radius;           // shadow radius
    double neg_two_offset;   // -2 * offset
    double offset_sq;        // offset^2
    double neg_two_over_w2;  // -2 / beam_waist^2
};

// Gaussian factor exp(-2*((x-r)^2 + y^2)/w^2) at a disk point drawn from
// (u1, u2); only cos of the angle enters through the law of cosines.
template <class P>
P disk_gaussian_factor(const DiskParams& d, P u1, P u2) {
    const P rho = sqrt(u1) * P::broadcast(d.radius);
    const P angle = u2 * P::broadcast(2.0 * std::numbers::pi);
    const P cos_angle = simd::cos_pd(angle);
    const P dist_sq =
        fmadd(P::broadcast(d.neg_two_offset) * cos_angle, rho,
              fmadd(rho, rho, P::broadcast(d.offset_sq)));
    return simd::exp_pd(dist_sq * P::broadcast(d.neg_two_over_w2));
}

struct DiskSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

template <int W>
DiskSums run_disk(const DiskParams& d, std::uint64_t samples, std::uint64_t seed) {
    const Philox4x32 rng{seed};
    KahanLanes sum, sum_sq;
    std::uint64_t i = 0;

#if defined(__AVX2__) && defined(__FMA__)
    if constexpr (W == 4) {
        for (; i + 4 <= samples; i += 4) {
            double u1[4], u2[4];
            for (int lane = 0; lane < 4; ++lane) {
                const auto u = rng.uniform_pair(i + lane);
                u1[lane] = u.first;
                u2[lane] = u.second;
            }
            const simd::pack<4> g =
                disk_gaussian_factor(d, simd::pack<4>::load(u1), simd::pack<4>::load(u2));
            kahan_add(sum, g);
            kahan_add(sum_sq, g * g);
        }
    }
#endif

    for (; i < samples; ++i) {
        const int lane = static_cast<int>(i & 3);
        const auto u = rng.uniform_pair(i);
        const simd::pack<1> g =
            disk_gaussian_factor(d, simd::pack<1>{u.first}, simd::pack<1>{u.second});
        kahan_add(sum, lane, g);
        kahan_add(sum_sq, lane, g * g);
    }
    return {sum.total(), sum_sq.total()};
}

struct OutageParams {
    double lower;
    double range;  // upper - lower
    double collected;
    double peak;
    double neg_decay;
    double spread_floor;
};

template <class P>
auto outage_below_floor(const OutageParams& o, P u) {
    const P r = fmadd(u, P::broadcast(o.range), P::broadcast(o.lower));
    const P shadow =
        P::broadcast(o.peak) * simd::exp_pd(P::broadcast(o.neg_decay) * (r * r));
    const P spread = P::broadcast(o.collected) - shadow;
    return cmp_le(spread, P::broadcast(o.spread_floor));
}

template <int W>
std::uint64_t run_outage_count(const OutageParams& o, std::uint64_t samples,
                               std::uint64_t seed) {
    const Philox4x32 rng{seed};
    std::uint64_t count = 0;
    std::uint64_t i = 0;

#if defined(__AVX2__) && defined(__FMA__)
    if constexpr (W == 4) {
        for (; i + 4 <= samples; i += 4) {
            double u[4];
            for (int lane = 0; lane < 4; ++lane) u[lane] = rng.uniform(i + lane);
            count += count_true(outage_below_floor(o, simd::pack<4>::load(u)));
        }
    }
#endif

    for (; i < samples; ++i)
        count += count_true(outage_below_floor(o, simd::pack<1>{rng.uniform(i)}));
    return count;
}

template <int W>
void run_theorem2_curve(double peak, double neg_decay, std::span<const double> offsets,
                        std::span<double> out) {
    const auto n = offsets.size();
    std::size_t i = 0;

#if defined(__AVX2__) && defined(__FMA__)
    if constexpr (W == 4) {
        for (; i + 4 <= n; i += 4) {
            const simd::pack<4> r = simd::pack<4>::load(offsets.data() + i);
            const simd::pack<4> v =
                simd::pack<4>::broadcast(peak) *
                simd::exp_pd(simd::pack<4>::broadcast(neg_decay) * (r * r));
            v.store(out.data() + i);
        }
    }
#endif

    for (; i < n; ++i) {
        const simd::pack<1> r{offsets[i]};
        out[i] = (simd::pack<1>::broadcast(peak) *
                  simd::exp_pd(simd::pack<1>::broadcast(neg_decay) * (r * r)))
                     .v;
    }
}

}  // namespace blockage::kernels::detail
