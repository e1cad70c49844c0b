// Compiled with -mavx2 -mfma; only reached through runtime dispatch.

#include "kernels_backends.hpp"
#include "kernels_body.hpp"

namespace blockage::kernels::backends {

detail::DiskSums disk_avx2(const detail::DiskParams& d, std::uint64_t samples,
                           std::uint64_t seed) {
    return detail::run_disk<4>(d, samples, seed);
}

std::uint64_t outage_count_avx2(const detail::OutageParams& o, std::uint64_t samples,
                                std::uint64_t seed) {
    return detail::run_outage_count<4>(o, samples, seed);
}

void theorem2_curve_avx2(double peak, double neg_decay, std::span<const double> offsets,
                         std::span<double> out) {
    detail::run_theorem2_curve<4>(peak, neg_decay, offsets, out);
}

}  // namespace blockage::kernels::backends
