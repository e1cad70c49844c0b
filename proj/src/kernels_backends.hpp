#pragma once

#include <cstdint>
#include <span>

// Backend entry points, each defined in its own translation unit so the AVX2
// one can carry target-specific compile flags.

namespace blockage::kernels::detail {
struct DiskParams;
struct DiskSums;
struct OutageParams;
}  // namespace blockage::kernels::detail

namespace blockage::kernels::backends {

detail::DiskSums disk_scalar(const detail::DiskParams& d, std::uint64_t samples,
                             std::uint64_t seed);
std::uint64_t outage_count_scalar(const detail::OutageParams& o, std::uint64_t samples,
                                  std::uint64_t seed);
void theorem2_curve_scalar(double peak, double neg_decay, std::span<const double> offsets,
                           std::span<double> out);

#if defined(BLOCKAGE_HAVE_AVX2_TU)
detail::DiskSums disk_avx2(const detail::DiskParams& d, std::uint64_t samples,
                           std::uint64_t seed);
std::uint64_t outage_count_avx2(const detail::OutageParams& o, std::uint64_t samples,
                                std::uint64_t seed);
void theorem2_curve_avx2(double peak, double neg_decay, std::span<const double> offsets,
                         std::span<double> out);
#endif

}  // namespace blockage::kernels::backends
