#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace blockage::kernels {

// Runtime-selected kernel backend. The scalar reference and the AVX2 variant
// execute the same operation sequence per lane, so a given (input, seed) pair
// yields bit-identical results under both; the equivalence tests assert exact
// equality. Selection order: BLOCKAGE_KERNEL_BACKEND environment variable
// ("scalar", "avx2", "auto"), else the widest supported variant.
enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);
bool backend_supported(Backend b);
Backend active_backend();
void set_backend(Backend b);  // throws std::domain_error if unsupported

// Monte Carlo estimate of the Gaussian-beam power falling inside a disk of
// `shadow_radius` whose center sits `offset` away from the beam axis.
// Sampling: rho = shadow_radius*sqrt(u1), angle = 2*pi*u2, one Philox4x32
// block per sample index. Deterministic given (samples, seed).
struct McMoments {
    double value = 0.0;      // disk-area-weighted sample mean
    double std_error = 0.0;  // standard error of the estimate
};
McMoments mc_disk_gaussian(double beam_waist, double shadow_radius, double offset,
                           std::uint64_t samples, std::uint64_t seed);

// Number of offsets r ~ Uniform[lower, upper] (one Philox draw per index) for
// which the theorem-2 spread collected - peak*exp(-decay*r^2) <= spread_floor.
std::uint64_t mc_count_outage_theorem2(double lower, double upper, double collected,
                                       double peak, double decay, double spread_floor,
                                       std::uint64_t samples, std::uint64_t seed);

// out[i] = peak * exp(-decay * offsets[i]^2); spans must be equally sized.
void theorem2_curve(double peak, double decay, std::span<const double> offsets,
                    std::span<double> out);

}  // namespace blockage::kernels
