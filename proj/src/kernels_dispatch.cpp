#include "blockage/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_backends.hpp"
#include "kernels_body.hpp"

namespace blockage::kernels {

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

bool backend_supported(Backend b) {
    switch (b) {
        case Backend::scalar: return true;
        case Backend::avx2:
#if defined(BLOCKAGE_HAVE_AVX2_TU)
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
    }
    return false;
}

namespace {

Backend initial_backend() {
    if (const char* env = std::getenv("BLOCKAGE_KERNEL_BACKEND")) {
        const std::string requested(env);
        if (requested == "scalar") return Backend::scalar;
        if (requested == "avx2") {
            if (!backend_supported(Backend::avx2))
                throw std::domain_error("BLOCKAGE_KERNEL_BACKEND=avx2 but avx2 is unavailable");
            return Backend::avx2;
        }
        if (!requested.empty() && requested != "auto")
            throw std::domain_error("unknown BLOCKAGE_KERNEL_BACKEND value: " + requested);
    }
    return backend_supported(Backend::avx2) ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& backend_slot() {
    static std::atomic<Backend> slot{initial_backend()};
    return slot;
}

}  // namespace

Backend active_backend() { return backend_slot().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
    if (!backend_supported(b))
        throw std::domain_error("kernel backend unavailable: " + std::string(backend_name(b)));
    backend_slot().store(b, std::memory_order_relaxed);
}

namespace {

detail::DiskSums run_disk_dispatch(const detail::DiskParams& d, std::uint64_t samples,
                                   std::uint64_t seed) {
#if defined(BLOCKAGE_HAVE_AVX2_TU)
    if (active_backend() == Backend::avx2) return backends::disk_avx2(d, samples, seed);
#endif
    return backends::disk_scalar(d, samples, seed);
}

}  // namespace

McMoments mc_disk_gaussian(double beam_waist, double shadow_radius, double offset,
                           std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::domain_error("samples must be >= 1");
    if (!(shadow_radius > 0.0)) throw std::domain_error("shadow_radius must be positive");

    const detail::DiskParams d{
        shadow_radius,
        -2.0 * offset,
        offset * offset,
        -2.0 / (beam_waist * beam_waist),
    };
    const detail::DiskSums sums = run_disk_dispatch(d, samples, seed);

    // Estimator: disk area times the mean Gaussian density over the disk; the
    // area and the density normalization combine into 2*ab^2/w^2.
    const double scale =
        2.0 * shadow_radius * shadow_radius / (beam_waist * beam_waist);
    const double n = static_cast<double>(samples);
    const double mean = sums.sum / n;
    double std_error = 0.0;
    if (samples > 1) {
        const double variance = std::fmax(0.0, (sums.sum_sq - sums.sum * mean) / (n - 1.0));
        std_error = scale * std::sqrt(variance / n);
    }
    return {scale * mean, std_error};
}

std::uint64_t mc_count_outage_theorem2(double lower, double upper, double collected,
                                       double peak, double decay, double spread_floor,
                                       std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw std::domain_error("samples must be >= 1");
    if (!(upper > lower)) throw std::domain_error("upper must exceed lower");

    const detail::OutageParams o{lower, upper - lower, collected, peak, -decay, spread_floor};
#if defined(BLOCKAGE_HAVE_AVX2_TU)
    if (active_backend() == Backend::avx2)
        return backends::outage_count_avx2(o, samples, seed);
#endif
    return backends::outage_count_scalar(o, samples, seed);
}

void theorem2_curve(double peak, double decay, std::span<const double> offsets,
                    std::span<double> out) {
    if (offsets.size() != out.size())
        throw std::domain_error("offsets and out spans must be equally sized");
#if defined(BLOCKAGE_HAVE_AVX2_TU)
    if (active_backend() == Backend::avx2) {
        backends::theorem2_curve_avx2(peak, -decay, offsets, out);
        return;
    }
#endif
    backends::theorem2_curve_scalar(peak, -decay, offsets, out);
}

}  // namespace blockage::kernels
