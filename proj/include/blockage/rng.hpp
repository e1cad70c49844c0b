#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace blockage {

// Philox4x32-10 counter-based generator (Salmon et al.). One block is a pure
// function of (seed, sample index), so streams are reproducible, splittable,
// and order-independent: shard s simply owns a range of indices.
//
// Round function on state (x0,x1,x2,x3) with round keys (k0,k1):
//   hi0:lo0 = 0xD2511F53 * x0,  hi1:lo1 = 0xCD9E8D57 * x2
//   state   = (hi1 ^ x1 ^ k0, lo1, hi0 ^ x3 ^ k1, lo0)
// after which the keys advance by the Weyl constants 0x9E3779B9, 0xBB67AE85.
struct Philox4x32 {
    std::uint64_t seed = 0;

    std::array<std::uint32_t, 4> block(std::uint64_t index) const {
        constexpr std::uint32_t mul0 = 0xD2511F53u;
        constexpr std::uint32_t mul1 = 0xCD9E8D57u;
        constexpr std::uint32_t weyl0 = 0x9E3779B9u;
        constexpr std::uint32_t weyl1 = 0xBB67AE85u;

        std::uint32_t x0 = static_cast<std::uint32_t>(index);
        std::uint32_t x1 = static_cast<std::uint32_t>(index >> 32);
        std::uint32_t x2 = 0u;
        std::uint32_t x3 = 0u;
        std::uint32_t k0 = static_cast<std::uint32_t>(seed);
        std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);

        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(mul0) * x0;
            const std::uint64_t p1 = static_cast<std::uint64_t>(mul1) * x2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            x0 = hi1 ^ x1 ^ k0;
            x1 = lo1;
            x2 = hi0 ^ x3 ^ k1;
            x3 = lo0;
            k0 += weyl0;
            k1 += weyl1;
        }
        return {x0, x1, x2, x3};
    }

    // Two independent uniforms in [0,1) from one block: each consumes 53 bits.
    std::pair<double, double> uniform_pair(std::uint64_t index) const {
        const auto b = block(index);
        const std::uint64_t a = (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
        const std::uint64_t c = (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
        return {static_cast<double>(a >> 11) * 0x1.0p-53,
                static_cast<double>(c >> 11) * 0x1.0p-53};
    }

    double uniform(std::uint64_t index) const { return uniform_pair(index).first; }
};

}  // namespace blockage
