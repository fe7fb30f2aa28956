#pragma once

#include <cstdint>
#include <random>

namespace ntnho {

/// Independent random-number consumers within one simulation. Streams with
/// different purposes never share state, so e.g. mobility draws cannot
/// perturb shadow-fading draws.
enum class StreamPurpose : std::uint64_t {
    placement = 1,
    mobility = 2,
    shadow_los = 3,
    shadow_nlos = 4,
};

/// Reproducible sub-stream keyed by (seed, drop, user, purpose). The key is
/// mixed through splitmix64 so that neighbouring keys land far apart in the
/// generator's state space.
std::mt19937_64 seeded_stream(std::uint64_t base_seed, std::uint64_t drop, std::uint64_t user,
                              StreamPurpose purpose);

} // namespace ntnho
