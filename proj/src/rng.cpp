#include "ntnho/rng.hpp"

namespace ntnho {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::mt19937_64 seeded_stream(std::uint64_t base_seed, std::uint64_t drop, std::uint64_t user,
                              StreamPurpose purpose) {
    std::uint64_t key = splitmix64(base_seed);
    key = splitmix64(key ^ drop);
    key = splitmix64(key ^ user);
    key = splitmix64(key ^ static_cast<std::uint64_t>(purpose));
    return std::mt19937_64{key};
}

} // namespace ntnho
