#include "relgas/numerics.hpp"

namespace relgas {

namespace {

constexpr std::uint64_t kStreamSalt = 0x9e6c63d0a2f1b5c3ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix(std::uint64_t x) {
    return splitmix64(x);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace

RandomStream child_stream(const RandomStream& rs, std::uint64_t rank) {
    // Child indices hash in a salt so split(rs, 1)[0] never aliases rs itself.
    return {rs.seed, mix(rs.stream_index ^ kStreamSalt ^ mix(rank))};
}

std::vector<RandomStream> split_stream(const RandomStream& rs, std::size_t k) {
    std::vector<RandomStream> children;
    children.reserve(k);
    for (std::size_t i = 0; i < k; ++i) children.push_back(child_stream(rs, i));
    return children;
}

RandomEngine::RandomEngine(const RandomStream& rs) {
    std::uint64_t key = mix(rs.seed) ^ mix(rs.stream_index ^ 0x5851f42d4c957f2dULL);
    state_[0] = splitmix64(key);
    state_[1] = splitmix64(key);
    state_[2] = splitmix64(key);
    state_[3] = splitmix64(key);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RandomEngine::next_u64() {
    // xoshiro256**
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RandomEngine::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

}  // namespace relgas
