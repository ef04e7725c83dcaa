#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mmax {

// splitmix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += kGoldenGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t combine64(std::uint64_t h, std::uint64_t v) noexcept {
    return mix64(h ^ (v + kGoldenGamma + (h << 6) + (h >> 2)));
}

// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t stable_hash(std::string_view s) noexcept;
std::uint64_t stable_hash(double x) noexcept;

// A reproducible random stream identified by (master_seed, stream_index).
// Equal identities yield identical draw sequences.
class SeededStream {
public:
    using engine_type = std::mt19937_64;

    SeededStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }

    engine_type& engine() noexcept { return engine_; }

    // Uniform on [0, 1).
    double uniform();
    bool bernoulli(double p);
    std::int64_t binomial(std::int64_t n, double p);

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    engine_type engine_;
};

}  // namespace mmax
