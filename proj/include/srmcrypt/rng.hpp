#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace srmcrypt {

// Identifier recorded in key files. Changing the generator or the substream
// derivation below must change this string.
inline constexpr std::string_view kPrngId = "mt19937_64/splitmix64-label-v1";

std::uint64_t splitmix64(std::uint64_t& state);

// Mixes a label into a seed, giving independent substreams such as
// ("perm", seed) and ("rows", seed).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label);

// Seeded generator whose outputs are identical on every platform. The
// standard distributions are implementation-defined, so conversions are
// done by hand.
class Rng {
public:
    Rng(std::uint64_t seed, std::string_view label) : engine_(derive_seed(seed, label)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0,1) with 53 bits of resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, bound), rejection sampled.
    std::uint64_t below(std::uint64_t bound);

    // Fisher-Yates permutation of [0, n).
    std::vector<std::size_t> permutation(std::size_t n);

private:
    std::mt19937_64 engine_;
};

} // namespace srmcrypt
