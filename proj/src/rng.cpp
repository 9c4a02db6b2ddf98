#include "srmcrypt/rng.hpp"

#include <numeric>

namespace srmcrypt {

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label)
{
    std::uint64_t state = seed;
    std::uint64_t h = splitmix64(state);
    for (unsigned char c : label) {
        state ^= static_cast<std::uint64_t>(c) * 0x100000001B3ULL;
        h ^= splitmix64(state);
    }
    return h;
}

std::uint64_t Rng::below(std::uint64_t bound)
{
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

std::vector<std::size_t> Rng::permutation(std::size_t n)
{
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(below(i));
        std::swap(p[i - 1], p[j]);
    }
    return p;
}

} // namespace srmcrypt
