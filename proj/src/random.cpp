#include "freshroute/random.hpp"

namespace freshroute {

std::uint64_t Rng::below(std::uint64_t bound) {
    // Reject the low (2^64 mod bound) values so the modulo is unbiased.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t r = next();
        if (r >= threshold) {
            return r % bound;
        }
    }
}

std::pair<std::size_t, std::size_t> Rng::distinct_pair(std::size_t n) {
    const auto first = static_cast<std::size_t>(below(n));
    auto second = static_cast<std::size_t>(below(n - 1));
    if (second >= first) {
        ++second;
    }
    return {first, second};
}

} // namespace freshroute
