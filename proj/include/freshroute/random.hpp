#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace freshroute {

// Portable seeded generator. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the mappings below are written out
// here rather than taken from <random> distributions, whose algorithms are
// implementation-defined. Together they make every draw reproducible across
// compilers and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, bound) by rejection; bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

    // Uniform double in [0, 1) from the top 53 bits of one draw.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool chance(double probability) { return uniform01() < probability; }

    // Two distinct indices in [0, n), n >= 2, returned as drawn.
    std::pair<std::size_t, std::size_t> distinct_pair(std::size_t n);

    // Fisher-Yates, walking from the back.
    template <typename T> void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace freshroute
