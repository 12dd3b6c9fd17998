#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace greenroute {

/// Seeded generator with distribution code that does not depend on the
/// standard library implementation, so seeded runs replay everywhere.
class Rng {
 public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next());
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw = next();
        while (draw >= limit) draw = next();
        return lo + static_cast<std::int64_t>(draw % span);
    }

    std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(size) - 1)); }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * unit(); }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[index(i)]);
    }

 private:
    std::mt19937_64 engine_;
};

}  // namespace greenroute
