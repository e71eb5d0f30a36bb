#pragma once

#include <cstdint>

namespace dualent {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr double u64_to_unit_double(std::uint64_t w) noexcept {
    return static_cast<double>(w >> 11) * 0x1.0p-53;  // [0, 1)
}

// Counter-addressable uniform stream. The value at a counter depends only on
// (seed, stream, counter), so any partition of an index range across workers
// draws identical numbers.
class CounterRng {
  public:
    static CounterRng substream(std::uint64_t seed, std::uint64_t stream) noexcept {
        return CounterRng(mix64(mix64(seed ^ (0xD1B54A32D192ED03ULL * (stream + 1)))));
    }

    double uniform(std::uint64_t counter) const noexcept {
        return u64_to_unit_double(mix64(base_ + counter * 0x9E3779B97F4A7C15ULL));
    }

  private:
    explicit CounterRng(std::uint64_t base) noexcept : base_(base) {}
    std::uint64_t base_;
};

}  // namespace dualent
