#pragma once

#include <cstdint>

namespace saacert {

// SplitMix64 stream. Output sequence is fixed by the algorithm, so results
// are bit-identical across platforms (std::uniform_real_distribution is not).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

// Derived seed for replication r of a base seed; independent streams for
// scenario sampling vs. violation estimation use distinct stream tags.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index,
                                 std::uint64_t stream = 0) {
  SplitMix64 mix(base ^ (0x9e3779b97f4a7c15ULL * (index + 1)) ^
                 (0xd1b54a32d192ed03ULL * stream));
  return mix.next_u64();
}

} // namespace saacert
