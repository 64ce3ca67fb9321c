#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace enrich {

// xoshiro256** seeded through splitmix64. Satisfies UniformRandomBitGenerator,
// so it can drive the Boost.Random distributions.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(operator()() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_pos() noexcept {
    return static_cast<double>((operator()() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  // Child stream determined by (seed, index) only, never by the current state.
  RngStream split(std::uint64_t index) const;

  std::uint64_t seed() const noexcept { return seed_; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4];
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

template <class T>
void shuffle(std::vector<T>& v, RngStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(v[i - 1], v[j]);
  }
}

// Uniform permutation of 0..n-1.
std::vector<std::uint32_t> random_permutation(std::size_t n, RngStream& rng);

}  // namespace enrich
