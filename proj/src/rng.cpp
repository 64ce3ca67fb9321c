#include "enrich/rng.hpp"

#include <numeric>

namespace enrich {

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
  std::uint64_t state = seed;
  for (auto& s : s_) s = splitmix64(state);
}

std::uint64_t RngStream::below(std::uint64_t bound) noexcept {
  // Lemire's nearly divisionless method.
  std::uint64_t x = operator()();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = operator()();
      m = static_cast<__uint128_t>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

RngStream RngStream::split(std::uint64_t index) const {
  std::uint64_t state = seed_ ^ 0x6a09e667f3bcc909ULL;
  const std::uint64_t a = splitmix64(state);
  state = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  return RngStream(splitmix64(state));
}

std::vector<std::uint32_t> random_permutation(std::size_t n, RngStream& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  shuffle(p, rng);
  return p;
}

}  // namespace enrich
