#ifndef QRS_RNG_HPP
#define QRS_RNG_HPP

#include <cstdint>

namespace qrs {

// splitmix64: tiny, well-mixed, and fully specified, so streams are
// bit-reproducible across platforms (unlike <random> distributions).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Independent substream for (seed, block): the block index is folded into
// the seed through one mixing round before the stream starts.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t block = 0) {
    std::uint64_t s = seed + 0x9e3779b97f4a7c15ull * (block + 1);
    state_ = splitmix64(s);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Multiply-shift; bias is < 2^-64 per
  // draw, irrelevant at the sample sizes used here.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

 private:
  std::uint64_t state_ = 0;
};

}  // namespace qrs

#endif  // QRS_RNG_HPP
