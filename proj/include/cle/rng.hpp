#pragma once

#include <cstdint>

namespace cle {

// Philox4x32-10 counter-based generator (Salmon et al. constants). A draw is
// a pure function of (key, counter), which is what makes the stream
// discipline reproducible across thread counts:
//   key     = (seed, stream id)   one stream per chain or per purpose
//   counter = (c0, c1)            running draw index, or a (sweep, site) pair
// for common-random-number coupling of perturbed runs.
struct Philox {
  static void round10(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
    constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
    constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
    for (int r = 0; r < 10; ++r) {
      const std::uint64_t p0 = std::uint64_t(M0) * c[0];
      const std::uint64_t p1 = std::uint64_t(M1) * c[2];
      const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
      const std::uint32_t hi1 = std::uint64_t(p1) >> 32, lo1 = std::uint32_t(p1);
      const std::uint32_t n0 = hi1 ^ c[1] ^ k0;
      const std::uint32_t n1 = lo1;
      const std::uint32_t n2 = hi0 ^ c[3] ^ k1;
      const std::uint32_t n3 = lo0;
      c[0] = n0;
      c[1] = n1;
      c[2] = n2;
      c[3] = n3;
      k0 += W0;
      k1 += W1;
    }
  }

  // One 64-bit draw from a 64-bit key pair and a 128-bit counter.
  static std::uint64_t draw(std::uint64_t key, std::uint64_t stream, std::uint64_t c0,
                            std::uint64_t c1) {
    std::uint32_t c[4] = {std::uint32_t(c0), std::uint32_t(c0 >> 32), std::uint32_t(c1),
                          std::uint32_t(c1 >> 32)};
    std::uint32_t k0 = std::uint32_t(key ^ (stream << 1));
    std::uint32_t k1 = std::uint32_t((key >> 32) ^ stream);
    round10(c, k0, k1);
    return (std::uint64_t(c[0]) << 32) | c[1];
  }
};

inline double u64_to_unit(std::uint64_t x) { return double(x >> 11) * 0x1.0p-53; }

// Sequential view over one (seed, stream) pair.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return Philox::draw(seed_, stream_, counter_++, 0); }
  double next_unit() { return u64_to_unit(next_u64()); }
  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) {
    // multiply-shift; bias is negligible for n << 2^64
    return std::uint64_t((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Keyed draw independent of the sequential counter; used for per-(sweep,
  // site) coupling so perturbed masks consume identical randomness.
  double keyed_unit(std::uint64_t a, std::uint64_t b) const {
    return u64_to_unit(Philox::draw(seed_, stream_, a, b | 0x8000000000000000ull));
  }

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_, stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace cle
