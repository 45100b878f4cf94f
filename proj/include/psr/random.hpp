#pragma once

#include "psr/linalg.hpp"

#include <cstdint>

namespace psr {

// splitmix64 (Vigna); used only to spread seeds over the xoshiro state.
struct SplitMix64 {
  std::uint64_t state = 0;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

// xoshiro256** 1.0 (Blackman/Vigna), seeded via splitmix64 so that any
// 64-bit seed gives a well-spread state.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;
  explicit Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& word : s_) word = sm.next();
  }
  std::uint64_t next() {
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
  // Uniform in [0, 1) from the top 53 bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double gaussian();  // standard normal, Box-Muller
  // Uniform on {0, .., n-1}.
  int uniform_int(int n);

  // Haar-random qubit state: two complex Gaussian amplitudes, normalized.
  Vector haar_qubit();
  // Uniform point in the unit ball by rejection; returned as a qubit
  // density matrix (I + x sx + y sy + z sz) / 2.
  Matrix bloch_ball_state();

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Stream `item` of a run: decorrelated substream for sweep point / shot
// batch number `item` under one user seed.
Xoshiro256StarStar stream_for(std::uint64_t seed, std::uint64_t item);

}  // namespace psr
