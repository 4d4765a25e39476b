#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace modem {

// Deterministic generator used for every random draw in the project.
// The construction is pinned bit-exactly (see README "Determinism"):
//   state advance:  splitmix64, state += 0x9E3779B97F4A7C15
//   uniform01:      top 53 bits of the mixed state, scaled by 2^-53
//   uniform_index:  128-bit multiply-shift of one u64 draw
//   gaussian_pair:  Box-Muller on (1 - uniform01, uniform01)
// Golden values in the tests depend on this exact pipeline.
class RngStream {
 public:
  explicit RngStream(uint64_t seed = 1) : state_(seed) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // integer in [0, n); one u64 draw
  uint64_t uniform_index(uint64_t n) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
  }

  // pair of independent standard normals; one pair per complex noise sample
  std::pair<double, double> gaussian_pair() {
    double u1 = 1.0 - uniform01();  // (0, 1]: keeps the log finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }

  // single standard normal (consumes a full pair; no hidden spare state, so
  // the stream position is always exactly the u64 counter)
  double gaussian() { return gaussian_pair().first; }

  uint64_t state() const { return state_; }
  void set_state(uint64_t s) { state_ = s; }

 private:
  uint64_t state_;
};

}  // namespace modem
