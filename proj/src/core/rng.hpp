#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dilwalk {

// Deterministic, platform-stable stream of doubles in [0,1).
// mt19937_64 output is fully specified by the standard; the double
// conversion below avoids std::uniform_real_distribution, whose exact
// output is implementation-defined.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  double uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi], inclusive.
  long uniform_int(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(eng_() % span);
  }

 private:
  std::mt19937_64 eng_;
};

// Independent sub-stream derived from (seed, label). Same pair gives the
// same stream on every platform and thread schedule.
RngStream derive_substream(std::uint64_t seed, std::string_view label);

}  // namespace dilwalk
