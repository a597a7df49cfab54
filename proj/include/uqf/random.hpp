#pragma once

// Seeded draws that do not depend on the standard library's distributions,
// so transcripts are identical across toolchains.

#include <cstdint>
#include <random>

#include "uqf/qfield.hpp"

namespace uqf {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  /// Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(gen_());
    return lo + static_cast<std::int64_t>(below(span));
  }

  bool coin() { return gen_() & 1; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace uqf
