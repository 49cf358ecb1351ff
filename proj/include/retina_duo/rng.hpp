#pragma once

#include <array>
#include <cstdint>

namespace retina_duo {

// Philox4x32-10 counter-based generator. Output depends only on (key,
// counter), so trials can be drawn in any order or in parallel.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

// Uniform double in (0, 1) from the top 52 bits.
double uniform_open01(std::uint64_t bits) noexcept;

// Standard normal deviate keyed by (seed, index).
double keyed_normal(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace retina_duo
