#include <doctest.h>

#include <cmath>

#include "retina_duo/rng.hpp"

using namespace retina_duo;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::generate(C{0, 0, 0, 0}, K{0, 0}) ==
        C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(Philox4x32::generate(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                             K{0xffffffff, 0xffffffff}) ==
        C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(Philox4x32::generate(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                             K{0xa4093822, 0x299f31d0}) ==
        C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("uniform_open01 stays inside the open interval") {
  CHECK(uniform_open01(0) > 0.0);
  CHECK(uniform_open01(~0ull) < 1.0);
}

TEST_CASE("keyed_normal is deterministic and roughly standard") {
  CHECK(keyed_normal(1, 2) == keyed_normal(1, 2));
  CHECK(keyed_normal(1, 2) != keyed_normal(1, 3));
  CHECK(keyed_normal(1, 2) != keyed_normal(2, 2));
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = keyed_normal(42, i);
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(sq / n - mean * mean - 1.0) < 0.02);
}
