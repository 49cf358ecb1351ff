#include <doctest.h>

#include <random>
#include <vector>

#include "oracles.hpp"
#include "retina_duo/error.hpp"
#include "retina_duo/lateral.hpp"

using namespace retina_duo;

namespace {

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("and_not and contrast_pair examples") {
  CHECK(and_not(0.5, 0.3) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(and_not(0.3, 0.5) == 0.0);
  for (double x : {0.0, 0.25, 1.0}) CHECK(and_not(x, x) == 0.0);

  ContrastPair a = contrast_pair(0.7, 0.4);
  CHECK(a.bright == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(a.dark == 0.0);
  ContrastPair b = contrast_pair(0.4, 0.7);
  CHECK(b.bright == 0.0);
  CHECK(b.dark == doctest::Approx(0.3).epsilon(1e-15));
  ContrastPair c = contrast_pair(0.6, 0.6);
  CHECK(c.bright == 0.0);
  CHECK(c.dark == 0.0);
}

TEST_CASE("default kernel covers the annulus") {
  const SurroundKernel k(50.0, SurroundParams{});
  std::size_t n = 0;
  for (int dy = -5; dy <= 5; ++dy)
    for (int dx = -5; dx <= 5; ++dx) {
      const double r = 50.0 * std::sqrt(double(dx * dx + dy * dy));
      if (r > 11.5 && r <= 225.5) ++n;
    }
  CHECK(k.taps().size() == n);
}

TEST_CASE("surround_average examples") {
  const SurroundParams p;
  const DriveField uniform(16, 16, 50.0, std::vector<double>(256, 0.37));
  for (std::size_t y : {0u, 7u, 15u})
    for (std::size_t x : {0u, 3u, 15u}) CHECK(surround_average(uniform, x, y, p) == doctest::Approx(0.37).epsilon(1e-15));

  std::vector<double> spot(256, 0.0);
  spot[8 * 16 + 8] = 1.0;
  CHECK(surround_average(DriveField(16, 16, 50.0, spot), 8, 8, p) == 0.0);

  std::vector<double> half(256, 0.0);
  for (std::size_t y = 0; y < 16; ++y)
    for (std::size_t x = 8; x < 16; ++x) half[y * 16 + x] = 1.0;
  const DriveField hp(16, 16, 50.0, half);
  for (std::size_t x : {7u, 8u}) {
    std::size_t right = 0, total = 0;
    for (int dy = -5; dy <= 5; ++dy)
      for (int dx = -5; dx <= 5; ++dx) {
        const double r = 50.0 * std::sqrt(double(dx * dx + dy * dy));
        if (!(r > 11.5 && r <= 225.5)) continue;
        ++total;
        if (int(x) + dx >= 8) ++right;
      }
    CHECK(surround_average(hp, x, 8, p) == doctest::Approx(double(right) / total).epsilon(1e-15));
  }
}

TEST_CASE("surround matches brute-force enumeration") {
  std::mt19937_64 rng(11);
  struct Variant {
    SurroundWeighting w;
    bool include_center;
    double pitch;
  };
  for (const Variant v : {Variant{SurroundWeighting::UniformAnnulus, false, 50.0},
                          Variant{SurroundWeighting::GaussianAnnulus, false, 50.0},
                          Variant{SurroundWeighting::UniformAnnulus, true, 50.0},
                          Variant{SurroundWeighting::GaussianAnnulus, false, 20.0}}) {
    SurroundParams p;
    p.weighting = v.w;
    p.include_center = v.include_center;
    const auto vals = random_values(rng, 20 * 13);
    const DriveField f(20, 13, v.pitch, vals);
    for (std::size_t y = 0; y < 13; ++y)
      for (std::size_t x = 0; x < 20; ++x) {
        const double brute = oracle::brute_surround(vals, 20, 13, x, y, v.pitch, 11.5, 225.5,
                                                    v.w == SurroundWeighting::GaussianAnnulus,
                                                    v.include_center);
        CHECK(std::abs(surround_average(f, x, y, p) - brute) <= 1e-12);
      }
  }
}

TEST_CASE("coarse pitch leaves the annulus empty") {
  const DriveField f(4, 4, 500.0, std::vector<double>(16, 0.5));
  try {
    surround_average(f, 1, 1, SurroundParams{});
    FAIL("expected EmptySurround");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptySurround);
  }
  CHECK_THROWS_AS(contrast_fields(f, SurroundParams{}), Error);
}

TEST_CASE("drive field validates its values") {
  CHECK_THROWS_AS(DriveField(2, 2, 50.0, {0.1, 0.2, 0.3}), Error);
  CHECK_THROWS_AS(DriveField(2, 2, 50.0, {0.1, 0.2, 0.3, 1.5}), Error);
  CHECK_THROWS_AS(DriveField(2, 2, 0.0, {0.1, 0.2, 0.3, 0.4}), Error);
}

TEST_CASE("contrast fields: brighter letter on a 16x16 grid") {
  std::vector<double> vals(256, 0.4);
  std::vector<bool> letter(256, false);
  for (std::size_t y = 5; y < 11; ++y)
    for (std::size_t x = 6; x < 10; ++x) {
      vals[y * 16 + x] = 0.6;
      letter[y * 16 + x] = true;
    }
  const ContrastMaps m = contrast_fields(DriveField(16, 16, 50.0, vals), SurroundParams{});
  for (std::size_t y = 0; y < 16; ++y)
    for (std::size_t x = 0; x < 16; ++x) {
      const std::size_t i = y * 16 + x;
      const double surround = oracle::brute_surround(vals, 16, 16, x, y, 50.0, 11.5, 225.5, false, false);
      const double diff = vals[i] - surround;
      CHECK(m.bright[i] == doctest::Approx(diff > 0 ? diff : 0.0).epsilon(1e-12));
      CHECK(m.dark[i] == doctest::Approx(diff < 0 ? -diff : 0.0).epsilon(1e-12));
      if (letter[i]) {
        CHECK(m.bright[i] > 0.0);
        CHECK(m.dark[i] == 0.0);
      }
    }
}

TEST_CASE("property: rectification, offset invariance, shift covariance") {
  std::mt19937_64 rng(5);
  const SurroundParams p;
  for (int trial = 0; trial < 10; ++trial) {
    auto vals = random_values(rng, 24 * 24);
    for (auto& v : vals) v = 0.2 + 0.6 * v;
    const ContrastMaps m = contrast_fields(DriveField(24, 24, 50.0, vals), p);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      CHECK(m.bright[i] * m.dark[i] == 0.0);
      CHECK(m.bright[i] >= 0.0);
      CHECK(m.dark[i] >= 0.0);
    }
    auto shifted = vals;
    for (auto& v : shifted) v += 0.13;
    const ContrastMaps s = contrast_fields(DriveField(24, 24, 50.0, shifted), p);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      CHECK(std::abs(s.bright[i] - m.bright[i]) <= 1e-12);
      CHECK(std::abs(s.dark[i] - m.dark[i]) <= 1e-12);
    }

    // Translate by (2, 1) on a periodic copy; compare interior cells only.
    std::vector<double> moved(vals.size());
    for (std::size_t y = 0; y < 24; ++y)
      for (std::size_t x = 0; x < 24; ++x) moved[((y + 1) % 24) * 24 + (x + 2) % 24] = vals[y * 24 + x];
    const ContrastMaps t = contrast_fields(DriveField(24, 24, 50.0, moved), p);
    for (std::size_t y = 6; y < 17; ++y)
      for (std::size_t x = 7; x < 16; ++x) {
        CHECK(std::abs(t.bright[(y + 1) * 24 + x + 2] - m.bright[y * 24 + x]) <= 1e-12);
        CHECK(std::abs(t.dark[(y + 1) * 24 + x + 2] - m.dark[y * 24 + x]) <= 1e-12);
      }
  }
}

TEST_CASE("property: polarity swap on the half-plane fixture") {
  std::vector<double> half(256, 0.2);
  for (std::size_t y = 0; y < 16; ++y)
    for (std::size_t x = 8; x < 16; ++x) half[y * 16 + x] = 0.8;
  std::vector<double> swapped(256);
  for (std::size_t i = 0; i < 256; ++i) swapped[i] = 1.0 - half[i];
  const ContrastMaps a = contrast_fields(DriveField(16, 16, 50.0, half), SurroundParams{});
  const ContrastMaps b = contrast_fields(DriveField(16, 16, 50.0, swapped), SurroundParams{});
  for (std::size_t i = 0; i < 256; ++i) {
    CHECK(a.bright[i] == doctest::Approx(b.dark[i]).epsilon(1e-12));
    CHECK(a.dark[i] == doctest::Approx(b.bright[i]).epsilon(1e-12));
  }
}

TEST_CASE("uniform field gives zero contrast maps") {
  const ContrastMaps m = contrast_fields(DriveField(12, 9, 50.0, std::vector<double>(108, 0.42)), SurroundParams{});
  for (double v : m.bright) CHECK(v == 0.0);
  for (double v : m.dark) CHECK(v == 0.0);
}
