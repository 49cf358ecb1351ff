#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "retina_duo/error.hpp"
#include "retina_duo/stimulus.hpp"
#include "retina_duo/talbot.hpp"

using namespace retina_duo;

TEST_CASE("duty cycle examples") {
  CHECK(duty_cycle(make_flicker(24.0, 10000.0, 1.0)) == doctest::Approx(0.24).epsilon(1e-15));
  CHECK(duty_cycle(make_flicker(250.0, 2000.0, 1.0)) == 0.5);
  CHECK(duty_cycle(make_flicker(24.0, 41667.0, 1.0)) == 1.0);
  const FlickerSpec s = make_flicker(24.0, 10000.0, 1.0);
  CHECK(duty_cycle(s) == doctest::Approx(oracle::trapezoid_average(s.period_us, 10000.0, 1.0, 100000)).epsilon(1e-12));
}

TEST_CASE("average luminance examples") {
  const FlickerSpec s = make_flicker(24.0, 10000.0, 100.0);
  const double numeric = oracle::trapezoid_average(s.period_us, 10000.0, 100.0, 1000000);
  CHECK(std::abs(average_luminance(s) - numeric) / numeric < 1e-9);
  CHECK(average_luminance(s) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(average_luminance(make_flicker(24.0, 10000.0, 0.0)) == 0.0);
  CHECK(average_luminance(make_flicker(24.0, 41667.0, 9.0)) == 9.0);
}

TEST_CASE("matching flash intensity examples") {
  const double L = 3.0;
  const MatchPrediction p = matching_flash_intensity(L, 24.0, 1.0);
  CHECK(p.duty == doctest::Approx(2.4e-5).epsilon(1e-12));
  CHECK(p.predicted_intensity == doctest::Approx(L * 41666.6667).epsilon(1e-9));
  const FlickerSpec back = make_flicker(24.0, 1.0, p.predicted_intensity);
  const double numeric = oracle::trapezoid_average(back.period_us, 1.0, p.predicted_intensity, 1000000);
  CHECK(std::abs(numeric - L) / L < 1e-9);

  CHECK(matching_flash_intensity(8.0, 250.0, 2000.0).predicted_intensity == 16.0);
  CHECK(matching_flash_intensity(0.0, 24.0, 100.0).predicted_intensity == 0.0);
  CHECK_THROWS_AS(matching_flash_intensity(-1.0, 24.0, 100.0), Error);
  try {
    matching_flash_intensity(1.0, 24.0, 0.0);
    FAIL("expected ZeroDuty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroDuty);
  }
}

TEST_CASE("balance intensity examples") {
  CHECK(balance_intensity(4.0, 250.0, 2000.0) == 8.0);
  CHECK(balance_intensity(8.0, 250.0, 2000.0) == 16.0);
  CHECK(balance_intensity(12.0, 250.0, 2000.0) == 24.0);
  CHECK(balance_intensity(6.5, 250.0, 4000.0) == 6.5);
}

TEST_CASE("signed log contrast") {
  const double bal = balance_intensity(8.0, 250.0, 2000.0);
  CHECK(signed_log_contrast(make_flicker(250.0, 2000.0, bal), 8.0) == 0.0);
  CHECK(signed_log_contrast(make_flicker(250.0, 2000.0, 32.0), 8.0) ==
        doctest::Approx(std::log10(2.0)).epsilon(1e-14));
  CHECK(signed_log_contrast(make_flicker(250.0, 2000.0, 8.0), 8.0) ==
        doctest::Approx(-std::log10(2.0)).epsilon(1e-14));
  try {
    signed_log_contrast(make_flicker(250.0, 2000.0, 8.0), 0.0);
    FAIL("expected NonPositiveLuminance");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveLuminance);
  }
  CHECK_THROWS_AS(signed_log_contrast(make_flicker(250.0, 2000.0, 0.0), 8.0), Error);
}

TEST_CASE("property: antisymmetry under swapping average and background") {
  for (double avg : {0.5, 3.0, 17.0})
    for (double bg : {0.25, 4.0, 40.0}) {
      const FlickerSpec a = make_flicker(100.0, 5000.0, 2.0 * avg);
      const FlickerSpec b = make_flicker(100.0, 5000.0, 2.0 * bg);
      CHECK(signed_log_contrast(a, bg) == doctest::Approx(-signed_log_contrast(b, avg)).epsilon(1e-14));
    }
}

TEST_CASE("property: reciprocity across frequency and duration") {
  const double L = 5.0;
  const std::vector<double> freqs = {24, 50, 100, 250, 1000, 2500, 10000, 25000, 100000, 250000};
  for (double duty : {1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5}) {
    for (double f : freqs) {
      const double d = duty * 1e6 / f;
      const MatchPrediction p = matching_flash_intensity(L, f, d);
      CHECK(p.predicted_intensity * f * d * 1e-6 == doctest::Approx(L).epsilon(1e-12));
      CHECK(std::log10(p.predicted_intensity) ==
            doctest::Approx(std::log10(L) - std::log10(duty)).epsilon(1e-12));
      CHECK(average_luminance(make_flicker(f, d, p.predicted_intensity)) ==
            doctest::Approx(L).epsilon(1e-12));
    }
  }
}

TEST_CASE("property: phase does not change the time average") {
  for (double phase : {0.0, 17.0, 1234.5, 41000.0}) {
    const FlickerSpec s = make_flicker(24.0, 300.0, 11.0, phase);
    const double numeric = oracle::trapezoid_average(s.period_us, 300.0, 11.0, 100000, phase);
    CHECK(std::abs(average_luminance(s) - numeric) / numeric < 1e-9);
  }
}
