#include <doctest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "retina_duo/error.hpp"
#include "retina_duo/lateral.hpp"
#include "retina_duo/psychophys.hpp"
#include "retina_duo/talbot.hpp"

using namespace retina_duo;

namespace {

ObserverParams noiseless() {
  ObserverParams o;
  o.noise_sigma_u = 0.0;
  return o;
}

LetterSetup setup_for(double bg, std::size_t grid = 64, std::size_t scale = 2) {
  LetterSetup s;
  s.glyph = make_glyph('E', scale);
  s.background_luminance = bg;
  s.width = grid;
  s.height = grid;
  return s;
}

}  // namespace

TEST_CASE("brightness match examples") {
  const ConeParams fig1 = cone_profile("fig1_display");
  for (double L : {1.0, 3.0, 16.0}) {
    const MatchResult a = simulate_brightness_match(L, 24.0, 10000.0, fig1);
    CHECK(std::abs(a.matched_intensity / (L / 0.24) - 1.0) < 1e-3);
    CHECK(std::abs(a.relative_error) < 1e-3);
    const MatchResult b = simulate_brightness_match(L, 24.0, 1.0, fig1);
    CHECK(std::abs(b.matched_intensity / (L * 1e6 / 24.0) - 1.0) < 1e-3);
  }
  const MatchResult c = simulate_brightness_match(5.0, 24.0, 41667.0, fig1);
  CHECK(c.matched_intensity == 5.0);
  CHECK(c.relative_error == 0.0);
}

TEST_CASE("brightness match refuses unfused conditions") {
  try {
    simulate_brightness_match(5.0, 1.0, 1000.0, ConeParams{});
    FAIL("expected NotFused");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFused);
  }
}

TEST_CASE("prediction table") {
  const ConeParams fig1 = cone_profile("fig1_display");
  const std::vector<double> f = {24.0};
  const std::vector<double> d = {1, 10, 100, 1000, 10000};
  const std::vector<double> levels = octave_levels(1.0);
  CHECK(levels == std::vector<double>{1, 2, 4, 8, 16});
  const auto rows = prediction_table(f, d, levels, fig1);
  REQUIRE(rows.size() == 25);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].fused);
    CHECK(std::abs(rows[i].result.relative_error) < 1e-3);
    CHECK(rows[i].result.flash_duration_us == d[i / 5]);
    CHECK(rows[i].result.steady_luminance == levels[i % 5]);
  }
  // Relative error does not depend on the flash duration.
  for (std::size_t i = 5; i < rows.size(); ++i)
    CHECK(rows[i].result.relative_error == doctest::Approx(rows[i % 5].result.relative_error).epsilon(1e-9));

  CHECK(prediction_table({}, d, levels, fig1).empty());

  const auto slow = prediction_table(std::vector<double>{1.0}, std::vector<double>{1000.0},
                                     std::vector<double>{2.0}, fig1);
  REQUIRE(slow.size() == 1);
  CHECK_FALSE(slow[0].fused);
  CHECK(std::isnan(slow[0].result.matched_intensity));

  std::vector<double> freqs;
  for (double x = 250.0; x <= 250000.0; x *= 10.0) freqs.push_back(x);
  for (const auto& row : prediction_table(freqs, std::vector<double>{1.0}, std::vector<double>{8.0}, ConeParams{}))
    CHECK(row.fused);
}

TEST_CASE("letter trials at and around balance, noiseless") {
  const ConeParams cone;
  const SurroundParams surround;
  for (double bg : {4.0, 8.0, 12.0}) {
    const LetterSetup s = setup_for(bg);
    const double bal = balance_intensity(bg, s.frequency_hz, s.flash_duration_us);
    const TrialResult at = run_letter_trial(s, bal, cone, surround, noiseless(), 0);
    CHECK_FALSE(at.identified);
    CHECK(at.polarity == Judgement::None);
    CHECK(at.scaled_contrast == 0.0);
    const TrialResult up = run_letter_trial(s, 2.0 * bal, cone, surround, noiseless(), 0);
    CHECK(up.identified);
    CHECK(up.polarity == Judgement::Bright);
    CHECK(up.scaled_contrast > 0.0);
    const TrialResult down = run_letter_trial(s, 0.5 * bal, cone, surround, noiseless(), 0);
    CHECK(down.identified);
    CHECK(down.polarity == Judgement::Dark);
    CHECK(down.scaled_contrast < 0.0);
  }
}

TEST_CASE("letter statistic matches a per-cell brute-force on 16x16") {
  const ConeParams cone;
  LetterSetup s = setup_for(8.0, 16, 1);
  const double intensity = 2.0 * balance_intensity(8.0, s.frequency_hz, s.flash_duration_us);
  const double stat = letter_statistic(s, intensity, cone, SurroundParams{}, LetterStatistic::MeanOverLetter);

  // Oracle: log drive of the time averages, annulus average by enumeration.
  auto drive = [&](double L) {
    return (std::log10(L) - std::log10(cone.l_min)) / (std::log10(cone.l_max) - std::log10(cone.l_min));
  };
  const FlickerSpec f = make_flicker(s.frequency_hz, s.flash_duration_us, intensity);
  const auto [ox, oy] = glyph_origin(s.glyph, 16, 16);
  std::vector<double> u(256, drive(8.0));
  std::vector<bool> letter(256, false);
  for (std::size_t y = 0; y < 7; ++y)
    for (std::size_t x = 0; x < 5; ++x)
      if (s.glyph.bitmap.at(x, y)) {
        u[(oy + y) * 16 + ox + x] = drive(steady_state_stats(f, cone).mean);
        letter[(oy + y) * 16 + ox + x] = true;
      }
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t y = 0; y < 16; ++y)
    for (std::size_t x = 0; x < 16; ++x) {
      if (!letter[y * 16 + x]) continue;
      sum += u[y * 16 + x] - oracle::brute_surround(u, 16, 16, x, y, 50.0, 11.5, 225.5, false, false);
      ++n;
    }
  CHECK(stat == doctest::Approx(sum / n).epsilon(1e-9));
  CHECK(stat > 0.0);
}

TEST_CASE("letter trial refuses an unfused letter") {
  LetterSetup s = setup_for(8.0);
  s.frequency_hz = 1.0;
  s.flash_duration_us = 500000.0;
  CHECK_THROWS_AS(run_letter_trial(s, 16.0, ConeParams{}, SurroundParams{}, noiseless(), 0), Error);
}

TEST_CASE("log_sweep") {
  const auto s = log_sweep(16.0, 2.0, 21);
  REQUIRE(s.size() == 21);
  CHECK(s[10] == 16.0);
  CHECK(s.front() == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(s.back() == doctest::Approx(32.0).epsilon(1e-14));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
}

TEST_CASE("find_crossover") {
  auto pt = [](double i, double b, double d) {
    CurvePoint p;
    p.intensity = i;
    p.p_bright = b;
    p.p_dark = d;
    return p;
  };
  std::vector<CurvePoint> simple = {pt(1, 0, 1), pt(2, 0.2, 0.6), pt(3, 0.8, 0.2), pt(4, 1, 0)};
  // d goes -0.4 -> +0.6 between 2 and 3.
  CHECK(find_crossover(simple) == doctest::Approx(2.4).epsilon(1e-14));
  std::vector<CurvePoint> tie = {pt(1, 0, 1), pt(2, 0, 0), pt(3, 0, 0), pt(4, 1, 0)};
  CHECK(find_crossover(tie) == doctest::Approx(2.5));
  std::vector<CurvePoint> none = {pt(1, 0, 1), pt(2, 0, 1)};
  try {
    find_crossover(none);
    FAIL("expected SweepDoesNotBracket");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SweepDoesNotBracket);
  }
}

TEST_CASE("noiseless identification curve crosses exactly at balance") {
  const ConeParams cone;
  const LetterSetup s = setup_for(8.0);
  const auto sweep = log_sweep(16.0, 2.0, 21);
  const CurveResult c = identification_curve(s, sweep, cone, SurroundParams{}, noiseless(), 3);
  CHECK(std::abs(c.crossover_intensity / 16.0 - 1.0) < 1e-3);
  // Bright only above balance, dark only below, and identification never
  // drops moving away from balance.
  for (std::size_t i = 0; i < 21; ++i) {
    if (i <= 10) CHECK(c.points[i].p_bright == 0.0);
    if (i >= 10) CHECK(c.points[i].p_dark == 0.0);
  }
  CHECK(c.points.front().p_dark == 1.0);
  CHECK(c.points.back().p_bright == 1.0);
  CHECK(c.points[10].p_identified == 0.0);
  for (std::size_t i = 11; i < 21; ++i) {
    CHECK(c.points[i].p_identified >= c.points[i - 1].p_identified);
    CHECK(c.points[20 - i].p_identified >= c.points[21 - i].p_identified);
  }
}

TEST_CASE("noisy identification curve: determinism, minimum, antisymmetry") {
  const ConeParams cone;
  const LetterSetup s = setup_for(8.0);
  const auto sweep = log_sweep(16.0, 2.0, 21);
  const ObserverParams obs;
  const CurveResult a = identification_curve(s, sweep, cone, SurroundParams{}, obs, 200);
  const CurveResult b = identification_curve(s, sweep, cone, SurroundParams{}, obs, 200);
  CHECK(a.crossover_intensity == b.crossover_intensity);
  for (std::size_t i = 0; i < 21; ++i) CHECK(a.points[i].p_bright == b.points[i].p_bright);
  CHECK(std::abs(a.crossover_intensity / 16.0 - 1.0) <= 0.10);

  std::size_t argmin = 0;
  for (std::size_t i = 0; i < 21; ++i)
    if (a.points[i].p_identified < a.points[argmin].p_identified) argmin = i;
  CHECK(argmin >= 9);
  CHECK(argmin <= 11);

  for (std::size_t k = 0; k < 10; ++k) {
    const double lo = a.points[k].mean_scaled_contrast;
    const double hi = a.points[20 - k].mean_scaled_contrast;
    const double se = 3.0 * obs.contrast_scale * obs.noise_sigma_u / std::sqrt(200.0) * std::sqrt(2.0);
    CHECK(std::abs(lo + hi) <= se + 0.05 * std::abs(hi));
  }
}

TEST_CASE("identification curve needs a bracketing sweep") {
  const LetterSetup s = setup_for(8.0);
  const std::vector<double> above = {20.0, 24.0, 30.0};
  try {
    identification_curve(s, above, ConeParams{}, SurroundParams{}, noiseless(), 1);
    FAIL("expected SweepDoesNotBracket");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SweepDoesNotBracket);
  }
  CHECK_THROWS_AS(identification_curve(s, log_sweep(16.0, 2.0, 5), ConeParams{}, SurroundParams{}, noiseless(), 0), Error);
}

TEST_CASE("max statistic is available") {
  const ConeParams cone;
  const LetterSetup s = setup_for(8.0);
  const double mean = letter_statistic(s, 24.0, cone, SurroundParams{}, LetterStatistic::MeanOverLetter);
  const double max = letter_statistic(s, 24.0, cone, SurroundParams{}, LetterStatistic::MaxOverLetter);
  CHECK(max >= mean);
}

TEST_CASE("observer validation") {
  ObserverParams o;
  o.id_threshold_u = 0.0;
  CHECK_THROWS_AS(validate(o), Error);
  o = ObserverParams{};
  o.noise_sigma_u = -1.0;
  CHECK_THROWS_AS(validate(o), Error);
}
