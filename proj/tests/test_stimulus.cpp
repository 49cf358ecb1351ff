#include <doctest.h>

#include <cmath>
#include <variant>

#include "oracles.hpp"
#include "retina_duo/error.hpp"
#include "retina_duo/stimulus.hpp"
#include "retina_duo/talbot.hpp"

using namespace retina_duo;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("make_flicker computes the period once") {
  const FlickerSpec s = make_flicker(24.0, 10000.0, 3.0);
  CHECK(s.period_us == doctest::Approx(41666.6667).epsilon(1e-9));
  CHECK(std::llround(s.period_us) == 41667);
  CHECK(s.phase_us == 0.0);
}

TEST_CASE("make_flicker accepts the continuous-emitter boundary") {
  const FlickerSpec s = make_flicker(24.0, 41667.0, 3.0);
  CHECK(duty_cycle(s) == 1.0);
  CHECK(s.flash_duration_us == s.period_us);
  CHECK(duty_cycle(make_flicker(250.0, 4000.0, 1.0)) == 1.0);
}

TEST_CASE("make_flicker rejects bad inputs") {
  CHECK(code_of([] { make_flicker(24.0, 41700.0, 1.0); }) == ErrorCode::DutyOverflow);
  CHECK(code_of([] { make_flicker(0.0, 10.0, 1.0); }) == ErrorCode::NonPositive);
  CHECK(code_of([] { make_flicker(24.0, 0.0, 1.0); }) == ErrorCode::NonPositive);
  CHECK(code_of([] { make_flicker(-1.0, 10.0, 1.0); }) == ErrorCode::NonPositive);
  CHECK(code_of([] { make_flicker(24.0, 10.0, -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("sample_waveform matches an enumerated cycle table") {
  const FlickerSpec s = make_flicker(24.0, 100.0, 5.0);
  CHECK(sample_waveform(s, 50.0) == 5.0);
  CHECK(sample_waveform(s, 20000.0) == 0.0);
  CHECK(sample_waveform(s, 41700.0) == 5.0);

  // Cycle starts k * period; a time is lit iff it is within 100 us of one.
  for (double t = 0.0; t < 5 * s.period_us; t += 97.3) {
    bool lit = false;
    for (int k = 0; k <= 6; ++k) {
      const double start = k * (1e6 / 24.0);
      if (t >= start && t < start + 100.0) lit = true;
    }
    CHECK(sample_waveform(s, t) == (lit ? 5.0 : 0.0));
  }
}

TEST_CASE("sample_waveform is periodic and honours phase") {
  const FlickerSpec s = make_flicker(250.0, 1000.0, 2.0, 300.0);
  for (double t = 0.0; t < 4000.0; t += 13.7) {
    CHECK(sample_waveform(s, t) == sample_waveform(s, t + s.period_us));
    CHECK(sample_waveform(s, t) == oracle::square_wave(t, 4000.0, 1000.0, 2.0, 300.0));
  }
}

TEST_CASE("one-period average agrees with the trapezoid oracle") {
  for (double d : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
    const FlickerSpec s = make_flicker(24.0, d, 7.0);
    const double numeric = oracle::trapezoid_average(s.period_us, d, 7.0, 200000);
    CHECK(std::abs(average_luminance(s) - numeric) / numeric < 1e-9);
  }
}

TEST_CASE("E glyph has the popcount of its font rows") {
  const Glyph e = make_glyph('E');
  CHECK(e.bitmap.width == 5);
  CHECK(e.bitmap.height == 7);
  CHECK(e.lit_count() == oracle::popcount_rows({0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}));
  CHECK(e.lit_count() == 18);
  const Glyph e2 = make_glyph('E', 2);
  CHECK(e2.bitmap.width == 10);
  CHECK(e2.lit_count() == 4 * 18);
  CHECK(make_glyph(' ').lit_count() == 0);
  CHECK(code_of([] { make_glyph('7'); }) == ErrorCode::UnknownGlyph);
  CHECK_FALSE(has_glyph('e'));
}

TEST_CASE("render_letter_program marks exactly the glyph cells") {
  const FlickerSpec f = make_flicker(250.0, 2000.0, 16.0);
  const Glyph e = make_glyph('E');
  const StimulusProgram p = render_letter_program(e, f, 8.0, 64, 64, 50.0, 1e6);
  std::size_t flicker_cells = 0;
  for (const auto& c : p.cells()) {
    if (std::holds_alternative<Flicker>(c))
      ++flicker_cells;
    else
      CHECK(std::get<Steady>(c).luminance == 8.0);
  }
  CHECK(flicker_cells == e.lit_count());

  const auto [ox, oy] = glyph_origin(e, 64, 64);
  for (std::size_t y = 0; y < 7; ++y)
    for (std::size_t x = 0; x < 5; ++x)
      CHECK(std::holds_alternative<Flicker>(p.cell(ox + x, oy + y)) == e.bitmap.at(x, y));
}

TEST_CASE("empty glyph leaves an all-steady program") {
  const FlickerSpec f = make_flicker(250.0, 2000.0, 16.0);
  const StimulusProgram p = render_letter_program(make_glyph(' '), f, 4.0, 16, 16, 50.0, 1e6);
  for (const auto& c : p.cells()) CHECK(std::get<Steady>(c).luminance == 4.0);
}

TEST_CASE("balanced letter gives every cell the same mean luminance") {
  for (double bg : {4.0, 8.0, 12.0}) {
    const FlickerSpec f = make_flicker(250.0, 2000.0, balance_intensity(bg, 250.0, 2000.0));
    const StimulusProgram p = render_letter_program(make_glyph('E', 2), f, bg, 64, 64, 50.0, 1e6);
    for (const auto& c : p.cells()) CHECK(mean_luminance(c) == doctest::Approx(bg).epsilon(1e-15));
  }
}

TEST_CASE("render_letter_program rejects oversized glyphs") {
  const FlickerSpec f = make_flicker(250.0, 2000.0, 16.0);
  CHECK(code_of([&] { render_letter_program(make_glyph('E', 4), f, 8.0, 16, 16, 50.0, 1e6); }) ==
        ErrorCode::GlyphTooLarge);
}

TEST_CASE("sample_field evaluates every cell") {
  const FlickerSpec f = make_flicker(250.0, 2000.0, 16.0);
  const Glyph e = make_glyph('E');
  const StimulusProgram p = render_letter_program(e, f, 8.0, 16, 16, 50.0, 1e6);
  for (double t : {0.0, 1000.0, 2500.0, 3999.0, 1e6}) {
    const LuminanceField field = sample_field(p, t);
    for (std::size_t y = 0; y < 16; ++y)
      for (std::size_t x = 0; x < 16; ++x) {
        const auto& c = p.cell(x, y);
        const double expected = std::holds_alternative<Flicker>(c)
                                    ? oracle::square_wave(t, 4000.0, 2000.0, 16.0)
                                    : 8.0;
        CHECK(field.at(x, y) == expected);
      }
  }
  CHECK(code_of([&] { sample_field(p, -1.0); }) == ErrorCode::OutOfRangeTime);
  CHECK(code_of([&] { sample_field(p, 1e6 + 1.0); }) == ErrorCode::OutOfRangeTime);
}

TEST_CASE("all-steady program samples to a constant field") {
  const StimulusProgram p(8, 8, 50.0, 1e6, Steady{3.5});
  for (double t : {0.0, 12345.0, 1e6})
    for (double v : sample_field(p, t).values) CHECK(v == 3.5);
}
