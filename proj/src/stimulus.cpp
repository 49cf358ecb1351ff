#include "retina_duo/stimulus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retina_duo/error.hpp"
#include "retina_duo/talbot.hpp"

namespace retina_duo {

namespace {

// Flash durations are specified at microsecond resolution, so a duration that
// rounds to the period describes a continuous emitter.
constexpr double kContinuousSlackUs = 0.5;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v))
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
}

}  // namespace

FlickerSpec make_flicker(double frequency_hz, double flash_duration_us,
                         double flash_intensity, double phase_us) {
  require_finite(frequency_hz, "frequency_hz");
  require_finite(flash_duration_us, "flash_duration_us");
  require_finite(flash_intensity, "flash_intensity");
  require_finite(phase_us, "phase_us");
  if (frequency_hz <= 0.0)
    throw Error(ErrorCode::NonPositive, "frequency_hz must be > 0");
  if (flash_duration_us <= 0.0)
    throw Error(ErrorCode::NonPositive, "flash_duration_us must be > 0");
  if (flash_intensity < 0.0)
    throw Error(ErrorCode::InvalidArgument, "flash_intensity must be >= 0");

  FlickerSpec spec;
  spec.frequency_hz = frequency_hz;
  spec.period_us = 1e6 / frequency_hz;
  if (!std::isfinite(spec.period_us) || spec.period_us <= 0.0)
    throw Error(ErrorCode::NonPositive, "period is not finite and positive");
  if (flash_duration_us > spec.period_us + kContinuousSlackUs)
    throw Error(ErrorCode::DutyOverflow,
                "flash duration " + std::to_string(flash_duration_us) +
                    " us exceeds period " + std::to_string(spec.period_us) +
                    " us");
  spec.flash_duration_us = std::min(flash_duration_us, spec.period_us);
  if (phase_us < 0.0 || phase_us >= spec.period_us)
    throw Error(ErrorCode::InvalidArgument, "phase_us must lie in [0, period)");
  spec.flash_intensity = flash_intensity;
  spec.phase_us = phase_us;
  return spec;
}

double sample_waveform(const FlickerSpec& spec, double t_us) {
  if (spec.flash_duration_us >= spec.period_us) return spec.flash_intensity;
  double offset = std::fmod(t_us - spec.phase_us, spec.period_us);
  if (offset < 0.0) offset += spec.period_us;
  return offset < spec.flash_duration_us ? spec.flash_intensity : 0.0;
}

double mean_luminance(const CellProgram& cell) {
  if (const auto* steady = std::get_if<Steady>(&cell)) return steady->luminance;
  return average_luminance(std::get<Flicker>(cell).spec);
}

StimulusProgram::StimulusProgram(std::size_t width, std::size_t height,
                                 double pixel_pitch_um, double duration_us,
                                 CellProgram fill)
    : cells_(width, height, fill),
      pixel_pitch_um_(pixel_pitch_um),
      duration_us_(duration_us) {
  if (width == 0 || height == 0)
    throw Error(ErrorCode::NonPositive, "grid dimensions must be > 0");
  if (!(pixel_pitch_um > 0.0))
    throw Error(ErrorCode::NonPositive, "pixel_pitch_um must be > 0");
  if (!(duration_us > 0.0))
    throw Error(ErrorCode::NonPositive, "duration_us must be > 0");
  if (const auto* steady = std::get_if<Steady>(&fill);
      steady != nullptr && !(steady->luminance >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "steady luminance must be >= 0");
}

void StimulusProgram::set_cell(std::size_t x, std::size_t y,
                               CellProgram program) {
  if (x >= width() || y >= height())
    throw Error(ErrorCode::InvalidArgument, "cell outside grid");
  if (const auto* steady = std::get_if<Steady>(&program);
      steady != nullptr && !(steady->luminance >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "steady luminance must be >= 0");
  cells_.at(x, y) = program;
}

std::pair<std::size_t, std::size_t> glyph_origin(const Glyph& glyph,
                                                 std::size_t width,
                                                 std::size_t height) {
  if (glyph.bitmap.width > width || glyph.bitmap.height > height)
    throw Error(ErrorCode::GlyphTooLarge,
                "glyph " + std::to_string(glyph.bitmap.width) + "x" +
                    std::to_string(glyph.bitmap.height) +
                    " does not fit grid " + std::to_string(width) + "x" +
                    std::to_string(height));
  return {(width - glyph.bitmap.width) / 2, (height - glyph.bitmap.height) / 2};
}

StimulusProgram render_letter_program(const Glyph& glyph,
                                      const FlickerSpec& letter_cells,
                                      double background_luminance,
                                      std::size_t width, std::size_t height,
                                      double pixel_pitch_um,
                                      double duration_us) {
  if (!(background_luminance >= 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "background luminance must be >= 0");
  const auto [x0, y0] = glyph_origin(glyph, width, height);
  StimulusProgram program(width, height, pixel_pitch_um, duration_us,
                          Steady{background_luminance});
  for (std::size_t y = 0; y < glyph.bitmap.height; ++y)
    for (std::size_t x = 0; x < glyph.bitmap.width; ++x)
      if (glyph.bitmap.at(x, y))
        program.set_cell(x0 + x, y0 + y, Flicker{letter_cells});
  return program;
}

LuminanceField sample_field(const StimulusProgram& program, double t_us) {
  if (!(t_us >= 0.0 && t_us <= program.duration_us()))
    throw Error(ErrorCode::OutOfRangeTime,
                "t_us " + std::to_string(t_us) + " outside [0, " +
                    std::to_string(program.duration_us()) + "]");
  LuminanceField field(program.width(), program.height());
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const CellProgram& cell = program.cells()[i];
    if (const auto* steady = std::get_if<Steady>(&cell))
      field.values[i] = steady->luminance;
    else
      field.values[i] = sample_waveform(std::get<Flicker>(cell).spec, t_us);
  }
  return field;
}

}  // namespace retina_duo
