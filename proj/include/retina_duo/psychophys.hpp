#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "retina_duo/lateral.hpp"
#include "retina_duo/retina_front.hpp"
#include "retina_duo/stimulus.hpp"

namespace retina_duo {

// ---------------------------------------------------------------------------
// Brightness matching of flicker against steady light
// ---------------------------------------------------------------------------

struct MatchResult {
  double steady_luminance = 0.0;
  double frequency_hz = 0.0;
  double flash_duration_us = 0.0;
  double matched_intensity = 0.0;
  double tp_predicted_intensity = 0.0;
  double relative_error = 0.0;
};

inline constexpr double kMatchToleranceU = 1e-6;
inline constexpr int kMatchMaxIterations = 200;

// Bisects the flash intensity until the transduced steady-state mean of the
// flicker matches the transduced steady light. Bracket is
// [prediction / 16, prediction * 16].
MatchResult simulate_brightness_match(double steady_luminance,
                                      double frequency_hz,
                                      double flash_duration_us,
                                      const ConeParams& cone);

struct MatchRow {
  MatchResult result;
  bool fused = true;
};

// Rows ordered frequency-major, then duration, then steady level. Conditions
// below fusion are flagged with fused = false and NaN match fields.
std::vector<MatchRow> prediction_table(std::span<const double> frequencies_hz,
                                       std::span<const double> durations_us,
                                       std::span<const double> steady_levels,
                                       const ConeParams& cone);

// {1, 2, 4, 8, 16} x base.
std::vector<double> octave_levels(double base_luminance, int octaves = 5);

// ---------------------------------------------------------------------------
// Flicker-fused letters on a steady background
// ---------------------------------------------------------------------------

enum class LetterStatistic { MeanOverLetter, MaxOverLetter };

struct ObserverParams {
  double id_threshold_u = 0.004;
  double noise_sigma_u = 0.004;
  double contrast_scale = 100.0;
  std::uint64_t seed = 0x5EED5EEDull;
  LetterStatistic statistic = LetterStatistic::MeanOverLetter;
};

void validate(const ObserverParams& params);

struct LetterSetup {
  Glyph glyph;
  double frequency_hz = 250.0;
  double flash_duration_us = 2000.0;
  double background_luminance = 8.0;
  std::size_t width = 64;
  std::size_t height = 64;
  double pixel_pitch_um = 50.0;
  double duration_us = 1e6;
};

enum class Judgement { None, Bright, Dark };

struct TrialResult {
  double intensity = 0.0;
  bool identified = false;
  Judgement polarity = Judgement::None;
  double scaled_contrast = 0.0;
};

// Noise-free signed letter contrast: the fused drive field of the letter
// program is gated into bright/dark maps and (bright - dark) is pooled over
// the letter cells.
double letter_statistic(const LetterSetup& setup, double intensity,
                        const ConeParams& cone, const SurroundParams& surround,
                        LetterStatistic statistic);

// Adds the keyed trial noise to a noise-free statistic and reads it out.
TrialResult judge(double statistic, double intensity,
                  const ObserverParams& observer, std::uint64_t trial_index);

TrialResult run_letter_trial(const LetterSetup& setup, double intensity,
                             const ConeParams& cone,
                             const SurroundParams& surround,
                             const ObserverParams& observer,
                             std::uint64_t trial_index);

struct CurvePoint {
  double intensity = 0.0;
  double p_identified = 0.0;
  double p_bright = 0.0;
  double p_dark = 0.0;
  double mean_scaled_contrast = 0.0;
};

struct CurveResult {
  std::vector<CurvePoint> points;
  double crossover_intensity = 0.0;
};

CurveResult identification_curve(const LetterSetup& setup,
                                 std::span<const double> intensity_sweep,
                                 const ConeParams& cone,
                                 const SurroundParams& surround,
                                 const ObserverParams& observer,
                                 std::size_t trials_per_point);

// Intensity where p_bright - p_dark changes sign, linearly interpolated
// between the bracketing sweep points. A run of exact ties is resolved to its
// midpoint. Throws SweepDoesNotBracket when there is no sign change.
double find_crossover(std::span<const CurvePoint> points);

// `points` intensities log-spaced over [centre / span, centre * span]; with an
// odd count the middle point is exactly `centre`.
std::vector<double> log_sweep(double centre, double span, std::size_t points);

}  // namespace retina_duo
