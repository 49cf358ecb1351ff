#include "retina_duo/psychophys.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "retina_duo/error.hpp"
#include "retina_duo/rng.hpp"
#include "retina_duo/talbot.hpp"

namespace retina_duo {

MatchResult simulate_brightness_match(double steady_luminance,
                                      double frequency_hz,
                                      double flash_duration_us,
                                      const ConeParams& cone) {
  validate(cone);
  const MatchPrediction prediction =
      matching_flash_intensity(steady_luminance, frequency_hz, flash_duration_us);
  const FlickerSpec predicted =
      make_flicker(frequency_hz, flash_duration_us, prediction.predicted_intensity);
  if (!is_fused(predicted, cone))
    throw Error(ErrorCode::NotFused,
                std::to_string(frequency_hz) + " Hz / " +
                    std::to_string(flash_duration_us) +
                    " us is below fusion; brightness matching is undefined");

  MatchResult result;
  result.steady_luminance = steady_luminance;
  result.frequency_hz = frequency_hz;
  result.flash_duration_us = flash_duration_us;
  result.tp_predicted_intensity = prediction.predicted_intensity;
  if (prediction.predicted_intensity == 0.0) return result;

  const double target = transduce(steady_luminance, cone);
  auto mismatch = [&](double intensity) {
    const FlickerSpec spec = make_flicker(frequency_hz, flash_duration_us, intensity);
    return transduce(steady_state_stats(spec, cone).mean, cone) - target;
  };

  // A continuous emitter is a steady light.
  if (prediction.duty == 1.0) {
    result.matched_intensity = steady_luminance;
    return result;
  }
  // Arithmetic midpoints, so no probe lands on the prediction by construction.
  double lo = prediction.predicted_intensity / 16.0;
  double hi = prediction.predicted_intensity * 16.0;
  for (int iter = 0; iter < kMatchMaxIterations; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double diff = mismatch(mid);
    if (std::abs(diff) < kMatchToleranceU) {
      result.matched_intensity = mid;
      result.relative_error = mid / prediction.predicted_intensity - 1.0;
      return result;
    }
    (diff < 0.0 ? lo : hi) = mid;
  }
  throw Error(ErrorCode::NoConvergence,
              "brightness match did not converge for steady " +
                  std::to_string(steady_luminance));
}

std::vector<MatchRow> prediction_table(std::span<const double> frequencies_hz,
                                       std::span<const double> durations_us,
                                       std::span<const double> steady_levels,
                                       const ConeParams& cone) {
  std::vector<MatchRow> rows;
  rows.reserve(frequencies_hz.size() * durations_us.size() * steady_levels.size());
  for (double f : frequencies_hz) {
    for (double d : durations_us) {
      for (double level : steady_levels) {
        MatchRow row;
        try {
          row.result = simulate_brightness_match(level, f, d, cone);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotFused) throw;
          const double nan = std::numeric_limits<double>::quiet_NaN();
          row.fused = false;
          row.result.steady_luminance = level;
          row.result.frequency_hz = f;
          row.result.flash_duration_us = d;
          row.result.tp_predicted_intensity =
              matching_flash_intensity(level, f, d).predicted_intensity;
          row.result.matched_intensity = nan;
          row.result.relative_error = nan;
        }
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<double> octave_levels(double base_luminance, int octaves) {
  std::vector<double> levels;
  for (int i = 0; i < octaves; ++i)
    levels.push_back(base_luminance * std::ldexp(1.0, i));
  return levels;
}

void validate(const ObserverParams& params) {
  if (!(params.id_threshold_u > 0.0))
    throw Error(ErrorCode::NonPositive, "observer.id_threshold_u must be > 0");
  if (!(params.noise_sigma_u >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "observer.noise_sigma_u must be >= 0");
}

double letter_statistic(const LetterSetup& setup, double intensity,
                        const ConeParams& cone, const SurroundParams& surround,
                        LetterStatistic statistic) {
  validate(cone);
  const FlickerSpec spec =
      make_flicker(setup.frequency_hz, setup.flash_duration_us, intensity);
  const SteadyStateStats letter = steady_state_stats(spec, cone);
  if (!(letter.ripple < cone.ripple_fusion_threshold))
    throw Error(ErrorCode::NotFused, "letter flicker at " +
                                         std::to_string(setup.frequency_hz) +
                                         " Hz is not fused");

  const StimulusProgram program =
      render_letter_program(setup.glyph, spec, setup.background_luminance,
                            setup.width, setup.height, setup.pixel_pitch_um,
                            setup.duration_us);
  const double background_u = transduce(setup.background_luminance, cone);
  const double letter_u = transduce(letter.mean, cone);
  std::vector<double> drive(program.cells().size());
  for (std::size_t i = 0; i < drive.size(); ++i)
    drive[i] = std::holds_alternative<Flicker>(program.cells()[i]) ? letter_u
                                                                   : background_u;
  const DriveField field(setup.width, setup.height, setup.pixel_pitch_um,
                         std::move(drive));
  const ContrastMaps maps = contrast_fields(field, surround);

  const auto [x0, y0] = glyph_origin(setup.glyph, setup.width, setup.height);
  double sum = 0.0;
  double extreme = 0.0;
  std::size_t count = 0;
  for (std::size_t y = 0; y < setup.glyph.bitmap.height; ++y) {
    for (std::size_t x = 0; x < setup.glyph.bitmap.width; ++x) {
      if (!setup.glyph.bitmap.at(x, y)) continue;
      const std::size_t i = (y0 + y) * setup.width + (x0 + x);
      const double c = maps.bright[i] - maps.dark[i];
      sum += c;
      if (std::abs(c) > std::abs(extreme)) extreme = c;
      ++count;
    }
  }
  if (count == 0) return 0.0;
  return statistic == LetterStatistic::MeanOverLetter
             ? sum / static_cast<double>(count)
             : extreme;
}

TrialResult judge(double statistic, double intensity,
                  const ObserverParams& observer, std::uint64_t trial_index) {
  const double noise =
      observer.noise_sigma_u > 0.0
          ? observer.noise_sigma_u * keyed_normal(observer.seed, trial_index)
          : 0.0;
  const double perceived = statistic + noise;
  TrialResult trial;
  trial.intensity = intensity;
  trial.identified = std::abs(perceived) > observer.id_threshold_u;
  if (trial.identified) {
    trial.polarity = perceived > 0.0 ? Judgement::Bright : Judgement::Dark;
    trial.scaled_contrast = observer.contrast_scale * perceived;
  }
  return trial;
}

TrialResult run_letter_trial(const LetterSetup& setup, double intensity,
                             const ConeParams& cone,
                             const SurroundParams& surround,
                             const ObserverParams& observer,
                             std::uint64_t trial_index) {
  validate(observer);
  return judge(letter_statistic(setup, intensity, cone, surround, observer.statistic),
               intensity, observer, trial_index);
}

double find_crossover(std::span<const CurvePoint> points) {
  auto diff = [&](std::size_t i) { return points[i].p_bright - points[i].p_dark; };
  std::size_t neg = points.size();
  for (std::size_t i = 0; i < points.size(); ++i)
    if (diff(i) < 0.0) neg = i;
  std::size_t pos = points.size();
  if (neg < points.size())
    for (std::size_t i = neg + 1; i < points.size(); ++i)
      if (diff(i) > 0.0) {
        pos = i;
        break;
      }
  if (neg == points.size() || pos == points.size())
    throw Error(ErrorCode::SweepDoesNotBracket,
                "bright/dark preference never changes sign across the sweep");

  if (pos == neg + 1) {
    const double d0 = diff(neg);
    const double d1 = diff(pos);
    const double i0 = points[neg].intensity;
    const double i1 = points[pos].intensity;
    return i0 + (i1 - i0) * (-d0) / (d1 - d0);
  }
  const std::size_t first = neg + 1;
  const std::size_t run = pos - first;
  if (run % 2 == 1) return points[first + run / 2].intensity;
  return 0.5 * (points[first + run / 2 - 1].intensity + points[first + run / 2].intensity);
}

CurveResult identification_curve(const LetterSetup& setup,
                                 std::span<const double> intensity_sweep,
                                 const ConeParams& cone,
                                 const SurroundParams& surround,
                                 const ObserverParams& observer,
                                 std::size_t trials_per_point) {
  validate(observer);
  if (trials_per_point == 0)
    throw Error(ErrorCode::InvalidArgument, "trials_per_point must be >= 1");
  const double balance = balance_intensity(setup.background_luminance,
                                           setup.frequency_hz,
                                           setup.flash_duration_us);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double intensity : intensity_sweep) {
    lo = std::min(lo, intensity);
    hi = std::max(hi, intensity);
  }
  if (intensity_sweep.empty() || !(lo <= balance && balance <= hi))
    throw Error(ErrorCode::SweepDoesNotBracket,
                "sweep does not bracket the balance intensity " +
                    std::to_string(balance));

  CurveResult curve;
  curve.points.reserve(intensity_sweep.size());
  const double n = static_cast<double>(trials_per_point);
  for (std::size_t p = 0; p < intensity_sweep.size(); ++p) {
    const double intensity = intensity_sweep[p];
    const double c =
        letter_statistic(setup, intensity, cone, surround, observer.statistic);
    std::size_t identified = 0, bright = 0, dark = 0;
    double scaled = 0.0;
    for (std::size_t t = 0; t < trials_per_point; ++t) {
      const TrialResult trial = judge(c, intensity, observer, p * trials_per_point + t);
      identified += trial.identified ? 1 : 0;
      bright += trial.polarity == Judgement::Bright ? 1 : 0;
      dark += trial.polarity == Judgement::Dark ? 1 : 0;
      scaled += trial.scaled_contrast;
    }
    curve.points.push_back({intensity, static_cast<double>(identified) / n,
                            static_cast<double>(bright) / n,
                            static_cast<double>(dark) / n, scaled / n});
  }
  curve.crossover_intensity = find_crossover(curve.points);
  return curve;
}

std::vector<double> log_sweep(double centre, double span, std::size_t points) {
  if (!(centre > 0.0) || !(span > 1.0) || points < 2)
    throw Error(ErrorCode::InvalidArgument,
                "log sweep needs centre > 0, span > 1 and at least 2 points");
  std::vector<double> sweep(points);
  const double last = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    const double exponent = (2.0 * static_cast<double>(i) - last) / last;
    sweep[i] = exponent == 0.0 ? centre : centre * std::pow(span, exponent);
  }
  return sweep;
}

}  // namespace retina_duo
