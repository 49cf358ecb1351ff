#include "retina_duo/talbot.hpp"

#include <cmath>
#include <string>

#include "retina_duo/error.hpp"

namespace retina_duo {

double duty_cycle(const FlickerSpec& spec) {
  if (spec.flash_duration_us >= spec.period_us) return 1.0;
  return spec.frequency_hz * spec.flash_duration_us * 1e-6;
}

double average_luminance(const FlickerSpec& spec) {
  return spec.flash_intensity * duty_cycle(spec);
}

MatchPrediction matching_flash_intensity(double steady_luminance,
                                         double frequency_hz,
                                         double flash_duration_us) {
  if (!(steady_luminance >= 0.0) || !std::isfinite(steady_luminance))
    throw Error(ErrorCode::InvalidArgument, "steady luminance must be >= 0");
  double duty = 0.0;
  try {
    duty = duty_cycle(make_flicker(frequency_hz, flash_duration_us, 0.0));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonPositive)
      throw Error(ErrorCode::ZeroDuty, e.what());
    throw;
  }
  if (!(duty > 0.0)) throw Error(ErrorCode::ZeroDuty, "duty cycle is zero");

  MatchPrediction out;
  out.steady_luminance = steady_luminance;
  out.frequency_hz = frequency_hz;
  out.flash_duration_us = flash_duration_us;
  out.duty = duty;
  out.predicted_intensity = steady_luminance / duty;
  return out;
}

double balance_intensity(double background_luminance, double frequency_hz,
                         double flash_duration_us) {
  return matching_flash_intensity(background_luminance, frequency_hz,
                                  flash_duration_us)
      .predicted_intensity;
}

double signed_log_contrast(const FlickerSpec& spec,
                           double background_luminance) {
  const double average = average_luminance(spec);
  if (!(background_luminance > 0.0) || !(average > 0.0))
    throw Error(ErrorCode::NonPositiveLuminance,
                "log contrast needs positive average and background, got " +
                    std::to_string(average) + " and " +
                    std::to_string(background_luminance));
  return std::log10(average) - std::log10(background_luminance);
}

}  // namespace retina_duo
