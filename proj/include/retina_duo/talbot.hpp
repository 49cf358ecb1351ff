#pragma once

#include "retina_duo/stimulus.hpp"

namespace retina_duo {

// Fraction of each period the flash is on, in (0, 1].
double duty_cycle(const FlickerSpec& spec);

// Time-averaged luminance of the flash train.
double average_luminance(const FlickerSpec& spec);

struct MatchPrediction {
  double steady_luminance = 0.0;
  double frequency_hz = 0.0;
  double flash_duration_us = 0.0;
  double predicted_intensity = 0.0;
  double duty = 0.0;
};

// Flash intensity whose time average equals `steady_luminance` at the given
// frequency and flash duration.
MatchPrediction matching_flash_intensity(double steady_luminance,
                                         double frequency_hz,
                                         double flash_duration_us);

// Same law applied to a letter on a background: the intensity at which the letter's
// average luminance equals the background.
double balance_intensity(double background_luminance, double frequency_hz,
                         double flash_duration_us);

// log10(average / background). Zero at balance.
double signed_log_contrast(const FlickerSpec& spec,
                           double background_luminance);

}  // namespace retina_duo
