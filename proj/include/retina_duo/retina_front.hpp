#pragma once

#include <string_view>

#include "retina_duo/stimulus.hpp"

namespace retina_duo {

struct ConeParams {
  double tau_us = 250'000.0;
  double l_min = 1e-3;
  double l_max = 1e4;
  double ripple_fusion_threshold = 0.05;
};

void validate(const ConeParams& params);

// Named display calibrations. "fig5_display" (the default) fuses 50 Hz square
// waves; "fig1_display" uses a slower integrator so that 24 Hz trains of
// brief flashes also fuse.
ConeParams cone_profile(std::string_view name);
bool has_cone_profile(std::string_view name) noexcept;

struct ConeState {
  double integrator_value = 0.0;
  double last_t_us = 0.0;
};

// First-order low-pass update, exact for input held constant over
// (last_t_us, t_us].
ConeState integrate_step(const ConeState& state, double input_luminance,
                         double t_us, const ConeParams& params);

struct SteadyStateStats {
  double mean = 0.0;
  double ripple = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Periodic steady state of the integrator driven by `spec`, reached after at
// least 20 time constants. Mean is the exact time average over one cycle;
// ripple is (max - min) / mean.
SteadyStateStats steady_state_stats(const FlickerSpec& spec,
                                    const ConeParams& params);

bool is_fused(const FlickerSpec& spec, const ConeParams& params);

// Log transduction of luminance onto [0, 1] between the rails.
double transduce(double mean_luminance, const ConeParams& params);

// Inverse of transduce strictly between the rails.
double luminance_for_drive(double u, const ConeParams& params);

}  // namespace retina_duo
