#include "retina_duo/retina_front.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retina_duo/error.hpp"
#include "retina_duo/talbot.hpp"

namespace retina_duo {

namespace {

constexpr double kSettleTimeConstants = 20.0;

// Weight given to the new input after holding it for dt: 1 - exp(-dt/tau).
double gain(double dt_us, double tau_us) { return -std::expm1(-dt_us / tau_us); }

// Mean of the integrator over a segment of length dt with constant input x,
// starting from v0.
double segment_mean(double v0, double x, double dt_us, double tau_us) {
  return x + (v0 - x) * gain(dt_us, tau_us) * tau_us / dt_us;
}

}  // namespace

void validate(const ConeParams& params) {
  if (!(params.tau_us > 0.0) || !std::isfinite(params.tau_us))
    throw Error(ErrorCode::NonPositive, "cone.tau_us must be > 0");
  if (!(params.l_min > 0.0))
    throw Error(ErrorCode::NonPositive, "cone.l_min must be > 0");
  if (!(params.l_max > params.l_min) || !std::isfinite(params.l_max))
    throw Error(ErrorCode::InvalidArgument, "cone.l_max must exceed cone.l_min");
  if (!(params.ripple_fusion_threshold > 0.0 &&
        params.ripple_fusion_threshold < 1.0))
    throw Error(ErrorCode::InvalidArgument,
                "cone.ripple_threshold must lie in (0, 1)");
}

bool has_cone_profile(std::string_view name) noexcept {
  return name == "fig5_display" || name == "fig1_display";
}

ConeParams cone_profile(std::string_view name) {
  ConeParams params;
  if (name == "fig5_display") return params;
  if (name == "fig1_display") {
    params.tau_us = 1'000'000.0;
    return params;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown profile '" + std::string(name) + "'");
}

ConeState integrate_step(const ConeState& state, double input_luminance,
                         double t_us, const ConeParams& params) {
  if (!(t_us > state.last_t_us))
    throw Error(ErrorCode::NonMonotonicTime,
                "t_us " + std::to_string(t_us) + " is not after " +
                    std::to_string(state.last_t_us));
  const double k = gain(t_us - state.last_t_us, params.tau_us);
  ConeState next;
  next.integrator_value =
      state.integrator_value + k * (input_luminance - state.integrator_value);
  next.integrator_value = std::max(0.0, next.integrator_value);
  next.last_t_us = t_us;
  return next;
}

SteadyStateStats steady_state_stats(const FlickerSpec& spec,
                                    const ConeParams& params) {
  validate(params);
  const double intensity = spec.flash_intensity;
  const double tau = params.tau_us;
  const double period = spec.period_us;
  const double on = std::min(spec.flash_duration_us, period);
  const double off = period - on;

  // Start from the time average; a duty-1 emitter is then already at rest.
  double v = average_luminance(spec);

  // One cycle from flash onset is the affine map v -> a*v + b with
  // a = on_keep * off_keep. Composing it n times is the exact result of n
  // cycles of integrate_step.
  const double on_keep = std::exp(-on / tau);
  const double off_keep = off > 0.0 ? std::exp(-off / tau) : 1.0;
  const double b = intensity * gain(on, tau) * off_keep;
  const double cycles = std::ceil(kSettleTimeConstants * tau / period);
  const double one_minus_a = gain(period, tau);
  if (one_minus_a > 0.0) {
    const double fixed_point = b / one_minus_a;
    const double a_n = std::exp(-cycles * period / tau);
    v = fixed_point + (v - fixed_point) * a_n;
  }

  const double v_start = v;
  const double v_flash_end = intensity + (v_start - intensity) * on_keep;
  SteadyStateStats stats;
  if (off > 0.0) {
    const double v_cycle_end = v_flash_end * off_keep;
    stats.mean = (on * segment_mean(v_start, intensity, on, tau) +
                  off * segment_mean(v_flash_end, 0.0, off, tau)) /
                 period;
    stats.min = std::min({v_start, v_flash_end, v_cycle_end});
    stats.max = std::max({v_start, v_flash_end, v_cycle_end});
  } else {
    stats.mean = segment_mean(v_start, intensity, on, tau);
    stats.min = std::min(v_start, v_flash_end);
    stats.max = std::max(v_start, v_flash_end);
  }
  stats.ripple = stats.mean > 0.0 ? (stats.max - stats.min) / stats.mean : 0.0;
  return stats;
}

bool is_fused(const FlickerSpec& spec, const ConeParams& params) {
  return steady_state_stats(spec, params).ripple <
         params.ripple_fusion_threshold;
}

double transduce(double mean_luminance, const ConeParams& params) {
  const double lo = std::log10(params.l_min);
  const double hi = std::log10(params.l_max);
  const double l = std::max(mean_luminance, params.l_min);
  return std::clamp((std::log10(l) - lo) / (hi - lo), 0.0, 1.0);
}

double luminance_for_drive(double u, const ConeParams& params) {
  const double lo = std::log10(params.l_min);
  const double hi = std::log10(params.l_max);
  return std::pow(10.0, lo + std::clamp(u, 0.0, 1.0) * (hi - lo));
}

}  // namespace retina_duo
