#include "retina_duo.h"

#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "retina_duo/channels.hpp"
#include "retina_duo/config.hpp"
#include "retina_duo/csv.hpp"
#include "retina_duo/error.hpp"
#include "retina_duo/event_io.hpp"
#include "retina_duo/lateral.hpp"
#include "retina_duo/psychophys.hpp"
#include "retina_duo/retina_front.hpp"
#include "retina_duo/stimulus.hpp"
#include "retina_duo/talbot.hpp"

namespace rd = retina_duo;

struct rd_program {
  rd::StimulusProgram impl;
};

struct rd_events {
  std::vector<rd::Event> impl;
};

struct rd_match_table {
  std::vector<rd::MatchRow> impl;
};

struct rd_curve {
  rd::CurveResult impl;
};

namespace {

thread_local std::string g_last_error;

rd_status to_status(rd::ErrorCode code) {
  switch (code) {
    case rd::ErrorCode::InvalidArgument: return RD_ERR_INVALID_ARGUMENT;
    case rd::ErrorCode::DutyOverflow: return RD_ERR_DUTY_OVERFLOW;
    case rd::ErrorCode::NonPositive: return RD_ERR_NON_POSITIVE;
    case rd::ErrorCode::GlyphTooLarge: return RD_ERR_GLYPH_TOO_LARGE;
    case rd::ErrorCode::UnknownGlyph: return RD_ERR_UNKNOWN_GLYPH;
    case rd::ErrorCode::OutOfRangeTime: return RD_ERR_OUT_OF_RANGE_TIME;
    case rd::ErrorCode::ZeroDuty: return RD_ERR_ZERO_DUTY;
    case rd::ErrorCode::NonPositiveLuminance: return RD_ERR_NON_POSITIVE_LUMINANCE;
    case rd::ErrorCode::NonMonotonicTime: return RD_ERR_NON_MONOTONIC_TIME;
    case rd::ErrorCode::EmptySurround: return RD_ERR_EMPTY_SURROUND;
    case rd::ErrorCode::BothPositive: return RD_ERR_BOTH_POSITIVE;
    case rd::ErrorCode::NotFused: return RD_ERR_NOT_FUSED;
    case rd::ErrorCode::NoConvergence: return RD_ERR_NO_CONVERGENCE;
    case rd::ErrorCode::SweepDoesNotBracket: return RD_ERR_SWEEP_DOES_NOT_BRACKET;
    case rd::ErrorCode::Parse: return RD_ERR_PARSE;
    case rd::ErrorCode::Io: return RD_ERR_IO;
  }
  return RD_ERR_INTERNAL;
}

template <typename F>
rd_status guarded(F&& body) noexcept {
  try {
    body();
    g_last_error.clear();
    return RD_OK;
  } catch (const rd::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RD_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RD_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RD_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr)
    throw rd::Error(rd::ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

rd::FlickerSpec from_c(const rd_flicker_spec& s) {
  rd::FlickerSpec spec;
  spec.frequency_hz = s.frequency_hz;
  spec.flash_duration_us = s.flash_duration_us;
  spec.flash_intensity = s.flash_intensity;
  spec.phase_us = s.phase_us;
  spec.period_us = s.period_us;
  return spec;
}

rd_flicker_spec to_c(const rd::FlickerSpec& s) {
  return {s.frequency_hz, s.flash_duration_us, s.flash_intensity, s.phase_us,
          s.period_us};
}

rd::ConeParams from_c(const rd_cone_params& p) {
  return {p.tau_us, p.l_min, p.l_max, p.ripple_fusion_threshold};
}

rd_cone_params to_c(const rd::ConeParams& p) {
  return {p.tau_us, p.l_min, p.l_max, p.ripple_fusion_threshold};
}

rd::SurroundParams from_c(const rd_surround_params& p) {
  rd::SurroundParams s;
  s.center_radius_um = p.center_radius_um;
  s.surround_radius_um = p.surround_radius_um;
  s.weighting = p.weighting == RD_GAUSSIAN_ANNULUS ? rd::SurroundWeighting::GaussianAnnulus
                                                   : rd::SurroundWeighting::UniformAnnulus;
  s.include_center = p.include_center != 0;
  return s;
}

rd_surround_params to_c(const rd::SurroundParams& s) {
  return {s.center_radius_um, s.surround_radius_um,
          s.weighting == rd::SurroundWeighting::GaussianAnnulus ? RD_GAUSSIAN_ANNULUS
                                                                : RD_UNIFORM_ANNULUS,
          s.include_center ? 1 : 0};
}

rd::ChannelParams from_c(const rd_channel_params& p) {
  return {p.r_max, p.r_spont, p.contrast_gain};
}

rd::ObserverParams from_c(const rd_observer_params& p) {
  rd::ObserverParams o;
  o.id_threshold_u = p.id_threshold_u;
  o.noise_sigma_u = p.noise_sigma_u;
  o.contrast_scale = p.contrast_scale;
  o.seed = p.seed;
  o.statistic = p.statistic == RD_STATISTIC_MAX ? rd::LetterStatistic::MaxOverLetter
                                                : rd::LetterStatistic::MeanOverLetter;
  return o;
}

rd::RunConfig from_c(const rd_run_params& p) {
  rd::RunConfig config;
  config.profile = std::string(p.profile, strnlen(p.profile, sizeof p.profile));
  config.stimulus_path =
      std::string(p.stimulus_path, strnlen(p.stimulus_path, sizeof p.stimulus_path));
  config.output_dir = std::string(p.output_dir, strnlen(p.output_dir, sizeof p.output_dir));
  config.cone = from_c(p.cone);
  config.surround = from_c(p.surround);
  config.channel = from_c(p.channel);
  config.observer = from_c(p.observer);
  return config;
}

void to_c(const rd::RunConfig& c, rd_run_params& out) {
  std::memset(&out, 0, sizeof out);
  std::strncpy(out.profile, c.profile.c_str(), sizeof out.profile - 1);
  std::strncpy(out.stimulus_path, c.stimulus_path.c_str(), sizeof out.stimulus_path - 1);
  std::strncpy(out.output_dir, c.output_dir.c_str(), sizeof out.output_dir - 1);
  out.cone = to_c(c.cone);
  out.surround = to_c(c.surround);
  out.channel = {c.channel.r_max, c.channel.r_spont, c.channel.contrast_gain};
  out.observer = {c.observer.id_threshold_u, c.observer.noise_sigma_u,
                  c.observer.contrast_scale, c.observer.seed,
                  c.observer.statistic == rd::LetterStatistic::MaxOverLetter
                      ? RD_STATISTIC_MAX
                      : RD_STATISTIC_MEAN};
}

rd_match_result to_c(const rd::MatchResult& r, bool fused) {
  return {r.steady_luminance,      r.frequency_hz,       r.flash_duration_us,
          r.matched_intensity,     r.tp_predicted_intensity, r.relative_error,
          fused ? 1 : 0};
}

rd::LetterSetup from_c(const rd_letter_setup& s) {
  rd::LetterSetup setup;
  setup.glyph = rd::make_glyph(s.letter, s.glyph_scale);
  setup.frequency_hz = s.frequency_hz;
  setup.flash_duration_us = s.flash_duration_us;
  setup.background_luminance = s.background_luminance;
  setup.width = s.width;
  setup.height = s.height;
  setup.pixel_pitch_um = s.pixel_pitch_um;
  setup.duration_us = s.duration_us;
  return setup;
}

// "-" writes to standard output.
template <typename Write>
void with_output(const char* path, bool binary, Write&& write) {
  require(path, "path");
  if (std::strcmp(path, "-") == 0) {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw rd::Error(rd::ErrorCode::Io, std::string("cannot open '") + path + "' for writing");
  write(out);
  if (!out) throw rd::Error(rd::ErrorCode::Io, std::string("failed writing '") + path + "'");
}

}  // namespace

extern "C" {

const char* rd_status_name(rd_status status) {
  switch (status) {
    case RD_OK: return "OK";
    case RD_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= RD_ERR_INVALID_ARGUMENT && status <= RD_ERR_IO)
    return rd::to_string(static_cast<rd::ErrorCode>(status));
  return "Unknown";
}

const char* rd_last_error(void) { return g_last_error.c_str(); }

const char* rd_version(void) { return "1.0.0"; }

rd_status rd_make_flicker(double frequency_hz, double flash_duration_us,
                          double flash_intensity, double phase_us, rd_flicker_spec* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(rd::make_flicker(frequency_hz, flash_duration_us, flash_intensity, phase_us));
  });
}

double rd_sample_waveform(const rd_flicker_spec* spec, double t_us) {
  return spec ? rd::sample_waveform(from_c(*spec), t_us) : 0.0;
}

double rd_duty_cycle(const rd_flicker_spec* spec) {
  return spec ? rd::duty_cycle(from_c(*spec)) : 0.0;
}

double rd_average_luminance(const rd_flicker_spec* spec) {
  return spec ? rd::average_luminance(from_c(*spec)) : 0.0;
}

rd_status rd_matching_flash_intensity(double steady_luminance, double frequency_hz,
                                      double flash_duration_us, rd_match_prediction* out) {
  return guarded([&] {
    require(out, "out");
    const rd::MatchPrediction p =
        rd::matching_flash_intensity(steady_luminance, frequency_hz, flash_duration_us);
    *out = {p.steady_luminance, p.frequency_hz, p.flash_duration_us,
            p.predicted_intensity, p.duty};
  });
}

rd_status rd_balance_intensity(double background_luminance, double frequency_hz,
                               double flash_duration_us, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = rd::balance_intensity(background_luminance, frequency_hz, flash_duration_us);
  });
}

rd_status rd_signed_log_contrast(const rd_flicker_spec* spec, double background_luminance,
                                 double* out) {
  return guarded([&] {
    require(spec, "spec");
    require(out, "out");
    *out = rd::signed_log_contrast(from_c(*spec), background_luminance);
  });
}

rd_status rd_write_prediction_csv(const rd_match_prediction* rows, size_t count,
                                  const char* path) {
  return guarded([&] {
    if (count > 0) require(rows, "rows");
    std::vector<rd::MatchPrediction> preds;
    for (size_t i = 0; i < count; ++i)
      preds.push_back({rows[i].steady_luminance, rows[i].frequency_hz,
                       rows[i].flash_duration_us, rows[i].predicted_intensity,
                       rows[i].duty});
    with_output(path, false, [&](std::ostream& out) { rd::write_prediction_csv(out, preds); });
  });
}

rd_status rd_cone_profile(const char* name, rd_cone_params* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = to_c(rd::cone_profile(name));
  });
}

rd_status rd_run_params_default(rd_run_params* out) {
  return guarded([&] {
    require(out, "out");
    to_c(rd::default_run_config(), *out);
  });
}

rd_status rd_run_params_apply_file(rd_run_params* params, const char* path) {
  return guarded([&] {
    require(params, "params");
    require(path, "path");
    rd::RunConfig config = from_c(*params);
    rd::apply_overrides(config, rd::load_key_values(path));
    to_c(config, *params);
  });
}

rd_status rd_run_params_set_profile(rd_run_params* params, const char* name) {
  return guarded([&] {
    require(params, "params");
    require(name, "name");
    rd::RunConfig config = from_c(*params);
    rd::apply_overrides(config, {{"profile", name}});
    to_c(config, *params);
  });
}

rd_status rd_integrate_step(const rd_cone_state* state, double input_luminance,
                            double t_us, const rd_cone_params* params, rd_cone_state* out) {
  return guarded([&] {
    require(state, "state");
    require(params, "params");
    require(out, "out");
    const rd::ConeState next = rd::integrate_step(
        {state->integrator_value, state->last_t_us}, input_luminance, t_us, from_c(*params));
    *out = {next.integrator_value, next.last_t_us};
  });
}

rd_status rd_steady_state_stats(const rd_flicker_spec* spec, const rd_cone_params* params,
                                rd_steady_state* out) {
  return guarded([&] {
    require(spec, "spec");
    require(params, "params");
    require(out, "out");
    const rd::SteadyStateStats s = rd::steady_state_stats(from_c(*spec), from_c(*params));
    *out = {s.mean, s.ripple, s.min, s.max};
  });
}

rd_status rd_is_fused(const rd_flicker_spec* spec, const rd_cone_params* params, int* out) {
  return guarded([&] {
    require(spec, "spec");
    require(params, "params");
    require(out, "out");
    *out = rd::is_fused(from_c(*spec), from_c(*params)) ? 1 : 0;
  });
}

double rd_transduce(double mean_luminance, const rd_cone_params* params) {
  return params ? rd::transduce(mean_luminance, from_c(*params)) : 0.0;
}

double rd_and_not(double x, double y) { return rd::and_not(x, y); }

void rd_contrast_pair(double center, double surround, double* bright, double* dark) {
  const rd::ContrastPair pair = rd::contrast_pair(center, surround);
  if (bright) *bright = pair.bright;
  if (dark) *dark = pair.dark;
}

rd_status rd_contrast_fields(const double* drive, size_t width, size_t height,
                             double pixel_pitch_um, const rd_surround_params* params,
                             double* surround_out, double* bright_out, double* dark_out) {
  return guarded([&] {
    require(drive, "drive");
    require(params, "params");
    const rd::DriveField field(width, height, pixel_pitch_um,
                               std::vector<double>(drive, drive + width * height));
    const rd::SurroundParams surround = from_c(*params);
    if (surround_out) {
      const rd::SurroundKernel kernel(pixel_pitch_um, surround);
      for (size_t y = 0; y < height; ++y)
        for (size_t x = 0; x < width; ++x)
          surround_out[y * width + x] = kernel.average(field, x, y);
    }
    if (bright_out || dark_out) {
      const rd::ContrastMaps maps = rd::contrast_fields(field, surround);
      if (bright_out) std::copy(maps.bright.begin(), maps.bright.end(), bright_out);
      if (dark_out) std::copy(maps.dark.begin(), maps.dark.end(), dark_out);
    }
  });
}

rd_status rd_encode_luminance(double u, const rd_channel_params* params,
                              double* bright_rate, double* dark_rate) {
  return guarded([&] {
    require(params, "params");
    const rd::LuminanceChannels c = rd::encode_luminance(u, from_c(*params));
    if (bright_rate) *bright_rate = c.bright_rate;
    if (dark_rate) *dark_rate = c.dark_rate;
  });
}

rd_status rd_encode_contrast(double bright, double dark, const rd_channel_params* params,
                             double* bright_rate, double* dark_rate) {
  return guarded([&] {
    require(params, "params");
    const rd::ContrastChannels c = rd::encode_contrast({bright, dark}, from_c(*params));
    if (bright_rate) *bright_rate = c.bright_rate;
    if (dark_rate) *dark_rate = c.dark_rate;
  });
}

rd_status rd_program_load(const char* path, rd_program** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new rd_program{rd::load_stimulus(path)};
  });
}

rd_status rd_program_letter(char letter, size_t glyph_scale,
                            const rd_flicker_spec* letter_cells, double background_luminance,
                            size_t width, size_t height, double pixel_pitch_um,
                            double duration_us, rd_program** out) {
  return guarded([&] {
    require(letter_cells, "letter_cells");
    require(out, "out");
    *out = nullptr;
    *out = new rd_program{rd::render_letter_program(
        rd::make_glyph(letter, glyph_scale), from_c(*letter_cells), background_luminance,
        width, height, pixel_pitch_um, duration_us)};
  });
}

void rd_program_destroy(rd_program* program) { delete program; }

size_t rd_program_width(const rd_program* program) {
  return program ? program->impl.width() : 0;
}

size_t rd_program_height(const rd_program* program) {
  return program ? program->impl.height() : 0;
}

double rd_program_duration_us(const rd_program* program) {
  return program ? program->impl.duration_us() : 0.0;
}

rd_status rd_program_sample_field(const rd_program* program, double t_us, double* out,
                                  size_t capacity) {
  return guarded([&] {
    require(program, "program");
    require(out, "out");
    const rd::LuminanceField field = rd::sample_field(program->impl, t_us);
    if (capacity < field.values.size())
      throw rd::Error(rd::ErrorCode::InvalidArgument, "output buffer too small");
    std::copy(field.values.begin(), field.values.end(), out);
  });
}

rd_status rd_event_stream(const rd_program* program, const rd_cone_params* cone,
                          double threshold_u, rd_events** out) {
  return guarded([&] {
    require(program, "program");
    require(cone, "cone");
    require(out, "out");
    *out = nullptr;
    *out = new rd_events{rd::event_stream(program->impl, from_c(*cone), threshold_u)};
  });
}

rd_status rd_event_stream_from(const rd_program* program, const rd_cone_params* cone,
                               double threshold_u, double initial_luminance,
                               rd_events** out) {
  return guarded([&] {
    require(program, "program");
    require(cone, "cone");
    require(out, "out");
    *out = nullptr;
    rd::EventOptions options;
    options.initial_luminance = initial_luminance;
    *out = new rd_events{
        rd::event_stream(program->impl, from_c(*cone), threshold_u, options)};
  });
}

rd_status rd_events_read_binary(const char* path, rd_events** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = nullptr;
    *out = new rd_events{rd::load_events_binary(path)};
  });
}

void rd_events_destroy(rd_events* events) { delete events; }

size_t rd_events_count(const rd_events* events) { return events ? events->impl.size() : 0; }

rd_status rd_events_get(const rd_events* events, size_t index, rd_event* out) {
  return guarded([&] {
    require(events, "events");
    require(out, "out");
    if (index >= events->impl.size())
      throw rd::Error(rd::ErrorCode::InvalidArgument, "event index out of range");
    const rd::Event& e = events->impl[index];
    *out = {e.t_us, e.x, e.y, static_cast<uint8_t>(e.polarity)};
  });
}

rd_status rd_events_write_binary(const rd_events* events, const char* path) {
  return guarded([&] {
    require(events, "events");
    with_output(path, true,
                [&](std::ostream& out) { rd::write_events_binary(out, events->impl); });
  });
}

rd_status rd_events_write_csv(const rd_events* events, const char* path) {
  return guarded([&] {
    require(events, "events");
    with_output(path, false,
                [&](std::ostream& out) { rd::write_events_csv(out, events->impl); });
  });
}

rd_status rd_simulate_brightness_match(double steady_luminance, double frequency_hz,
                                       double flash_duration_us, const rd_cone_params* cone,
                                       rd_match_result* out) {
  return guarded([&] {
    require(cone, "cone");
    require(out, "out");
    *out = to_c(rd::simulate_brightness_match(steady_luminance, frequency_hz,
                                              flash_duration_us, from_c(*cone)),
                true);
  });
}

rd_status rd_prediction_table(const double* frequencies_hz, size_t n_frequencies,
                              const double* durations_us, size_t n_durations,
                              const double* steady_levels, size_t n_levels,
                              const rd_cone_params* cone, rd_match_table** out) {
  return guarded([&] {
    require(cone, "cone");
    require(out, "out");
    if (n_frequencies) require(frequencies_hz, "frequencies_hz");
    if (n_durations) require(durations_us, "durations_us");
    if (n_levels) require(steady_levels, "steady_levels");
    *out = nullptr;
    *out = new rd_match_table{rd::prediction_table(
        {frequencies_hz, n_frequencies}, {durations_us, n_durations},
        {steady_levels, n_levels}, from_c(*cone))};
  });
}

rd_status rd_prediction_table_file(const char* path, const rd_cone_params* cone,
                                   rd_match_table** out) {
  return guarded([&] {
    require(path, "path");
    require(cone, "cone");
    require(out, "out");
    *out = nullptr;
    const rd::SweepSpec sweep = rd::parse_sweep(rd::load_key_values(path));
    *out = new rd_match_table{rd::prediction_table(sweep.frequencies_hz, sweep.durations_us,
                                                   sweep.steady_levels, from_c(*cone))};
  });
}

void rd_match_table_destroy(rd_match_table* table) { delete table; }

size_t rd_match_table_size(const rd_match_table* table) {
  return table ? table->impl.size() : 0;
}

rd_status rd_match_table_get(const rd_match_table* table, size_t index,
                             rd_match_result* out) {
  return guarded([&] {
    require(table, "table");
    require(out, "out");
    if (index >= table->impl.size())
      throw rd::Error(rd::ErrorCode::InvalidArgument, "row index out of range");
    *out = to_c(table->impl[index].result, table->impl[index].fused);
  });
}

rd_status rd_match_table_write_csv(const rd_match_table* table, const char* path) {
  return guarded([&] {
    require(table, "table");
    with_output(path, false, [&](std::ostream& out) { rd::write_match_csv(out, table->impl); });
  });
}

void rd_letter_setup_default(rd_letter_setup* out) {
  if (!out) return;
  const rd::LetterSetup d;
  *out = {'E', 2, d.frequency_hz, d.flash_duration_us, d.background_luminance,
          d.width, d.height, d.pixel_pitch_um, d.duration_us};
}

int rd_has_glyph(char letter) { return rd::has_glyph(letter) ? 1 : 0; }

rd_status rd_run_letter_trial(const rd_letter_setup* setup, double intensity,
                              const rd_run_params* params, uint64_t trial_index,
                              rd_trial_result* out) {
  return guarded([&] {
    require(setup, "setup");
    require(params, "params");
    require(out, "out");
    const rd::RunConfig config = from_c(*params);
    const rd::TrialResult t = rd::run_letter_trial(
        from_c(*setup), intensity, config.cone, config.surround, config.observer, trial_index);
    *out = {t.intensity, t.identified ? 1 : 0,
            t.polarity == rd::Judgement::Bright ? RD_JUDGEMENT_BRIGHT
            : t.polarity == rd::Judgement::Dark ? RD_JUDGEMENT_DARK
                                                : RD_JUDGEMENT_NONE,
            t.scaled_contrast};
  });
}

rd_status rd_log_sweep(double centre, double span, size_t points, double* out) {
  return guarded([&] {
    require(out, "out");
    const std::vector<double> sweep = rd::log_sweep(centre, span, points);
    std::copy(sweep.begin(), sweep.end(), out);
  });
}

rd_status rd_identification_curve(const rd_letter_setup* setup, const double* intensities,
                                  size_t n_points, const rd_run_params* params,
                                  size_t trials_per_point, rd_curve** out) {
  return guarded([&] {
    require(setup, "setup");
    require(params, "params");
    require(out, "out");
    if (n_points) require(intensities, "intensities");
    *out = nullptr;
    const rd::RunConfig config = from_c(*params);
    *out = new rd_curve{rd::identification_curve(
        from_c(*setup), {intensities, n_points}, config.cone, config.surround,
        config.observer, trials_per_point)};
  });
}

void rd_curve_destroy(rd_curve* curve) { delete curve; }

size_t rd_curve_size(const rd_curve* curve) { return curve ? curve->impl.points.size() : 0; }

rd_status rd_curve_get(const rd_curve* curve, size_t index, rd_curve_point* out) {
  return guarded([&] {
    require(curve, "curve");
    require(out, "out");
    if (index >= curve->impl.points.size())
      throw rd::Error(rd::ErrorCode::InvalidArgument, "point index out of range");
    const rd::CurvePoint& p = curve->impl.points[index];
    *out = {p.intensity, p.p_identified, p.p_bright, p.p_dark, p.mean_scaled_contrast};
  });
}

double rd_curve_crossover(const rd_curve* curve) {
  return curve ? curve->impl.crossover_intensity : 0.0;
}

rd_status rd_curve_write_csv(const rd_curve* curve, const char* path) {
  return guarded([&] {
    require(curve, "curve");
    with_output(path, false,
                [&](std::ostream& out) { rd::write_curve_csv(out, curve->impl.points); });
  });
}

}  // extern "C"
