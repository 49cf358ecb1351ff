/* C interface to the retina_duo library.
 *
 * Every fallible call returns an rd_status. On failure a human-readable
 * message for the calling thread is available from rd_last_error(). Objects
 * behind opaque handles are owned by the caller and released with the
 * matching *_destroy function; destroying NULL is a no-op. */
#ifndef RETINA_DUO_H
#define RETINA_DUO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RETINA_DUO_BUILDING)
#    define RD_API __declspec(dllexport)
#  else
#    define RD_API __declspec(dllimport)
#  endif
#else
#  define RD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rd_status {
  RD_OK = 0,
  RD_ERR_INVALID_ARGUMENT = 1,
  RD_ERR_DUTY_OVERFLOW = 2,
  RD_ERR_NON_POSITIVE = 3,
  RD_ERR_GLYPH_TOO_LARGE = 4,
  RD_ERR_UNKNOWN_GLYPH = 5,
  RD_ERR_OUT_OF_RANGE_TIME = 6,
  RD_ERR_ZERO_DUTY = 7,
  RD_ERR_NON_POSITIVE_LUMINANCE = 8,
  RD_ERR_NON_MONOTONIC_TIME = 9,
  RD_ERR_EMPTY_SURROUND = 10,
  RD_ERR_BOTH_POSITIVE = 11,
  RD_ERR_NOT_FUSED = 12,
  RD_ERR_NO_CONVERGENCE = 13,
  RD_ERR_SWEEP_DOES_NOT_BRACKET = 14,
  RD_ERR_PARSE = 15,
  RD_ERR_IO = 16,
  RD_ERR_INTERNAL = 99
} rd_status;

RD_API const char* rd_status_name(rd_status status);
RD_API const char* rd_last_error(void);
RD_API const char* rd_version(void);

/* ---- stimulus / Talbot-Plateau ---------------------------------------- */

typedef struct rd_flicker_spec {
  double frequency_hz;
  double flash_duration_us;
  double flash_intensity;
  double phase_us;
  double period_us;
} rd_flicker_spec;

typedef struct rd_match_prediction {
  double steady_luminance;
  double frequency_hz;
  double flash_duration_us;
  double predicted_intensity;
  double duty;
} rd_match_prediction;

RD_API rd_status rd_make_flicker(double frequency_hz, double flash_duration_us,
                                 double flash_intensity, double phase_us,
                                 rd_flicker_spec* out);
RD_API double rd_sample_waveform(const rd_flicker_spec* spec, double t_us);
RD_API double rd_duty_cycle(const rd_flicker_spec* spec);
RD_API double rd_average_luminance(const rd_flicker_spec* spec);
RD_API rd_status rd_matching_flash_intensity(double steady_luminance,
                                             double frequency_hz,
                                             double flash_duration_us,
                                             rd_match_prediction* out);
RD_API rd_status rd_balance_intensity(double background_luminance,
                                      double frequency_hz,
                                      double flash_duration_us, double* out);
RD_API rd_status rd_signed_log_contrast(const rd_flicker_spec* spec,
                                        double background_luminance,
                                        double* out);
/* Writes the prediction-line CSV (header plus one row) to `path`; "-" is
 * standard output. */
RD_API rd_status rd_write_prediction_csv(const rd_match_prediction* rows,
                                         size_t count, const char* path);

/* ---- parameters --------------------------------------------------------- */

typedef struct rd_cone_params {
  double tau_us;
  double l_min;
  double l_max;
  double ripple_fusion_threshold;
} rd_cone_params;

typedef enum rd_surround_weighting {
  RD_UNIFORM_ANNULUS = 0,
  RD_GAUSSIAN_ANNULUS = 1
} rd_surround_weighting;

typedef struct rd_surround_params {
  double center_radius_um;
  double surround_radius_um;
  rd_surround_weighting weighting;
  int include_center;
} rd_surround_params;

typedef struct rd_channel_params {
  double r_max;
  double r_spont;
  double contrast_gain;
} rd_channel_params;

typedef enum rd_letter_statistic {
  RD_STATISTIC_MEAN = 0,
  RD_STATISTIC_MAX = 1
} rd_letter_statistic;

typedef struct rd_observer_params {
  double id_threshold_u;
  double noise_sigma_u;
  double contrast_scale;
  uint64_t seed;
  rd_letter_statistic statistic;
} rd_observer_params;

/* Aggregated run configuration. String fields are NUL-terminated. */
typedef struct rd_run_params {
  char profile[32];
  char stimulus_path[512];
  char output_dir[512];
  rd_cone_params cone;
  rd_surround_params surround;
  rd_channel_params channel;
  rd_observer_params observer;
} rd_run_params;

RD_API rd_status rd_cone_profile(const char* name, rd_cone_params* out);
/* Defaults, honouring the RETINA_DUO_PROFILE environment variable. */
RD_API rd_status rd_run_params_default(rd_run_params* out);
/* Applies `key = value` overrides from a config file. */
RD_API rd_status rd_run_params_apply_file(rd_run_params* params, const char* path);
RD_API rd_status rd_run_params_set_profile(rd_run_params* params, const char* name);

/* ---- cone front end ------------------------------------------------------ */

typedef struct rd_cone_state {
  double integrator_value;
  double last_t_us;
} rd_cone_state;

typedef struct rd_steady_state {
  double mean;
  double ripple;
  double min;
  double max;
} rd_steady_state;

RD_API rd_status rd_integrate_step(const rd_cone_state* state, double input_luminance,
                                   double t_us, const rd_cone_params* params,
                                   rd_cone_state* out);
RD_API rd_status rd_steady_state_stats(const rd_flicker_spec* spec,
                                       const rd_cone_params* params,
                                       rd_steady_state* out);
RD_API rd_status rd_is_fused(const rd_flicker_spec* spec, const rd_cone_params* params,
                             int* out);
RD_API double rd_transduce(double mean_luminance, const rd_cone_params* params);

/* ---- lateral gate and channel encoders ---------------------------------- */

RD_API double rd_and_not(double x, double y);
RD_API void rd_contrast_pair(double center, double surround, double* bright,
                             double* dark);
/* `drive` holds width*height values in [0,1], row-major. `surround_out`,
 * `bright_out` and `dark_out` (any may be NULL) receive width*height values. */
RD_API rd_status rd_contrast_fields(const double* drive, size_t width, size_t height,
                                    double pixel_pitch_um,
                                    const rd_surround_params* params,
                                    double* surround_out, double* bright_out,
                                    double* dark_out);
RD_API rd_status rd_encode_luminance(double u, const rd_channel_params* params,
                                     double* bright_rate, double* dark_rate);
RD_API rd_status rd_encode_contrast(double bright, double dark,
                                    const rd_channel_params* params,
                                    double* bright_rate, double* dark_rate);

/* ---- stimulus programs and events --------------------------------------- */

typedef struct rd_program rd_program;

RD_API rd_status rd_program_load(const char* path, rd_program** out);
RD_API rd_status rd_program_letter(char letter, size_t glyph_scale,
                                   const rd_flicker_spec* letter_cells,
                                   double background_luminance, size_t width,
                                   size_t height, double pixel_pitch_um,
                                   double duration_us, rd_program** out);
RD_API void rd_program_destroy(rd_program* program);
RD_API size_t rd_program_width(const rd_program* program);
RD_API size_t rd_program_height(const rd_program* program);
RD_API double rd_program_duration_us(const rd_program* program);
/* `out` receives width*height luminances. */
RD_API rd_status rd_program_sample_field(const rd_program* program, double t_us,
                                         double* out, size_t capacity);

typedef struct rd_event {
  uint64_t t_us;
  uint16_t x;
  uint16_t y;
  uint8_t polarity; /* 1 = ON, 0 = OFF */
} rd_event;

typedef struct rd_events rd_events;

RD_API rd_status rd_event_stream(const rd_program* program, const rd_cone_params* cone,
                                 double threshold_u, rd_events** out);
/* As rd_event_stream, with every cell starting from `initial_luminance`. */
RD_API rd_status rd_event_stream_from(const rd_program* program,
                                      const rd_cone_params* cone, double threshold_u,
                                      double initial_luminance, rd_events** out);
RD_API rd_status rd_events_read_binary(const char* path, rd_events** out);
RD_API void rd_events_destroy(rd_events* events);
RD_API size_t rd_events_count(const rd_events* events);
RD_API rd_status rd_events_get(const rd_events* events, size_t index, rd_event* out);
RD_API rd_status rd_events_write_binary(const rd_events* events, const char* path);
RD_API rd_status rd_events_write_csv(const rd_events* events, const char* path);

/* ---- simulated observer ------------------------------------------------- */

typedef struct rd_match_result {
  double steady_luminance;
  double frequency_hz;
  double flash_duration_us;
  double matched_intensity;
  double tp_predicted_intensity;
  double relative_error;
  int fused;
} rd_match_result;

RD_API rd_status rd_simulate_brightness_match(double steady_luminance,
                                              double frequency_hz,
                                              double flash_duration_us,
                                              const rd_cone_params* cone,
                                              rd_match_result* out);

typedef struct rd_match_table rd_match_table;

RD_API rd_status rd_prediction_table(const double* frequencies_hz, size_t n_frequencies,
                                     const double* durations_us, size_t n_durations,
                                     const double* steady_levels, size_t n_levels,
                                     const rd_cone_params* cone, rd_match_table** out);
RD_API void rd_match_table_destroy(rd_match_table* table);
RD_API size_t rd_match_table_size(const rd_match_table* table);
RD_API rd_status rd_match_table_get(const rd_match_table* table, size_t index,
                                    rd_match_result* out);
/* Sweep file: section [sweep] with comma-separated lists frequencies_hz,
 * durations_us and steady_cd_m2. Missing lists are empty. */
RD_API rd_status rd_prediction_table_file(const char* path, const rd_cone_params* cone,
                                          rd_match_table** out);
RD_API rd_status rd_match_table_write_csv(const rd_match_table* table, const char* path);

typedef struct rd_letter_setup {
  char letter;
  size_t glyph_scale;
  double frequency_hz;
  double flash_duration_us;
  double background_luminance;
  size_t width;
  size_t height;
  double pixel_pitch_um;
  double duration_us;
} rd_letter_setup;

typedef enum rd_judgement {
  RD_JUDGEMENT_NONE = 0,
  RD_JUDGEMENT_BRIGHT = 1,
  RD_JUDGEMENT_DARK = 2
} rd_judgement;

typedef struct rd_trial_result {
  double intensity;
  int identified;
  rd_judgement polarity;
  double scaled_contrast;
} rd_trial_result;

typedef struct rd_curve_point {
  double intensity;
  double p_identified;
  double p_bright;
  double p_dark;
  double mean_scaled_contrast;
} rd_curve_point;

typedef struct rd_curve rd_curve;

/* Default letter setup: 'E' at glyph scale 2 on a 64x64 grid of 50 um cells,
 * 250 Hz with 50% duty on an 8 cd/m^2 background, 1 s long. */
RD_API void rd_letter_setup_default(rd_letter_setup* out);
RD_API int rd_has_glyph(char letter);
RD_API rd_status rd_run_letter_trial(const rd_letter_setup* setup, double intensity,
                                     const rd_run_params* params, uint64_t trial_index,
                                     rd_trial_result* out);
RD_API rd_status rd_log_sweep(double centre, double span, size_t points, double* out);
RD_API rd_status rd_identification_curve(const rd_letter_setup* setup,
                                         const double* intensities, size_t n_points,
                                         const rd_run_params* params,
                                         size_t trials_per_point, rd_curve** out);
RD_API void rd_curve_destroy(rd_curve* curve);
RD_API size_t rd_curve_size(const rd_curve* curve);
RD_API rd_status rd_curve_get(const rd_curve* curve, size_t index, rd_curve_point* out);
RD_API double rd_curve_crossover(const rd_curve* curve);
RD_API rd_status rd_curve_write_csv(const rd_curve* curve, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* RETINA_DUO_H */
