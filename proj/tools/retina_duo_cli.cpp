// retina-duo: command-line driver over the C API.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "retina_duo.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Failure {
  int exit_code;
};

int exit_code_for(rd_status status) {
  switch (status) {
    case RD_ERR_NOT_FUSED:
    case RD_ERR_NO_CONVERGENCE:
    case RD_ERR_SWEEP_DOES_NOT_BRACKET:
    case RD_ERR_INTERNAL:
      return kExitNumeric;
    default:
      return kExitUsage;
  }
}

void check(rd_status status, const std::string& context) {
  if (status == RD_OK) return;
  std::cerr << "retina-duo: " << context << ": " << rd_status_name(status) << ": "
            << rd_last_error() << "\n";
  throw Failure{exit_code_for(status)};
}

[[noreturn]] void usage_error(const std::string& message) {
  std::cerr << "retina-duo: " << message << "\n";
  throw Failure{kExitUsage};
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

template <typename T, void (*Destroy)(T*)>
struct Owned {
  T* ptr = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { Destroy(ptr); }
};

using ProgramPtr = Owned<rd_program, rd_program_destroy>;
using EventsPtr = Owned<rd_events, rd_events_destroy>;
using TablePtr = Owned<rd_match_table, rd_match_table_destroy>;
using CurvePtr = Owned<rd_curve, rd_curve_destroy>;

struct GlobalOptions {
  std::string profile;
  std::string config_path;
  std::optional<uint64_t> seed;
};

// Defaults, then the subcommand's preferred profile unless RETINA_DUO_PROFILE
// chose one, then the config file, then --profile and --seed.
rd_run_params resolve_params(const GlobalOptions& g, const char* preferred_profile) {
  rd_run_params params;
  check(rd_run_params_default(&params), "configuration");
  const char* env = std::getenv("RETINA_DUO_PROFILE");
  if (preferred_profile && !(env && *env))
    check(rd_run_params_set_profile(&params, preferred_profile), "profile");
  if (!g.config_path.empty())
    check(rd_run_params_apply_file(&params, g.config_path.c_str()), g.config_path);
  if (!g.profile.empty()) check(rd_run_params_set_profile(&params, g.profile.c_str()), "--profile");
  if (g.seed) params.observer.seed = *g.seed;
  return params;
}

// ---------------------------------------------------------------------------

struct PredictOptions {
  double steady = 0.0;
  double freq = 0.0;
  double duration_us = 0.0;
};

int run_predict(const PredictOptions& o) {
  rd_match_prediction row;
  check(rd_matching_flash_intensity(o.steady, o.freq, o.duration_us, &row), "predict");
  check(rd_write_prediction_csv(&row, 1, "-"), "predict");
  return kExitOk;
}

struct MatchOptions {
  std::vector<double> freqs;
  std::vector<double> durations;
  std::vector<double> steady;
  double base = 1.0;
  std::string sweep_file;
  std::string out = "-";
  bool strict = false;
};

int run_match(const GlobalOptions& g, const MatchOptions& o) {
  const rd_run_params params = resolve_params(g, "fig1_display");
  TablePtr table;
  if (!o.sweep_file.empty()) {
    check(rd_prediction_table_file(o.sweep_file.c_str(), &params.cone, &table.ptr),
          o.sweep_file);
  } else {
    std::vector<double> freqs = o.freqs.empty() ? std::vector<double>{24.0} : o.freqs;
    std::vector<double> durations =
        o.durations.empty() ? std::vector<double>{1, 10, 100, 1000, 10000} : o.durations;
    std::vector<double> steady = o.steady;
    if (steady.empty())
      for (int k = 0; k < 5; ++k) steady.push_back(o.base * std::ldexp(1.0, k));
    check(rd_prediction_table(freqs.data(), freqs.size(), durations.data(), durations.size(),
                              steady.data(), steady.size(), &params.cone, &table.ptr),
          "match");
  }
  check(rd_match_table_write_csv(table.ptr, o.out.c_str()), o.out);

  std::size_t not_fused = 0;
  for (std::size_t i = 0; i < rd_match_table_size(table.ptr); ++i) {
    rd_match_result r;
    check(rd_match_table_get(table.ptr, i, &r), "match");
    if (!r.fused) ++not_fused;
  }
  if (not_fused > 0) {
    std::cerr << "retina-duo: " << not_fused << " condition(s) below fusion\n";
    if (o.strict) return kExitNumeric;
  }
  return kExitOk;
}

struct LettersOptions {
  std::string glyph = "E";
  std::size_t scale = 2;
  std::vector<double> backgrounds;
  double freq = 250.0;
  std::optional<double> duty;
  std::optional<double> duration_us;
  std::optional<double> noise;
  std::size_t trials = 200;
  std::size_t points = 21;
  double span = 2.0;
  std::string out_dir = ".";
};

int run_letters(const GlobalOptions& g, const LettersOptions& o) {
  if (o.glyph.size() != 1 || !rd_has_glyph(o.glyph[0]))
    usage_error("unknown glyph '" + o.glyph + "'");
  if (o.duty && o.duration_us) usage_error("give at most one of --duty and --duration-us");
  rd_run_params params = resolve_params(g, nullptr);
  if (o.noise) params.observer.noise_sigma_u = *o.noise;
  if (!(params.observer.noise_sigma_u >= 0.0)) usage_error("--noise must be >= 0");
  if (!(o.freq > 0.0)) usage_error("--freq must be > 0");

  rd_letter_setup setup;
  rd_letter_setup_default(&setup);
  setup.letter = o.glyph[0];
  setup.glyph_scale = o.scale;
  setup.frequency_hz = o.freq;
  if (o.duration_us)
    setup.flash_duration_us = *o.duration_us;
  else
    setup.flash_duration_us = o.duty.value_or(0.5) * 1e6 / o.freq;

  const std::vector<double> backgrounds =
      o.backgrounds.empty() ? std::vector<double>{4.0, 8.0, 12.0} : o.backgrounds;
  std::filesystem::create_directories(o.out_dir);

  for (double bg : backgrounds) {
    setup.background_luminance = bg;
    double balance = 0.0;
    check(rd_balance_intensity(bg, setup.frequency_hz, setup.flash_duration_us, &balance),
          "balance");
    std::vector<double> sweep(o.points);
    check(rd_log_sweep(balance, o.span, o.points, sweep.data()), "sweep");
    CurvePtr curve;
    check(rd_identification_curve(&setup, sweep.data(), sweep.size(), &params, o.trials,
                                  &curve.ptr),
          "background " + fmt(bg));
    const std::string path =
        (std::filesystem::path(o.out_dir) / ("curve_bg" + fmt(bg) + ".csv")).string();
    check(rd_curve_write_csv(curve.ptr, path.c_str()), path);
    const double crossover = rd_curve_crossover(curve.ptr);
    const double deviation = 100.0 * std::fabs(crossover - balance) / balance;
    std::cout << "background=" << fmt(bg) << " balance=" << fmt(balance)
              << " crossover=" << fmt(crossover) << " deviation=" << fmt(deviation)
              << "% csv=" << path << "\n";
  }
  return kExitOk;
}

struct EventsOptions {
  std::string stimulus;
  std::string out;
  std::string csv;
  double threshold = 0.01;
};

int run_events(const GlobalOptions& g, const EventsOptions& o) {
  const rd_run_params params = resolve_params(g, nullptr);
  std::string stimulus = o.stimulus.empty() ? params.stimulus_path : o.stimulus;
  if (stimulus.empty()) usage_error("events needs --stimulus or a stimulus config key");
  if (!(o.threshold > 0.0)) usage_error("--threshold must be > 0");
  std::string out = o.out;
  if (out.empty()) out = (std::filesystem::path(params.output_dir) / "events.rduo").string();

  ProgramPtr program;
  check(rd_program_load(stimulus.c_str(), &program.ptr), stimulus);
  EventsPtr events;
  check(rd_event_stream(program.ptr, &params.cone, o.threshold, &events.ptr), "events");
  check(rd_events_write_binary(events.ptr, out.c_str()), out);
  if (!o.csv.empty()) check(rd_events_write_csv(events.ptr, o.csv.c_str()), o.csv);

  std::size_t on = 0;
  const std::size_t n = rd_events_count(events.ptr);
  for (std::size_t i = 0; i < n; ++i) {
    rd_event e;
    check(rd_events_get(events.ptr, i, &e), "events");
    on += e.polarity ? 1 : 0;
  }
  std::cout << "events=" << n << " on=" << on << " off=" << n - on << " file=" << out << "\n";
  return kExitOk;
}

struct FuseOptions {
  double freq = 0.0;
  std::optional<double> duty;
  std::optional<double> duration_us;
  double intensity = 1.0;
};

int run_fuse_check(const GlobalOptions& g, const FuseOptions& o) {
  if (o.duty.has_value() == o.duration_us.has_value())
    usage_error("give exactly one of --duty and --duration-us");
  if (!(o.freq > 0.0)) usage_error("--freq must be > 0");
  const rd_run_params params = resolve_params(g, nullptr);
  const double duration = o.duration_us ? *o.duration_us : *o.duty * 1e6 / o.freq;
  rd_flicker_spec spec;
  check(rd_make_flicker(o.freq, duration, o.intensity, 0.0, &spec), "fuse-check");
  rd_steady_state stats;
  check(rd_steady_state_stats(&spec, &params.cone, &stats), "fuse-check");
  int fused = 0;
  check(rd_is_fused(&spec, &params.cone, &fused), "fuse-check");
  std::cout << "frequency_hz=" << fmt(spec.frequency_hz)
            << " duration_us=" << fmt(spec.flash_duration_us) << " duty=" << fmt(rd_duty_cycle(&spec))
            << " mean=" << fmt(stats.mean) << " ripple=" << fmt(stats.ripple)
            << " threshold=" << fmt(params.cone.ripple_fusion_threshold)
            << " fused=" << (fused ? "true" : "false") << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-channel retina simulator"};
  app.set_version_flag("--version", rd_version());
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  uint64_t seed = 0;
  app.add_option("--profile", g.profile, "Cone profile (fig5_display, fig1_display)");
  app.add_option("--config", g.config_path, "key = value configuration file")
      ->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Observer noise seed");

  PredictOptions predict;
  auto* predict_cmd = app.add_subcommand("predict", "Talbot-Plateau flash intensity for one condition");
  predict_cmd->add_option("--steady", predict.steady, "Steady luminance, cd/m^2")
      ->required()->check(CLI::NonNegativeNumber);
  predict_cmd->add_option("--freq", predict.freq, "Flicker frequency, Hz")
      ->required()->check(CLI::PositiveNumber);
  predict_cmd->add_option("--duration-us", predict.duration_us, "Flash duration, us")
      ->required()->check(CLI::PositiveNumber);

  MatchOptions match;
  auto* match_cmd = app.add_subcommand("match", "Simulated brightness matches over a sweep");
  match_cmd->add_option("--freq", match.freqs, "Frequency, Hz (repeatable)")
      ->check(CLI::PositiveNumber);
  match_cmd->add_option("--duration-us", match.durations, "Flash duration, us (repeatable)")
      ->check(CLI::PositiveNumber);
  match_cmd->add_option("--steady", match.steady, "Steady level, cd/m^2 (repeatable)")
      ->check(CLI::PositiveNumber);
  match_cmd->add_option("--base", match.base, "Base of the five octave steady levels")
      ->check(CLI::PositiveNumber);
  match_cmd->add_option("--sweep-file", match.sweep_file, "Sweep file with a [sweep] section")
      ->check(CLI::ExistingFile);
  match_cmd->add_option("--out", match.out, "Output CSV ('-' for stdout)");
  match_cmd->add_flag("--strict", match.strict, "Exit 3 when any condition is below fusion");

  LettersOptions letters;
  auto* letters_cmd = app.add_subcommand("letters", "Identification curves for a flicker-fused letter");
  letters_cmd->add_option("--glyph", letters.glyph, "Letter A-Z");
  letters_cmd->add_option("--scale", letters.scale, "Glyph scale factor")->check(CLI::PositiveNumber);
  letters_cmd->add_option("--bg", letters.backgrounds, "Background luminance (repeatable)")
      ->check(CLI::PositiveNumber);
  letters_cmd->add_option("--freq", letters.freq, "Flicker frequency, Hz");
  auto* duty_opt = letters_cmd->add_option("--duty", letters.duty, "Duty cycle");
  letters_cmd->add_option("--duration-us", letters.duration_us, "Flash duration, us")
      ->excludes(duty_opt);
  letters_cmd->add_option("--noise", letters.noise, "Decision noise sigma (drive units)");
  letters_cmd->add_option("--trials", letters.trials, "Trials per sweep point")
      ->check(CLI::PositiveNumber);
  letters_cmd->add_option("--points", letters.points, "Sweep points")->check(CLI::Range(2, 100001));
  letters_cmd->add_option("--span", letters.span, "Sweep covers balance/span .. balance*span")
      ->check(CLI::Range(1.0000001, 1e6));
  letters_cmd->add_option("--out-dir", letters.out_dir, "Directory for curve CSVs");
  letters_cmd->add_option("--seed", seed, "Observer noise seed");

  EventsOptions events;
  auto* events_cmd = app.add_subcommand("events", "Event stream for a stimulus file");
  events_cmd->add_option("--stimulus", events.stimulus, "Stimulus description file");
  events_cmd->add_option("--out", events.out, "Binary event file");
  events_cmd->add_option("--csv", events.csv, "Also write events as CSV");
  events_cmd->add_option("--threshold", events.threshold, "Change threshold in drive units");

  FuseOptions fuse;
  auto* fuse_cmd = app.add_subcommand("fuse-check", "Steady-state ripple and fusion flag");
  fuse_cmd->add_option("--freq", fuse.freq, "Flicker frequency, Hz")->required();
  auto* fuse_duty = fuse_cmd->add_option("--duty", fuse.duty, "Duty cycle");
  fuse_cmd->add_option("--duration-us", fuse.duration_us, "Flash duration, us")->excludes(fuse_duty);
  fuse_cmd->add_option("--intensity", fuse.intensity, "Flash intensity, cd/m^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (seed_opt->count() > 0 || letters_cmd->get_option("--seed")->count() > 0) g.seed = seed;

  try {
    if (*predict_cmd) return run_predict(predict);
    if (*match_cmd) return run_match(g, match);
    if (*letters_cmd) return run_letters(g, letters);
    if (*events_cmd) return run_events(g, events);
    if (*fuse_cmd) return run_fuse_check(g, fuse);
  } catch (const Failure& f) {
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "retina-duo: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
