#include "retina_duo/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <set>

#include "retina_duo/error.hpp"
#include "retina_duo/talbot.hpp"

namespace retina_duo {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double get_number(const KeyValues& kv, const std::string& key, double fallback) {
  const auto it = kv.find(key);
  return it == kv.end() ? fallback : parse_number(key, it->second);
}

std::size_t get_count(const KeyValues& kv, const std::string& key,
                      std::size_t fallback) {
  const double v = get_number(kv, key, static_cast<double>(fallback));
  if (!(v >= 1.0) || v != std::floor(v))
    throw Error(ErrorCode::Parse, key + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

bool has_section(const KeyValues& kv, const std::string& section) {
  const auto it = kv.lower_bound(section + ".");
  return it != kv.end() && it->first.rfind(section + ".", 0) == 0;
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string section;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto c = line.find_first_of("#;"); c != std::string::npos)
      line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::Parse,
                    "unterminated section header on line " + std::to_string(line_no));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw Error(ErrorCode::Parse, "empty section name on line " + std::to_string(line_no));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::Parse,
                  "expected key = value on line " + std::to_string(line_no));
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw Error(ErrorCode::Parse, "empty key on line " + std::to_string(line_no));
    const std::string full = section.empty() ? key : section + "." + key;
    if (!kv.emplace(full, trim(line.substr(eq + 1))).second)
      throw Error(ErrorCode::Parse,
                  "duplicate key '" + full + "' on line " + std::to_string(line_no));
  }
  return kv;
}

KeyValues load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "'");
  return parse_key_values(in);
}

double parse_number(const std::string& key, const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v))
    throw Error(ErrorCode::Parse, key + ": '" + text + "' is not a number");
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::Parse, key + ": '" + text + "' is not a boolean");
}

RunConfig default_run_config() {
  RunConfig config;
  if (const char* env = std::getenv("RETINA_DUO_PROFILE"); env && *env) {
    if (!has_cone_profile(env))
      throw Error(ErrorCode::Parse,
                  std::string("RETINA_DUO_PROFILE names unknown profile '") + env + "'");
    config.profile = env;
    config.cone = cone_profile(env);
  }
  return config;
}

void apply_overrides(RunConfig& config, const KeyValues& values) {
  if (const auto it = values.find("profile"); it != values.end()) {
    if (!has_cone_profile(it->second))
      throw Error(ErrorCode::Parse, "profile: unknown profile '" + it->second + "'");
    config.profile = it->second;
    config.cone = cone_profile(it->second);
  }
  for (const auto& [key, value] : values) {
    auto num = [&] { return parse_number(key, value); };
    if (key == "profile") {
    } else if (key == "stimulus") {
      config.stimulus_path = value;
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else if (key == "seed" || key == "observer.seed") {
      const double v = num();
      if (v < 0.0 || v != std::floor(v) || v > 1.8e19)
        throw Error(ErrorCode::Parse, key + " must be a non-negative integer");
      config.observer.seed = std::stoull(value);
    } else if (key == "cone.tau_us") {
      config.cone.tau_us = num();
    } else if (key == "cone.l_min") {
      config.cone.l_min = num();
    } else if (key == "cone.l_max") {
      config.cone.l_max = num();
    } else if (key == "cone.ripple_threshold") {
      config.cone.ripple_fusion_threshold = num();
    } else if (key == "surround.center_um") {
      config.surround.center_radius_um = num();
    } else if (key == "surround.radius_um") {
      config.surround.surround_radius_um = num();
    } else if (key == "surround.weighting") {
      if (value == "uniform_annulus")
        config.surround.weighting = SurroundWeighting::UniformAnnulus;
      else if (value == "gaussian_annulus")
        config.surround.weighting = SurroundWeighting::GaussianAnnulus;
      else
        throw Error(ErrorCode::Parse, key + ": unknown weighting '" + value + "'");
    } else if (key == "surround.include_center") {
      config.surround.include_center = parse_bool(key, value);
    } else if (key == "channel.r_max") {
      config.channel.r_max = num();
    } else if (key == "channel.r_spont") {
      config.channel.r_spont = num();
    } else if (key == "channel.contrast_gain") {
      config.channel.contrast_gain = num();
    } else if (key == "observer.id_threshold_u") {
      config.observer.id_threshold_u = num();
    } else if (key == "observer.noise_sigma_u") {
      config.observer.noise_sigma_u = num();
    } else if (key == "observer.contrast_scale") {
      config.observer.contrast_scale = num();
    } else if (key == "observer.statistic") {
      if (value == "mean")
        config.observer.statistic = LetterStatistic::MeanOverLetter;
      else if (value == "max")
        config.observer.statistic = LetterStatistic::MaxOverLetter;
      else
        throw Error(ErrorCode::Parse, key + ": expected mean or max");
    } else {
      throw Error(ErrorCode::Parse, "unknown configuration key '" + key + "'");
    }
  }
  try {
    validate(config.cone);
    validate(config.surround);
    validate(config.channel);
    validate(config.observer);
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

StimulusProgram parse_stimulus(const KeyValues& kv) {
  static const std::set<std::string> known = {
      "grid.width",          "grid.height",        "grid.pixel_pitch_um",
      "grid.duration_us",    "background.luminance", "flicker.frequency_hz",
      "flicker.flash_duration_us", "flicker.duty",   "flicker.intensity",
      "flicker.phase_us",    "glyph.letter",       "glyph.scale"};
  for (const auto& [key, value] : kv)
    if (!known.contains(key))
      throw Error(ErrorCode::Parse, "unknown stimulus key '" + key + "'");

  const std::size_t width = get_count(kv, "grid.width", 64);
  const std::size_t height = get_count(kv, "grid.height", 64);
  const double pitch = get_number(kv, "grid.pixel_pitch_um", 50.0);
  const double duration = get_number(kv, "grid.duration_us", 1e6);
  const double background = get_number(kv, "background.luminance", 0.0);

  if (!has_section(kv, "flicker")) {
    if (has_section(kv, "glyph"))
      throw Error(ErrorCode::Parse, "[glyph] needs a [flicker] section");
    return StimulusProgram(width, height, pitch, duration, Steady{background});
  }

  if (!kv.contains("flicker.frequency_hz"))
    throw Error(ErrorCode::Parse, "flicker.frequency_hz is required");
  const double frequency = parse_number("flicker.frequency_hz", kv.at("flicker.frequency_hz"));
  if (!(frequency > 0.0)) throw Error(ErrorCode::Parse, "flicker.frequency_hz must be > 0");
  double flash_duration = 0.0;
  if (kv.contains("flicker.flash_duration_us") == kv.contains("flicker.duty"))
    throw Error(ErrorCode::Parse,
                "give exactly one of flicker.flash_duration_us and flicker.duty");
  if (kv.contains("flicker.duty"))
    flash_duration = parse_number("flicker.duty", kv.at("flicker.duty")) * 1e6 / frequency;
  else
    flash_duration = parse_number("flicker.flash_duration_us", kv.at("flicker.flash_duration_us"));

  double intensity = 0.0;
  const std::string intensity_text =
      kv.contains("flicker.intensity") ? kv.at("flicker.intensity") : "balance";
  if (intensity_text == "balance")
    intensity = balance_intensity(background, frequency, flash_duration);
  else
    intensity = parse_number("flicker.intensity", intensity_text);
  const FlickerSpec spec = make_flicker(frequency, flash_duration, intensity,
                                        get_number(kv, "flicker.phase_us", 0.0));

  if (!has_section(kv, "glyph"))
    return StimulusProgram(width, height, pitch, duration, Flicker{spec});

  const std::string letter = kv.contains("glyph.letter") ? kv.at("glyph.letter") : "";
  if (letter.size() != 1 || !has_glyph(letter[0]))
    throw Error(ErrorCode::UnknownGlyph, "glyph.letter: no glyph for '" + letter + "'");
  const Glyph glyph = make_glyph(letter[0], get_count(kv, "glyph.scale", 1));
  return render_letter_program(glyph, spec, background, width, height, pitch, duration);
}

StimulusProgram load_stimulus(const std::string& path) {
  return parse_stimulus(load_key_values(path));
}

SweepSpec parse_sweep(const KeyValues& values) {
  SweepSpec sweep;
  auto parse_list = [](const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      const std::string item =
          trim(text.substr(start, comma == std::string::npos ? std::string::npos
                                                             : comma - start));
      if (!item.empty()) out.push_back(parse_number(key, item));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  };
  for (const auto& [key, value] : values) {
    if (key == "sweep.frequencies_hz")
      sweep.frequencies_hz = parse_list(key, value);
    else if (key == "sweep.durations_us")
      sweep.durations_us = parse_list(key, value);
    else if (key == "sweep.steady_cd_m2")
      sweep.steady_levels = parse_list(key, value);
    else
      throw Error(ErrorCode::Parse, "unknown sweep key '" + key + "'");
  }
  return sweep;
}

}  // namespace retina_duo
