#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "retina_duo/channels.hpp"
#include "retina_duo/lateral.hpp"
#include "retina_duo/psychophys.hpp"
#include "retina_duo/retina_front.hpp"
#include "retina_duo/stimulus.hpp"

namespace retina_duo {

// Flat `key = value` text with optional `[section]` headers. Keys are stored
// as "section.key" (or bare "key" before the first header). '#' and ';' start
// comments.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues load_key_values(const std::string& path);

double parse_number(const std::string& key, const std::string& text);
bool parse_bool(const std::string& key, const std::string& text);

struct RunConfig {
  std::string profile = "fig5_display";
  std::string stimulus_path;
  std::string output_dir = ".";
  ConeParams cone = cone_profile("fig5_display");
  SurroundParams surround;
  ChannelParams channel;
  ObserverParams observer;
};

// Profile named by RETINA_DUO_PROFILE when set, otherwise fig5_display.
RunConfig default_run_config();

// Applies recognised keys; unknown keys and ill-typed values throw Parse. A
// `profile` key resets the cone parameters before any cone.* key applies.
void apply_overrides(RunConfig& config, const KeyValues& values);

// Stimulus description file. Sections:
//   [grid]       width, height, pixel_pitch_um, duration_us
//   [background] luminance
//   [flicker]    frequency_hz, flash_duration_us or duty, intensity
//                (a number or "balance"), phase_us
//   [glyph]      letter, scale
// Without [glyph] a [flicker] section drives every cell; without [flicker]
// every cell is steady at the background luminance.
StimulusProgram parse_stimulus(const KeyValues& values);
StimulusProgram load_stimulus(const std::string& path);

// Brightness-matching sweep: section [sweep] with comma-separated lists
// frequencies_hz, durations_us and steady_cd_m2. Missing lists are empty.
struct SweepSpec {
  std::vector<double> frequencies_hz;
  std::vector<double> durations_us;
  std::vector<double> steady_levels;
};

SweepSpec parse_sweep(const KeyValues& values);

}  // namespace retina_duo
