#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "retina_duo/lateral.hpp"
#include "retina_duo/retina_front.hpp"
#include "retina_duo/stimulus.hpp"

namespace retina_duo {

struct ChannelParams {
  double r_max = 100.0;
  double r_spont = 5.0;
  double contrast_gain = 200.0;
};

void validate(const ChannelParams& params);

struct LuminanceChannels {
  double bright_rate = 0.0;
  double dark_rate = 0.0;
};

struct ContrastChannels {
  double bright_rate = 0.0;
  double dark_rate = 0.0;
};

// Tonic luminance code. The two rates always sum to 2*r_spont + r_max; the
// dark rate is the complement of the bright rate within that total.
LuminanceChannels encode_luminance(double u, const ChannelParams& params);

ContrastChannels encode_contrast(const ContrastPair& pair,
                                 const ChannelParams& params);

enum class Polarity : std::uint8_t { Off = 0, On = 1 };

struct Event {
  std::uint64_t t_us = 0;
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  Polarity polarity = Polarity::Off;

  friend bool operator==(const Event&, const Event&) = default;
};

// Sort key used for every emitted stream: (t, y, x, polarity).
bool event_order(const Event& a, const Event& b) noexcept;

struct EventOptions {
  // When unset each cell starts at rest on its own time-averaged luminance.
  // When set, every cell starts from this luminance instead.
  std::optional<double> initial_luminance;
};

// DVS-style change detector on the transduced cone drive of every cell. Each
// cell integrates its program exactly between flash edges; an ON (OFF) event
// fires when u rises (falls) threshold_u past the reference level, and the
// reference then moves to the crossing level. Event times are the crossing
// instants rounded to the nearest microsecond.
std::vector<Event> event_stream(const StimulusProgram& program,
                                const ConeParams& cone, double threshold_u,
                                const EventOptions& options = {});

}  // namespace retina_duo
