#include "retina_duo/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "retina_duo/error.hpp"

namespace retina_duo {

namespace {

// Slack on the threshold comparison so an integrator that settles back onto a
// level (to within rounding) still fires the event that level implies.
constexpr double kLevelSlack = 1e-9;

struct Segment {
  double t0;
  double t1;
  double input;
};

// Constant-input pieces of one cell's program over [0, duration].
template <typename Visit>
void for_each_segment(const CellProgram& cell, double duration, Visit&& visit) {
  if (const auto* steady = std::get_if<Steady>(&cell)) {
    visit(Segment{0.0, duration, steady->luminance});
    return;
  }
  const FlickerSpec& spec = std::get<Flicker>(cell).spec;
  if (spec.flash_duration_us >= spec.period_us) {
    visit(Segment{0.0, duration, spec.flash_intensity});
    return;
  }
  const double period = spec.period_us;
  // Cycle k flashes on [phase + k*T, phase + k*T + d) and is dark until the
  // next onset. Cycle -1 can still overlap t = 0 when phase > 0.
  for (long long k = spec.phase_us > 0.0 ? -1 : 0;; ++k) {
    const double onset = spec.phase_us + static_cast<double>(k) * period;
    if (onset >= duration) break;
    const double flash_end = onset + spec.flash_duration_us;
    const double next = spec.phase_us + static_cast<double>(k + 1) * period;
    const double a = std::max(onset, 0.0);
    const double b = std::min(flash_end, duration);
    if (b > a) visit(Segment{a, b, spec.flash_intensity});
    const double c = std::max(flash_end, 0.0);
    const double d = std::min(next, duration);
    if (d > c) visit(Segment{c, d, 0.0});
  }
}

class ChangeDetector {
 public:
  ChangeDetector(const ConeParams& cone, double threshold, double v0,
                 std::uint16_t x, std::uint16_t y, std::vector<Event>& out)
      : cone_(cone),
        threshold_(threshold),
        v_(v0),
        reference_(transduce(v0, cone)),
        x_(x),
        y_(y),
        out_(out) {}

  void advance(const Segment& seg) {
    const double dt = seg.t1 - seg.t0;
    const double v0 = v_;
    const double v1 = seg.input + (v0 - seg.input) * std::exp(-dt / cone_.tau_us);
    const double u1 = transduce(v1, cone_);
    while (u1 >= reference_ + threshold_ - kLevelSlack &&
           reference_ + threshold_ <= 1.0) {
      reference_ += threshold_;
      emit(seg, v0, reference_, Polarity::On);
    }
    while (u1 <= reference_ - threshold_ + kLevelSlack &&
           reference_ - threshold_ >= 0.0) {
      reference_ -= threshold_;
      emit(seg, v0, reference_, Polarity::Off);
    }
    v_ = v1;
  }

 private:
  void emit(const Segment& seg, double v0, double level, Polarity polarity) {
    const double dt = seg.t1 - seg.t0;
    const double v_level = luminance_for_drive(level, cone_);
    double s = dt;
    const double ratio = (v_level - seg.input) / (v0 - seg.input);
    if (ratio > 0.0 && ratio <= 1.0) s = std::min(dt, -cone_.tau_us * std::log(ratio));
    const double t = std::max(0.0, seg.t0 + s);
    out_.push_back({static_cast<std::uint64_t>(std::llround(t)), x_, y_, polarity});
  }

  const ConeParams& cone_;
  double threshold_;
  double v_;
  double reference_;
  std::uint16_t x_;
  std::uint16_t y_;
  std::vector<Event>& out_;
};

}  // namespace

void validate(const ChannelParams& params) {
  if (!(params.r_max > 0.0))
    throw Error(ErrorCode::NonPositive, "channel r_max must be > 0");
  if (!(params.r_spont >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "channel r_spont must be >= 0");
  if (!(params.contrast_gain > 0.0))
    throw Error(ErrorCode::NonPositive, "channel contrast_gain must be > 0");
}

LuminanceChannels encode_luminance(double u, const ChannelParams& params) {
  if (!(u >= 0.0 && u <= 1.0))
    throw Error(ErrorCode::InvalidArgument,
                "drive u must lie in [0, 1], got " + std::to_string(u));
  const double total = 2.0 * params.r_spont + params.r_max;
  const double bright = params.r_spont + params.r_max * u;
  const double dark = total - bright;
  // total - bright may be a rounding tie that no dark rate fixes on its own;
  // walk both rates a few ulps until the sum is exactly the total.
  auto step = [](double v, int n) {
    const double inf = std::numeric_limits<double>::infinity();
    for (; n > 0; --n) v = std::nextafter(v, inf);
    for (; n < 0; ++n) v = std::nextafter(v, -inf);
    return v;
  };
  for (int radius = 0; radius <= 4; ++radius)
    for (int db = -radius; db <= radius; ++db)
      for (int dd = -radius; dd <= radius; ++dd) {
        if (std::max(std::abs(db), std::abs(dd)) != radius) continue;
        const double b = step(bright, db);
        const double d = step(dark, dd);
        if (b + d == total) return {b, d};
      }
  return {bright, dark};
}

ContrastChannels encode_contrast(const ContrastPair& pair,
                                 const ChannelParams& params) {
  if (!(pair.bright >= 0.0) || !(pair.dark >= 0.0))
    throw Error(ErrorCode::InvalidArgument,
                "contrast components must be non-negative");
  if (pair.bright > 0.0 && pair.dark > 0.0)
    throw Error(ErrorCode::BothPositive,
                "bright and dark contrast are both positive");
  return {params.r_spont + params.contrast_gain * pair.bright,
          params.r_spont + params.contrast_gain * pair.dark};
}

bool event_order(const Event& a, const Event& b) noexcept {
  return std::tie(a.t_us, a.y, a.x, a.polarity) <
         std::tie(b.t_us, b.y, b.x, b.polarity);
}

std::vector<Event> event_stream(const StimulusProgram& program,
                                const ConeParams& cone, double threshold_u,
                                const EventOptions& options) {
  validate(cone);
  if (!(threshold_u > 0.0))
    throw Error(ErrorCode::NonPositive, "event threshold must be > 0");
  if (program.width() > 65536 || program.height() > 65536)
    throw Error(ErrorCode::InvalidArgument, "grid too large for 16-bit events");
  if (options.initial_luminance && !(*options.initial_luminance >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "initial luminance must be >= 0");

  std::vector<Event> events;
  for (std::size_t y = 0; y < program.height(); ++y) {
    for (std::size_t x = 0; x < program.width(); ++x) {
      const CellProgram& cell = program.cell(x, y);
      const double v0 = options.initial_luminance.value_or(mean_luminance(cell));
      ChangeDetector detector(cone, threshold_u, v0,
                              static_cast<std::uint16_t>(x),
                              static_cast<std::uint16_t>(y), events);
      for_each_segment(cell, program.duration_us(),
                       [&](const Segment& seg) { detector.advance(seg); });
    }
  }
  std::stable_sort(events.begin(), events.end(), event_order);
  return events;
}

}  // namespace retina_duo
