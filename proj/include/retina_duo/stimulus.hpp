#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace retina_duo {

// Periodic rectangular flash train. Times are in microseconds, intensity in
// cd/m^2. Construct through make_flicker(); the members are validated there.
struct FlickerSpec {
  double frequency_hz = 0.0;
  double flash_duration_us = 0.0;
  double flash_intensity = 0.0;
  double phase_us = 0.0;
  double period_us = 0.0;
};

// Durations within half a microsecond of the period are treated as a
// continuous emitter and clamped to exactly one period.
FlickerSpec make_flicker(double frequency_hz, double flash_duration_us,
                         double flash_intensity, double phase_us = 0.0);

double sample_waveform(const FlickerSpec& spec, double t_us);

struct Steady {
  double luminance = 0.0;
};

struct Flicker {
  FlickerSpec spec;
};

using CellProgram = std::variant<Steady, Flicker>;

// Time-averaged luminance of a single cell program.
double mean_luminance(const CellProgram& cell);

// Row-major 2-D luminance grid.
template <typename T>
struct Grid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<T> values;

  Grid() = default;
  Grid(std::size_t w, std::size_t h, T fill = T{})
      : width(w), height(h), values(w * h, fill) {}

  decltype(auto) at(std::size_t x, std::size_t y) {
    return values[y * width + x];
  }
  decltype(auto) at(std::size_t x, std::size_t y) const {
    return values[y * width + x];
  }
};

using LuminanceField = Grid<double>;

class StimulusProgram {
 public:
  StimulusProgram(std::size_t width, std::size_t height, double pixel_pitch_um,
                  double duration_us, CellProgram fill = Steady{});

  std::size_t width() const noexcept { return cells_.width; }
  std::size_t height() const noexcept { return cells_.height; }
  double pixel_pitch_um() const noexcept { return pixel_pitch_um_; }
  double duration_us() const noexcept { return duration_us_; }

  const CellProgram& cell(std::size_t x, std::size_t y) const {
    return cells_.at(x, y);
  }
  void set_cell(std::size_t x, std::size_t y, CellProgram program);

  const std::vector<CellProgram>& cells() const noexcept {
    return cells_.values;
  }

 private:
  Grid<CellProgram> cells_;
  double pixel_pitch_um_;
  double duration_us_;
};

// Glyph bitmap, row-major, true marks a letter cell.
struct Glyph {
  char letter = ' ';
  Grid<bool> bitmap;

  std::size_t lit_count() const;
};

// Uppercase 5x7 dot-matrix font. ' ' yields an empty glyph. `scale` replicates
// each dot into a scale x scale block.
Glyph make_glyph(char letter, std::size_t scale = 1);
bool has_glyph(char letter) noexcept;

// Places the glyph centred on the grid: lit cells flicker with `letter_cells`,
// every other cell is Steady{background_luminance}.
StimulusProgram render_letter_program(const Glyph& glyph,
                                      const FlickerSpec& letter_cells,
                                      double background_luminance,
                                      std::size_t width, std::size_t height,
                                      double pixel_pitch_um,
                                      double duration_us);

// Origin of the glyph inside a width x height grid, as used by
// render_letter_program.
std::pair<std::size_t, std::size_t> glyph_origin(const Glyph& glyph,
                                                 std::size_t width,
                                                 std::size_t height);

LuminanceField sample_field(const StimulusProgram& program, double t_us);

}  // namespace retina_duo
