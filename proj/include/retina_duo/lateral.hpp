#pragma once

#include <cstddef>
#include <vector>

#include "retina_duo/stimulus.hpp"

namespace retina_duo {

enum class SurroundWeighting { UniformAnnulus, GaussianAnnulus };

struct SurroundParams {
  double center_radius_um = 11.5;
  double surround_radius_um = 225.5;
  SurroundWeighting weighting = SurroundWeighting::UniformAnnulus;
  // Pool the centre disk into the surround as well (sensitivity runs only).
  bool include_center = false;
};

void validate(const SurroundParams& params);

// Transduced drive u in [0, 1] per cell.
class DriveField {
 public:
  DriveField(std::size_t width, std::size_t height, double pixel_pitch_um,
             std::vector<double> values);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  double pixel_pitch_um() const noexcept { return pixel_pitch_um_; }
  double at(std::size_t x, std::size_t y) const {
    return values_[y * width_ + x];
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  std::size_t width_;
  std::size_t height_;
  double pixel_pitch_um_;
  std::vector<double> values_;
};

// Precomputed annulus stencil for one pitch/params pair. Weights are
// renormalised per cell over the offsets that land inside the grid.
class SurroundKernel {
 public:
  struct Tap {
    int dx;
    int dy;
    double weight;
  };

  SurroundKernel(double pixel_pitch_um, const SurroundParams& params);

  const std::vector<Tap>& taps() const noexcept { return taps_; }

  double average(const DriveField& field, std::size_t x, std::size_t y) const;

 private:
  std::vector<Tap> taps_;
};

// Horizontal-cell surround average Y around (x, y).
double surround_average(const DriveField& field, std::size_t x, std::size_t y,
                        const SurroundParams& params);

// Rectified difference: X - Y when Y <= X, otherwise 0.
double and_not(double x, double y) noexcept;

struct ContrastPair {
  double bright = 0.0;
  double dark = 0.0;
};

ContrastPair contrast_pair(double center, double surround) noexcept;

struct ContrastMaps {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> bright;
  std::vector<double> dark;
};

ContrastMaps contrast_fields(const DriveField& field,
                             const SurroundParams& params);

}  // namespace retina_duo
