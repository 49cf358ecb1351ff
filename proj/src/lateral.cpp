#include "retina_duo/lateral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "retina_duo/error.hpp"

namespace retina_duo {

void validate(const SurroundParams& params) {
  if (!(params.center_radius_um > 0.0))
    throw Error(ErrorCode::NonPositive, "surround.center_um must be > 0");
  if (!(params.surround_radius_um > params.center_radius_um) ||
      !std::isfinite(params.surround_radius_um))
    throw Error(ErrorCode::InvalidArgument,
                "surround.radius_um must exceed surround.center_um");
}

DriveField::DriveField(std::size_t width, std::size_t height,
                       double pixel_pitch_um, std::vector<double> values)
    : width_(width),
      height_(height),
      pixel_pitch_um_(pixel_pitch_um),
      values_(std::move(values)) {
  if (width_ == 0 || height_ == 0)
    throw Error(ErrorCode::NonPositive, "drive field must be non-empty");
  if (!(pixel_pitch_um_ > 0.0))
    throw Error(ErrorCode::NonPositive, "pixel_pitch_um must be > 0");
  if (values_.size() != width_ * height_)
    throw Error(ErrorCode::InvalidArgument,
                "drive field has " + std::to_string(values_.size()) +
                    " values for a " + std::to_string(width_) + "x" +
                    std::to_string(height_) + " grid");
  for (double u : values_)
    if (!(u >= 0.0 && u <= 1.0))
      throw Error(ErrorCode::InvalidArgument, "drive values must lie in [0, 1]");
}

SurroundKernel::SurroundKernel(double pixel_pitch_um,
                               const SurroundParams& params) {
  validate(params);
  if (!(pixel_pitch_um > 0.0))
    throw Error(ErrorCode::NonPositive, "pixel_pitch_um must be > 0");
  const int reach =
      static_cast<int>(std::floor(params.surround_radius_um / pixel_pitch_um));
  const double sigma = params.surround_radius_um / 2.0;
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      const double r = pixel_pitch_um * std::hypot(dx, dy);
      if (r > params.surround_radius_um) continue;
      if (!params.include_center && r <= params.center_radius_um) continue;
      const double w =
          params.weighting == SurroundWeighting::UniformAnnulus
              ? 1.0
              : std::exp(-(r * r) / (2.0 * sigma * sigma));
      taps_.push_back({dx, dy, w});
    }
  }
  if (taps_.empty())
    throw Error(ErrorCode::EmptySurround,
                "surround annulus contains no cells at pitch " +
                    std::to_string(pixel_pitch_um) + " um");
}

double SurroundKernel::average(const DriveField& field, std::size_t x,
                               std::size_t y) const {
  if (x >= field.width() || y >= field.height())
    throw Error(ErrorCode::InvalidArgument, "cell outside drive field");
  const auto w = static_cast<long>(field.width());
  const auto h = static_cast<long>(field.height());
  // Pool deviations from the centre so a uniform neighbourhood returns the
  // centre value exactly.
  const double centre = field.at(x, y);
  double sum = 0.0;
  double norm = 0.0;
  for (const Tap& tap : taps_) {
    const long xx = static_cast<long>(x) + tap.dx;
    const long yy = static_cast<long>(y) + tap.dy;
    if (xx < 0 || yy < 0 || xx >= w || yy >= h) continue;
    sum += tap.weight * (field.at(static_cast<std::size_t>(xx),
                                  static_cast<std::size_t>(yy)) -
                         centre);
    norm += tap.weight;
  }
  if (!(norm > 0.0))
    throw Error(ErrorCode::EmptySurround,
                "no surround cells inside the grid at (" + std::to_string(x) +
                    ", " + std::to_string(y) + ")");
  return centre + sum / norm;
}

double surround_average(const DriveField& field, std::size_t x, std::size_t y,
                        const SurroundParams& params) {
  return SurroundKernel(field.pixel_pitch_um(), params).average(field, x, y);
}

double and_not(double x, double y) noexcept { return y <= x ? x - y : 0.0; }

ContrastPair contrast_pair(double center, double surround) noexcept {
  return {and_not(center, surround), and_not(surround, center)};
}

ContrastMaps contrast_fields(const DriveField& field,
                             const SurroundParams& params) {
  const SurroundKernel kernel(field.pixel_pitch_um(), params);
  ContrastMaps maps;
  maps.width = field.width();
  maps.height = field.height();
  maps.bright.resize(field.values().size());
  maps.dark.resize(field.values().size());
  for (std::size_t y = 0; y < field.height(); ++y) {
    for (std::size_t x = 0; x < field.width(); ++x) {
      const ContrastPair pair =
          contrast_pair(field.at(x, y), kernel.average(field, x, y));
      maps.bright[y * maps.width + x] = pair.bright;
      maps.dark[y * maps.width + x] = pair.dark;
    }
  }
  return maps;
}

}  // namespace retina_duo
