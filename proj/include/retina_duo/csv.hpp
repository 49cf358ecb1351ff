#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "retina_duo/psychophys.hpp"
#include "retina_duo/talbot.hpp"

namespace retina_duo {

inline constexpr char kPredictionHeader[] =
    "frequency_hz,duration_us,steady_cd_m2,predicted_intensity_cd_m2,duty";
inline constexpr char kMatchHeader[] =
    "frequency_hz,duration_us,steady_cd_m2,tp_predicted,matched,relative_error,fused";
inline constexpr char kCurveHeader[] =
    "intensity_cd_m2,p_identified,p_bright,p_dark,mean_scaled_contrast";

// Nine significant digits, printf %.9g.
std::string format_number(double v);

void write_prediction_csv(std::ostream& out, std::span<const MatchPrediction> rows);
std::vector<MatchPrediction> read_prediction_csv(std::istream& in);

void write_match_csv(std::ostream& out, std::span<const MatchRow> rows);
std::vector<MatchRow> read_match_csv(std::istream& in);

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points);
std::vector<CurvePoint> read_curve_csv(std::istream& in);

}  // namespace retina_duo
