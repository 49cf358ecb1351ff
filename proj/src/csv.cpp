#include "retina_duo/csv.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <istream>
#include <ostream>

#include "retina_duo/config.hpp"
#include "retina_duo/error.hpp"

namespace retina_duo {

namespace {

std::vector<std::string> split_row(const std::string& line, std::size_t expected,
                                   std::size_t line_no) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (fields.size() != expected)
    throw Error(ErrorCode::Parse, "expected " + std::to_string(expected) +
                                      " fields on line " + std::to_string(line_no));
  return fields;
}

double field_number(const std::string& text, std::size_t line_no) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  return parse_number("line " + std::to_string(line_no), text);
}

// Reads the header, then hands each non-empty row's fields to `row`.
template <typename Row>
void read_rows(std::istream& in, const char* header, std::size_t columns, Row&& row) {
  std::string line;
  if (!std::getline(in, line) || line != header)
    throw Error(ErrorCode::Parse, std::string("expected CSV header '") + header + "'");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    row(split_row(line, columns, line_no), line_no);
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void write_prediction_csv(std::ostream& out, std::span<const MatchPrediction> rows) {
  out << kPredictionHeader << '\n';
  for (const MatchPrediction& r : rows)
    out << format_number(r.frequency_hz) << ',' << format_number(r.flash_duration_us)
        << ',' << format_number(r.steady_luminance) << ','
        << format_number(r.predicted_intensity) << ',' << format_number(r.duty) << '\n';
}

std::vector<MatchPrediction> read_prediction_csv(std::istream& in) {
  std::vector<MatchPrediction> rows;
  read_rows(in, kPredictionHeader, 5, [&](const auto& f, std::size_t n) {
    MatchPrediction r;
    r.frequency_hz = field_number(f[0], n);
    r.flash_duration_us = field_number(f[1], n);
    r.steady_luminance = field_number(f[2], n);
    r.predicted_intensity = field_number(f[3], n);
    r.duty = field_number(f[4], n);
    rows.push_back(r);
  });
  return rows;
}

void write_match_csv(std::ostream& out, std::span<const MatchRow> rows) {
  out << kMatchHeader << '\n';
  for (const MatchRow& row : rows) {
    const MatchResult& r = row.result;
    out << format_number(r.frequency_hz) << ',' << format_number(r.flash_duration_us)
        << ',' << format_number(r.steady_luminance) << ','
        << format_number(r.tp_predicted_intensity) << ','
        << format_number(r.matched_intensity) << ',' << format_number(r.relative_error)
        << ',' << (row.fused ? "true" : "false") << '\n';
  }
}

std::vector<MatchRow> read_match_csv(std::istream& in) {
  std::vector<MatchRow> rows;
  read_rows(in, kMatchHeader, 7, [&](const auto& f, std::size_t n) {
    MatchRow row;
    row.result.frequency_hz = field_number(f[0], n);
    row.result.flash_duration_us = field_number(f[1], n);
    row.result.steady_luminance = field_number(f[2], n);
    row.result.tp_predicted_intensity = field_number(f[3], n);
    row.result.matched_intensity = field_number(f[4], n);
    row.result.relative_error = field_number(f[5], n);
    row.fused = parse_bool("fused", f[6]);
    rows.push_back(row);
  });
  return rows;
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points) {
  out << kCurveHeader << '\n';
  for (const CurvePoint& p : points)
    out << format_number(p.intensity) << ',' << format_number(p.p_identified) << ','
        << format_number(p.p_bright) << ',' << format_number(p.p_dark) << ','
        << format_number(p.mean_scaled_contrast) << '\n';
}

std::vector<CurvePoint> read_curve_csv(std::istream& in) {
  std::vector<CurvePoint> points;
  read_rows(in, kCurveHeader, 5, [&](const auto& f, std::size_t n) {
    points.push_back({field_number(f[0], n), field_number(f[1], n),
                      field_number(f[2], n), field_number(f[3], n),
                      field_number(f[4], n)});
  });
  return points;
}

}  // namespace retina_duo
