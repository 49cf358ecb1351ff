#include "retina_duo/error.hpp"

namespace retina_duo {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DutyOverflow: return "DutyOverflow";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::GlyphTooLarge: return "GlyphTooLarge";
    case ErrorCode::UnknownGlyph: return "UnknownGlyph";
    case ErrorCode::OutOfRangeTime: return "OutOfRangeTime";
    case ErrorCode::ZeroDuty: return "ZeroDuty";
    case ErrorCode::NonPositiveLuminance: return "NonPositiveLuminance";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::EmptySurround: return "EmptySurround";
    case ErrorCode::BothPositive: return "BothPositive";
    case ErrorCode::NotFused: return "NotFused";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SweepDoesNotBracket: return "SweepDoesNotBracket";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace retina_duo
