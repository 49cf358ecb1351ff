#pragma once

#include <stdexcept>
#include <string>

namespace retina_duo {

enum class ErrorCode {
  InvalidArgument = 1,
  DutyOverflow,
  NonPositive,
  GlyphTooLarge,
  UnknownGlyph,
  OutOfRangeTime,
  ZeroDuty,
  NonPositiveLuminance,
  NonMonotonicTime,
  EmptySurround,
  BothPositive,
  NotFused,
  NoConvergence,
  SweepDoesNotBracket,
  Parse,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure the library reports carries one of the codes above so the
// C layer can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace retina_duo
