#include <array>
#include <cstdint>
#include <string>

#include "retina_duo/error.hpp"
#include "retina_duo/stimulus.hpp"

namespace retina_duo {

namespace {

constexpr std::size_t kFontWidth = 5;
constexpr std::size_t kFontHeight = 7;

// One byte per row, bit 4 is the leftmost column.
using GlyphRows = std::array<std::uint8_t, kFontHeight>;

constexpr std::array<GlyphRows, 26> kUppercase = {{
    {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // A
    {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E},  // B
    {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E},  // C
    {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C},  // D
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F},  // E
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10},  // F
    {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F},  // G
    {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // H
    {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E},  // I
    {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C},  // J
    {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11},  // K
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F},  // L
    {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11},  // M
    {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11},  // N
    {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // O
    {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10},  // P
    {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D},  // Q
    {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11},  // R
    {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E},  // S
    {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},  // T
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // U
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04},  // V
    {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A},  // W
    {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11},  // X
    {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04},  // Y
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F},  // Z
}};

}  // namespace

bool has_glyph(char letter) noexcept {
  return letter == ' ' || (letter >= 'A' && letter <= 'Z');
}

Glyph make_glyph(char letter, std::size_t scale) {
  if (!has_glyph(letter))
    throw Error(ErrorCode::UnknownGlyph,
                std::string("no glyph for character '") + letter + "'");
  if (scale == 0) throw Error(ErrorCode::NonPositive, "glyph scale must be > 0");

  Glyph glyph;
  glyph.letter = letter;
  glyph.bitmap = Grid<bool>(kFontWidth * scale, kFontHeight * scale, false);
  if (letter == ' ') return glyph;

  const GlyphRows& rows = kUppercase[static_cast<std::size_t>(letter - 'A')];
  for (std::size_t y = 0; y < glyph.bitmap.height; ++y) {
    const std::uint8_t row = rows[y / scale];
    for (std::size_t x = 0; x < glyph.bitmap.width; ++x) {
      const std::size_t col = x / scale;
      glyph.bitmap.at(x, y) = ((row >> (kFontWidth - 1 - col)) & 1u) != 0;
    }
  }
  return glyph;
}

std::size_t Glyph::lit_count() const {
  std::size_t n = 0;
  for (bool lit : bitmap.values) n += lit ? 1 : 0;
  return n;
}

}  // namespace retina_duo
