#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "scnlp/tensor.hpp"

namespace scnlp {

/// 0/1 ink matrix, one row per scanline.
using Bitmap = RowMatrix<std::uint8_t>;

struct BitmapGlyph {
  char32_t codepoint = 0;
  Bitmap rows;

  Index width() const { return rows.cols(); }
  Index height() const { return rows.rows(); }
  bool blank() const { return rows.size() == 0 || rows.maxCoeff() == 0; }
  bool operator==(const BitmapGlyph&) const = default;
};

/// Fixed-cell bitmap font. Every glyph shares the font cell after
/// normalization; lookups of unmapped code points return `fallback`.
struct BitmapFont {
  std::string name;
  Index nominal_size = 0;
  Index cell_width = 0;
  Index cell_height = 0;
  // Offset of the cell's lower-left corner from the glyph origin (BDF convention).
  Index origin_x = 0;
  Index origin_y = 0;
  std::map<char32_t, BitmapGlyph> glyphs;
  BitmapGlyph fallback;
  BitmapGlyph blank;
};

/// Parses a BDF 2.1 stream. Throws Error(malformed_font) with a line number.
BitmapFont parse_bdf(std::string_view text);

/// Writes `font` back to BDF; parse_bdf(write_bdf(f)) reproduces every glyph.
std::string write_bdf(const BitmapFont& font);

/// The compiled-in 8x8 ASCII font.
const BitmapFont& embedded_font();
std::string_view embedded_font_bdf();

/// Hollow box of the given size.
BitmapGlyph hollow_box(Index width, Index height);

/// Total: whitespace maps to `blank`, unmapped code points to `fallback`.
const BitmapGlyph& glyph_for(const BitmapFont& font, char32_t cp);

/// Nearest-neighbour resample to side x side: out(r, c) = in(r*h/side, c*w/side).
BitmapGlyph scale_glyph(const BitmapGlyph& glyph, Index side);

}  // namespace scnlp
