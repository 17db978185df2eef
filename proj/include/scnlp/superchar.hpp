#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scnlp/fontkit.hpp"
#include "scnlp/tensor.hpp"

namespace scnlp {

/// sew: one square per whitespace-delimited word. cjk: one square per character.
enum class EmbedMode { sew, cjk };

EmbedMode parse_embed_mode(std::string_view s);
const char* to_string(EmbedMode mode);

struct CanvasSpec {
  Index side = 224;
  Index grid_rows = 8;
  Index grid_cols = 8;
  Index cell_side = 28;  // side of one word square
  Index margin = 0;
  Index channels = 3;
  bool ink_white = true;  // text = 255 on a 0 background; false inverts

  /// Throws Error(invalid_spec) when the grid does not fit the canvas.
  void validate() const;

  /// Square grid of `grid` x `grid` cells sized to fill `side`.
  static CanvasSpec square(Index side, Index grid);
};

struct Token {
  std::string text;
  std::u32string letters;
};

std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

std::vector<Token> tokenize(std::string_view text, EmbedMode mode);

struct Rect {
  Index row = 0, col = 0, side = 0;

  bool empty() const { return side <= 0; }
  bool intersects(const Rect& o) const {
    if (empty() || o.empty()) return false;
    return row < o.row + o.side && o.row < row + side && col < o.col + o.side && o.col < col + side;
  }
  bool contains(const Rect& o) const {
    return o.row >= row && o.col >= col && o.row + o.side <= row + side && o.col + o.side <= col + side;
  }
};

struct LetterCell {
  char32_t codepoint = 0;
  Rect rect;
};

struct PlacedToken {
  std::string text;
  Index cell_row = 0, cell_col = 0;
  Index subgrid = 1;      // k = ceil(sqrt(N))
  Index letter_side = 0;  // floor(l / k)
  std::vector<LetterCell> letters;

  Rect cell(const CanvasSpec& spec) const;
};

struct LayoutPlan {
  std::vector<PlacedToken> tokens;
  bool truncated = false;
};

/// Smallest k with k*k >= n.
Index ceil_sqrt(Index n);

/// Row-major placement of tokens in the word grid; each word of N letters is
/// split into a k x k sub-grid (k = ceil(sqrt(N))) filled row-major.
LayoutPlan layout(const std::vector<Token>& tokens, const CanvasSpec& spec, EmbedMode mode);

/// Reads the token sequence back out of the plan's letter geometry.
std::vector<std::string> recover_tokens(const LayoutPlan& plan);

/// Rendered canvas. Channels are identical copies of `pixels`.
struct SuperImage {
  Index side = 0;
  Index channels = 3;
  RowMatrix<std::uint8_t> pixels;

  /// (channels, side, side) tensor of pixel values.
  FloatTensor to_tensor() const;
  bool operator==(const SuperImage&) const = default;
};

SuperImage render(const LayoutPlan& plan, const CanvasSpec& spec, const BitmapFont& font);

/// tokenize + layout + render.
SuperImage render_text(std::string_view text, const CanvasSpec& spec, const BitmapFont& font,
                       EmbedMode mode);

enum class ImageFormat { pgm, png };

/// "pgm" / "png"; anything else throws Error(unsupported_format).
ImageFormat parse_image_format(std::string_view s);

std::string export_image(const SuperImage& img, ImageFormat format);

/// Reads a P5 PGM or 8-bit grayscale PNG produced by export_image.
SuperImage import_image(std::string_view bytes, Index channels = 3);

}  // namespace scnlp
