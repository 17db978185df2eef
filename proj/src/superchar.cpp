#include "scnlp/superchar.hpp"

#include <algorithm>
#include <tuple>

namespace scnlp {
namespace {

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' || cp == U'\f' ||
         cp == 0x00A0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011) || (cp >= 0xFF01 && cp <= 0xFF0F) ||
         (cp >= 0xFF1A && cp <= 0xFF20) || cp == 0x00AB || cp == 0x00BB || cp == 0x00BF || cp == 0x00A1;
}

Token make_token(std::u32string letters) {
  Token t;
  t.text = encode_utf8(letters);
  t.letters = std::move(letters);
  return t;
}

}  // namespace

EmbedMode parse_embed_mode(std::string_view s) {
  if (s == "sew") return EmbedMode::sew;
  if (s == "cjk") return EmbedMode::cjk;
  throw Error(ErrorCode::invalid_spec, "unknown mode '" + std::string(s) + "' (expected sew or cjk)");
}

const char* to_string(EmbedMode mode) { return mode == EmbedMode::sew ? "sew" : "cjk"; }

void CanvasSpec::validate() const {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::invalid_spec, m); };
  if (side <= 0 || grid_rows <= 0 || grid_cols <= 0 || margin < 0 || channels <= 0) {
    bad("canvas dimensions must be positive");
  }
  if (cell_side < 4) bad("cell side " + std::to_string(cell_side) + " is below the minimum of 4");
  if (grid_rows * cell_side + 2 * margin > side || grid_cols * cell_side + 2 * margin > side) {
    bad("grid " + std::to_string(grid_rows) + "x" + std::to_string(grid_cols) + " of " +
        std::to_string(cell_side) + "px cells does not fit a " + std::to_string(side) + "px canvas");
  }
}

CanvasSpec CanvasSpec::square(Index side, Index grid) {
  CanvasSpec s;
  s.side = side;
  s.grid_rows = s.grid_cols = grid;
  s.cell_side = grid > 0 ? side / grid : 0;
  s.margin = grid > 0 ? (side - grid * s.cell_side) / 2 : 0;
  return s;
}

std::u32string decode_utf8(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    int len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    }
    bool ok = len > 0 && i + static_cast<std::size_t>(len) <= s.size();
    for (int k = 1; ok && k < len; ++k) {
      const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
      if ((b & 0xC0) != 0x80) ok = false;
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(len);
  }
  return out;
}

std::string encode_utf8(std::u32string_view s) {
  std::string out;
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    }
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text, EmbedMode mode) {
  const std::u32string cps = decode_utf8(text);
  std::vector<Token> tokens;
  if (mode == EmbedMode::cjk) {
    for (char32_t cp : cps) {
      if (!is_space(cp)) tokens.push_back(make_token(std::u32string(1, cp)));
    }
    return tokens;
  }
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    if (j == i) break;
    std::size_t b = i, e = j;
    while (b < e && is_punct(cps[b])) tokens.push_back(make_token(std::u32string(1, cps[b++])));
    std::size_t tail = e;
    while (tail > b && is_punct(cps[tail - 1])) --tail;
    if (tail > b) tokens.push_back(make_token(cps.substr(b, tail - b)));
    for (std::size_t k = tail; k < e; ++k) tokens.push_back(make_token(std::u32string(1, cps[k])));
    i = j;
  }
  return tokens;
}

Index ceil_sqrt(Index n) {
  Index k = 0;
  while (k * k < n) ++k;
  return k;
}

Rect PlacedToken::cell(const CanvasSpec& spec) const {
  return Rect{spec.margin + cell_row * spec.cell_side, spec.margin + cell_col * spec.cell_side,
              spec.cell_side};
}

LayoutPlan layout(const std::vector<Token>& tokens, const CanvasSpec& spec, EmbedMode /*mode*/) {
  spec.validate();
  LayoutPlan plan;
  const auto capacity = static_cast<std::size_t>(spec.grid_rows * spec.grid_cols);
  plan.truncated = tokens.size() > capacity;
  const std::size_t n_tokens = std::min(tokens.size(), capacity);
  plan.tokens.reserve(n_tokens);
  for (std::size_t t = 0; t < n_tokens; ++t) {
    const Token& tok = tokens[t];
    PlacedToken p;
    p.text = tok.text;
    p.cell_row = static_cast<Index>(t) / spec.grid_cols;
    p.cell_col = static_cast<Index>(t) % spec.grid_cols;
    const auto n = static_cast<Index>(tok.letters.size());
    p.subgrid = std::max<Index>(1, ceil_sqrt(n));
    p.letter_side = spec.cell_side / p.subgrid;
    const Rect cell = p.cell(spec);
    p.letters.reserve(tok.letters.size());
    for (Index i = 0; i < n; ++i) {
      const Index r = i / p.subgrid, c = i % p.subgrid;
      p.letters.push_back(LetterCell{
          tok.letters[static_cast<std::size_t>(i)],
          Rect{cell.row + r * p.letter_side, cell.col + c * p.letter_side, p.letter_side}});
    }
    plan.tokens.push_back(std::move(p));
  }
  return plan;
}

std::vector<std::string> recover_tokens(const LayoutPlan& plan) {
  struct Entry {
    Index row, col;
    std::vector<LetterCell> letters;
  };
  std::vector<Entry> entries;
  entries.reserve(plan.tokens.size());
  for (const auto& t : plan.tokens) entries.push_back({t.cell_row, t.cell_col, t.letters});
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  std::vector<std::string> out;
  out.reserve(entries.size());
  for (auto& e : entries) {
    // Letter order inside a square is row-major over the sub-grid; with
    // letter_side == 0 the rectangles collapse and the stored order is kept.
    std::stable_sort(e.letters.begin(), e.letters.end(), [](const LetterCell& a, const LetterCell& b) {
      return std::tie(a.rect.row, a.rect.col) < std::tie(b.rect.row, b.rect.col);
    });
    std::u32string s;
    for (const auto& l : e.letters) s.push_back(l.codepoint);
    out.push_back(encode_utf8(s));
  }
  return out;
}

FloatTensor SuperImage::to_tensor() const {
  FloatTensor t(Shape{channels, side, side});
  for (Index c = 0; c < channels; ++c) t.plane(c) = pixels.cast<float>();
  return t;
}

SuperImage render(const LayoutPlan& plan, const CanvasSpec& spec, const BitmapFont& font) {
  spec.validate();
  const std::uint8_t ink = spec.ink_white ? 255 : 0;
  SuperImage img;
  img.side = spec.side;
  img.channels = spec.channels;
  img.pixels = RowMatrix<std::uint8_t>::Constant(spec.side, spec.side, spec.ink_white ? 0 : 255);
  for (const auto& tok : plan.tokens) {
    if (tok.letter_side <= 0) continue;
    for (const auto& letter : tok.letters) {
      const BitmapGlyph g = scale_glyph(glyph_for(font, letter.codepoint), letter.rect.side);
      auto block = img.pixels.block(letter.rect.row, letter.rect.col, letter.rect.side, letter.rect.side);
      block = (g.rows.array() != 0).select(RowMatrix<std::uint8_t>::Constant(g.rows.rows(), g.rows.cols(), ink),
                                           block);
    }
  }
  return img;
}

SuperImage render_text(std::string_view text, const CanvasSpec& spec, const BitmapFont& font,
                       EmbedMode mode) {
  return render(layout(tokenize(text, mode), spec, mode), spec, font);
}

}  // namespace scnlp
