#include "scnlp/fontkit.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

namespace scnlp {
namespace {

struct RawGlyph {
  long encoding = -1;
  Index width = 0, height = 0, xoff = 0, yoff = 0;
  std::vector<std::vector<std::uint8_t>> rows;
  std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::malformed_font, "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long to_long(std::string_view s, std::size_t line) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) fail(line, "expected integer, got '" + std::string(s) + "'");
  return v;
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::vector<std::uint8_t> decode_row(std::string_view hex, Index width, std::size_t line) {
  if (hex.empty()) fail(line, "empty BITMAP row");
  std::vector<std::uint8_t> bits;
  bits.reserve(hex.size() * 4);
  for (char c : hex) {
    const int v = hex_value(c);
    if (v < 0) fail(line, "non-hex BITMAP row '" + std::string(hex) + "'");
    for (int b = 3; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  }
  if (static_cast<Index>(bits.size()) < width) fail(line, "BITMAP row shorter than BBX width");
  bits.resize(static_cast<std::size_t>(width));
  return bits;
}

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' || cp == U'\f' ||
         cp == 0x00A0 || cp == 0x3000 || (cp >= 0x2000 && cp <= 0x200A);
}

}  // namespace

BitmapGlyph hollow_box(Index width, Index height) {
  BitmapGlyph g;
  g.rows = Bitmap::Zero(height, width);
  g.rows.row(0).setOnes();
  g.rows.row(height - 1).setOnes();
  g.rows.col(0).setOnes();
  g.rows.col(width - 1).setOnes();
  return g;
}

BitmapFont parse_bdf(std::string_view text) {
  std::optional<std::array<long, 4>> font_bbox;
  BitmapFont font;
  long point_size = 0;
  bool started = false, ended = false;
  std::vector<RawGlyph> raws;
  std::optional<RawGlyph> cur;
  bool in_bitmap = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && !ended) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    auto words = split_words(line);
    if (words.empty()) {
      if (pos > text.size()) break;
      continue;
    }
    const std::string_view key = words[0];

    if (!started) {
      if (key != "STARTFONT") fail(line_no, "expected STARTFONT");
      started = true;
      continue;
    }
    if (in_bitmap) {
      if (key == "ENDCHAR") {
        if (static_cast<Index>(cur->rows.size()) != cur->height) {
          fail(line_no, "BITMAP has " + std::to_string(cur->rows.size()) + " rows, BBX height is " +
                            std::to_string(cur->height));
        }
        in_bitmap = false;
        raws.push_back(std::move(*cur));
        cur.reset();
        continue;
      }
      if (static_cast<Index>(cur->rows.size()) >= cur->height) {
        fail(line_no, "BITMAP row count exceeds BBX height " + std::to_string(cur->height));
      }
      cur->rows.push_back(decode_row(key, cur->width, line_no));
      continue;
    }

    if (key == "ENDFONT") {
      if (cur) fail(line_no, "ENDFONT inside STARTCHAR");
      ended = true;
    } else if (key == "FONT" && words.size() >= 2) {
      font.name = std::string(line.substr(line.find(words[1])));
    } else if (key == "SIZE" && words.size() >= 2) {
      point_size = to_long(words[1], line_no);
    } else if (key == "FONTBOUNDINGBOX") {
      if (words.size() < 5) fail(line_no, "FONTBOUNDINGBOX needs 4 values");
      font_bbox = std::array<long, 4>{to_long(words[1], line_no), to_long(words[2], line_no),
                                      to_long(words[3], line_no), to_long(words[4], line_no)};
      if ((*font_bbox)[0] <= 0 || (*font_bbox)[1] <= 0) fail(line_no, "FONTBOUNDINGBOX must be positive");
    } else if (key == "STARTCHAR") {
      if (cur) fail(line_no, "nested STARTCHAR");
      cur = RawGlyph{};
      cur->line = line_no;
    } else if (key == "ENCODING") {
      if (!cur) fail(line_no, "ENCODING outside STARTCHAR");
      if (words.size() < 2) fail(line_no, "ENCODING needs a value");
      cur->encoding = to_long(words[1], line_no);
    } else if (key == "BBX") {
      if (!cur) fail(line_no, "BBX outside STARTCHAR");
      if (words.size() < 5) fail(line_no, "BBX needs 4 values");
      cur->width = to_long(words[1], line_no);
      cur->height = to_long(words[2], line_no);
      cur->xoff = to_long(words[3], line_no);
      cur->yoff = to_long(words[4], line_no);
      if (cur->width < 0 || cur->height < 0) fail(line_no, "negative BBX size");
    } else if (key == "BITMAP") {
      if (!cur) fail(line_no, "BITMAP outside STARTCHAR");
      in_bitmap = true;
    } else if (key == "ENDCHAR") {
      if (!cur) fail(line_no, "ENDCHAR outside STARTCHAR");
      if (cur->height != 0) fail(line_no, "ENDCHAR without BITMAP");
      raws.push_back(std::move(*cur));
      cur.reset();
    }
    // Properties and metrics we do not need (SWIDTH, DWIDTH, COMMENT, ...) are skipped.
  }
  if (!started) fail(line_no, "missing STARTFONT");
  if (!ended) fail(line_no, "missing ENDFONT");

  // Normalization box: union of the font box and every glyph box, so no ink is cropped.
  long x0, y0, x1, y1;
  if (font_bbox) {
    x0 = (*font_bbox)[2];
    y0 = (*font_bbox)[3];
    x1 = x0 + (*font_bbox)[0];
    y1 = y0 + (*font_bbox)[1];
  } else if (!raws.empty()) {
    x0 = y0 = std::numeric_limits<long>::max();
    x1 = y1 = std::numeric_limits<long>::min();
  } else {
    fail(line_no, "font has neither FONTBOUNDINGBOX nor glyphs");
  }
  for (const auto& r : raws) {
    if (r.width == 0 || r.height == 0) continue;
    x0 = std::min<long>(x0, r.xoff);
    y0 = std::min<long>(y0, r.yoff);
    x1 = std::max<long>(x1, r.xoff + r.width);
    y1 = std::max<long>(y1, r.yoff + r.height);
  }
  if (x1 <= x0 || y1 <= y0) fail(line_no, "font has an empty bounding box");

  font.cell_width = x1 - x0;
  font.cell_height = y1 - y0;
  font.origin_x = x0;
  font.origin_y = y0;
  font.nominal_size = point_size > 0 ? point_size : font.cell_height;

  for (const auto& r : raws) {
    if (r.encoding < 0) continue;
    BitmapGlyph g;
    g.codepoint = static_cast<char32_t>(r.encoding);
    g.rows = Bitmap::Zero(font.cell_height, font.cell_width);
    const Index col0 = r.xoff - x0;
    const Index row0 = y1 - (r.yoff + r.height);
    for (Index y = 0; y < r.height; ++y) {
      for (Index x = 0; x < r.width; ++x) {
        g.rows(row0 + y, col0 + x) = r.rows[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
      }
    }
    font.glyphs[g.codepoint] = std::move(g);
  }
  font.fallback = hollow_box(font.cell_width, font.cell_height);
  font.blank.rows = Bitmap::Zero(font.cell_height, font.cell_width);
  return font;
}

std::string write_bdf(const BitmapFont& font) {
  std::ostringstream out;
  const Index w = font.cell_width, h = font.cell_height;
  out << "STARTFONT 2.1\n";
  out << "FONT " << (font.name.empty() ? std::string("unnamed") : font.name) << "\n";
  out << "SIZE " << font.nominal_size << " 75 75\n";
  out << "FONTBOUNDINGBOX " << w << ' ' << h << ' ' << font.origin_x << ' ' << font.origin_y << "\n";
  out << "CHARS " << font.glyphs.size() << "\n";
  const Index bytes_per_row = (w + 7) / 8;
  for (const auto& [cp, g] : font.glyphs) {
    char name[16];
    std::snprintf(name, sizeof name, "U+%04X", static_cast<unsigned>(cp));
    out << "STARTCHAR " << name << "\n";
    out << "ENCODING " << static_cast<unsigned long>(cp) << "\n";
    out << "DWIDTH " << w << " 0\n";
    out << "BBX " << w << ' ' << h << ' ' << font.origin_x << ' ' << font.origin_y << "\n";
    out << "BITMAP\n";
    for (Index y = 0; y < h; ++y) {
      for (Index byte = 0; byte < bytes_per_row; ++byte) {
        unsigned v = 0;
        for (Index b = 0; b < 8; ++b) {
          const Index x = byte * 8 + b;
          if (x < w && g.rows(y, x)) v |= 0x80u >> b;
        }
        char hex[3];
        std::snprintf(hex, sizeof hex, "%02X", v);
        out << hex;
      }
      out << "\n";
    }
    out << "ENDCHAR\n";
  }
  out << "ENDFONT\n";
  return out.str();
}

const BitmapFont& embedded_font() {
  static const BitmapFont font = [] {
    BitmapFont f = parse_bdf(embedded_font_bdf());
    f.name = "embedded-8x8";
    return f;
  }();
  return font;
}

const BitmapGlyph& glyph_for(const BitmapFont& font, char32_t cp) {
  if (auto it = font.glyphs.find(cp); it != font.glyphs.end()) return it->second;
  if (is_space_cp(cp)) return font.blank;
  return font.fallback;
}

BitmapGlyph scale_glyph(const BitmapGlyph& glyph, Index side) {
  BitmapGlyph out;
  out.codepoint = glyph.codepoint;
  out.rows = Bitmap::Zero(side, side);
  const Index h = glyph.height(), w = glyph.width();
  if (h == 0 || w == 0) return out;
  for (Index r = 0; r < side; ++r) {
    const Index sr = r * h / side;
    for (Index c = 0; c < side; ++c) out.rows(r, c) = glyph.rows(sr, c * w / side);
  }
  return out;
}

}  // namespace scnlp
