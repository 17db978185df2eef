#include <random>
#include <string>

#include "doctest.h"
#include "scnlp/fontkit.hpp"

using namespace scnlp;

namespace {

std::string one_glyph_bdf(const std::string& bbx, const std::vector<std::string>& rows, long encoding = 65) {
  std::string s = "STARTFONT 2.1\nFONT test\nSIZE 8 75 75\nFONTBOUNDINGBOX 8 8 0 0\nCHARS 1\n";
  s += "STARTCHAR g\nENCODING " + std::to_string(encoding) + "\nBBX " + bbx + "\nBITMAP\n";
  for (const auto& r : rows) s += r + "\n";
  s += "ENDCHAR\nENDFONT\n";
  return s;
}

// Independent hex-row decoder: parse the whole row as one integer and read
// bits from the top.
std::vector<int> reference_row_bits(const std::string& hex, int width) {
  const unsigned long v = std::stoul(hex, nullptr, 16);
  const int total = static_cast<int>(hex.size()) * 4;
  std::vector<int> bits;
  for (int i = 0; i < width; ++i) bits.push_back(static_cast<int>((v >> (total - 1 - i)) & 1ul));
  return bits;
}

BitmapGlyph random_glyph(std::mt19937& rng, Index h, Index w) {
  BitmapGlyph g;
  g.rows = Bitmap::Zero(h, w);
  std::bernoulli_distribution ink(0.4);
  for (Index r = 0; r < h; ++r)
    for (Index c = 0; c < w; ++c) g.rows(r, c) = ink(rng) ? 1 : 0;
  return g;
}

}  // namespace

TEST_CASE("parse_bdf reads a single 8x8 glyph") {
  const auto font = parse_bdf(one_glyph_bdf("8 8 0 0", {"18", "24", "42", "7E", "42", "42", "42", "00"}));
  REQUIRE(font.glyphs.size() == 1);
  const auto& g = font.glyphs.at(U'A');
  CHECK(g.width() == 8);
  CHECK(g.height() == 8);
  CHECK(g.rows(0, 3) == 1);
  CHECK(g.rows(0, 2) == 0);
  CHECK(g.rows.row(7).sum() == 0);
}

TEST_CASE("hex rows decode MSB-first") {
  SUBCASE("FF at width 8 is all ink") {
    const auto font = parse_bdf(one_glyph_bdf("8 1 0 0", {"FF"}));
    const auto& g = font.glyphs.at(U'A');
    for (Index c = 0; c < 8; ++c) CHECK(g.rows(7, c) == 1);
  }
  SUBCASE("80 at width 3 keeps only the leading bit") {
    std::string s = "STARTFONT 2.1\nFONTBOUNDINGBOX 3 1 0 0\nSTARTCHAR x\nENCODING 1\nBBX 3 1 0 0\nBITMAP\n80\nENDCHAR\nENDFONT\n";
    const auto font = parse_bdf(s);
    const auto& g = font.glyphs.at(1);
    REQUIRE(g.width() == 3);
    const auto expected = reference_row_bits("80", 3);
    CHECK(expected == std::vector<int>{1, 0, 0});
    for (Index c = 0; c < 3; ++c) CHECK(g.rows(0, c) == expected[static_cast<std::size_t>(c)]);
  }
  SUBCASE("random rows agree with an independent decoder") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> width_dist(1, 16), byte_dist(0, 255);
    for (int trial = 0; trial < 200; ++trial) {
      const int w = width_dist(rng);
      const int nbytes = (w + 7) / 8;
      char buf[8];
      std::string hex;
      for (int b = 0; b < nbytes; ++b) {
        std::snprintf(buf, sizeof buf, "%02X", byte_dist(rng));
        hex += buf;
      }
      std::string s = "STARTFONT 2.1\nFONTBOUNDINGBOX " + std::to_string(w) +
                      " 1 0 0\nSTARTCHAR x\nENCODING 5\nBBX " + std::to_string(w) + " 1 0 0\nBITMAP\n" + hex +
                      "\nENDCHAR\nENDFONT\n";
      const auto font = parse_bdf(s);
      const auto& g = font.glyphs.at(5);
      const auto ref = reference_row_bits(hex, w);
      for (int c = 0; c < w; ++c) REQUIRE(g.rows(0, c) == ref[static_cast<std::size_t>(c)]);
    }
  }
}

TEST_CASE("malformed BDF reports the offending line") {
  auto expect_failure = [](const std::string& text, const std::string& needle) {
    try {
      parse_bdf(text);
      FAIL("expected MalformedFont");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::malformed_font);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_failure("FONT x\nENDFONT\n", "line 1");
  expect_failure("STARTFONT 2.1\nFONTBOUNDINGBOX 8 8 0 0\n", "missing ENDFONT");
  expect_failure(one_glyph_bdf("8 3 0 0", {"FF", "FF"}), "line 12");  // two rows for height 3
  expect_failure(one_glyph_bdf("8 1 0 0", {"FF", "FF"}), "exceeds");
  expect_failure(one_glyph_bdf("8 1 0 0", {"GG"}), "non-hex");
  expect_failure(one_glyph_bdf("8 1 0 0", {"F"}), "shorter");
}

TEST_CASE("glyphs are normalized to the font cell without cropping") {
  // 2x2 glyph sitting at x=3, y=2 inside an 8x8 box whose origin is (0,0).
  auto font = parse_bdf(one_glyph_bdf("2 2 3 2", {"C0", "40"}));
  const auto& g = font.glyphs.at(U'A');
  REQUIRE(g.height() == 8);
  REQUIRE(g.width() == 8);
  // Top row of the glyph is y=3, i.e. cell row 8 - 1 - 3 = 4.
  CHECK(g.rows(4, 3) == 1);
  CHECK(g.rows(4, 4) == 1);
  CHECK(g.rows(5, 3) == 0);
  CHECK(g.rows(5, 4) == 1);
  CHECK(g.rows.cast<int>().sum() == 3);

  // A glyph poking outside FONTBOUNDINGBOX grows the cell instead of losing ink.
  auto wide = parse_bdf(one_glyph_bdf("10 2 -1 0", {"FFC0", "FFC0"}));
  CHECK(wide.cell_width == 10);
  CHECK(wide.glyphs.at(U'A').rows.cast<int>().sum() == 20);
}

TEST_CASE("glyph_for is total") {
  const auto& font = embedded_font();
  CHECK(font.glyphs.size() == 95);
  CHECK(&glyph_for(font, U'A') == &font.glyphs.at(U'A'));
  const auto& pua = glyph_for(font, 0xE000);
  CHECK(pua == font.fallback);
  CHECK(pua.rows == hollow_box(8, 8).rows);
  CHECK(glyph_for(font, U' ').blank());
  CHECK(glyph_for(font, 0x3000).blank());

  // A font without a space glyph still renders whitespace blank.
  const auto only_a = parse_bdf(one_glyph_bdf("8 1 0 0", {"FF"}));
  CHECK(glyph_for(only_a, U' ').blank());
  CHECK(glyph_for(only_a, U'Z').rows == hollow_box(8, 8).rows);
}

TEST_CASE("embedded font glyph sanity") {
  const auto& font = embedded_font();
  CHECK(font.cell_width == 8);
  CHECK(font.cell_height == 8);
  for (char32_t cp = 0x21; cp < 0x7F; ++cp) CHECK_FALSE(glyph_for(font, cp).blank());
  // 'A' row 0 is 0x0C with the leftmost pixel in the low bit: ..XX....
  const auto& a = font.glyphs.at(U'A');
  CHECK(a.rows(0, 2) == 1);
  CHECK(a.rows(0, 3) == 1);
  CHECK(a.rows(0, 1) == 0);
  CHECK(a.rows(0, 4) == 0);
}

TEST_CASE("scale_glyph") {
  const auto& a = embedded_font().glyphs.at(U'A');
  SUBCASE("identity side is bit-identical") { CHECK(scale_glyph(a, 8).rows == a.rows); }
  SUBCASE("all-ink stays all-ink") {
    BitmapGlyph ink;
    ink.rows = Bitmap::Ones(8, 8);
    CHECK(scale_glyph(ink, 4).rows == Bitmap::Ones(4, 4));
  }
  SUBCASE("checkerboard doubled equals pixel replication") {
    BitmapGlyph board;
    board.rows = Bitmap::Zero(8, 8);
    for (Index r = 0; r < 8; ++r)
      for (Index c = 0; c < 8; ++c) board.rows(r, c) = (r + c) % 2;
    Bitmap replicated(16, 16);
    for (Index r = 0; r < 8; ++r)
      for (Index c = 0; c < 8; ++c) replicated.block(2 * r, 2 * c, 2, 2).setConstant(board.rows(r, c));
    CHECK(scale_glyph(board, 16).rows == replicated);
  }
  SUBCASE("nearest-neighbour law and extremes for random sides") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<Index> dim(1, 24), side_dist(1, 64);
    for (int trial = 0; trial < 200; ++trial) {
      const Index h = dim(rng), w = dim(rng), side = side_dist(rng);
      const auto g = random_glyph(rng, h, w);
      const auto s = scale_glyph(g, side);
      REQUIRE(s.height() == side);
      REQUIRE(s.width() == side);
      for (Index r = 0; r < side; ++r)
        for (Index c = 0; c < side; ++c) REQUIRE(s.rows(r, c) == g.rows(r * h / side, c * w / side));
      BitmapGlyph blank, ink;
      blank.rows = Bitmap::Zero(h, w);
      ink.rows = Bitmap::Ones(h, w);
      CHECK(scale_glyph(blank, side).blank());
      CHECK(scale_glyph(ink, side).rows.minCoeff() == 1);
    }
  }
}

TEST_CASE("BDF round trip preserves every glyph") {
  SUBCASE("embedded font") {
    const auto& font = embedded_font();
    const auto again = parse_bdf(write_bdf(font));
    CHECK(again.glyphs == font.glyphs);
    CHECK(again.cell_width == font.cell_width);
    CHECK(again.origin_y == font.origin_y);
  }
  SUBCASE("random fonts") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<Index> dim(1, 20);
    std::uniform_int_distribution<int> count(1, 12);
    for (int trial = 0; trial < 50; ++trial) {
      BitmapFont f;
      f.name = "random";
      f.cell_width = dim(rng);
      f.cell_height = dim(rng);
      f.nominal_size = f.cell_height;
      f.origin_x = 0;
      f.origin_y = -2;
      const int n = count(rng);
      for (int i = 0; i < n; ++i) {
        auto g = random_glyph(rng, f.cell_height, f.cell_width);
        g.codepoint = 0x4E00 + static_cast<char32_t>(i * 7);
        f.glyphs[g.codepoint] = g;
      }
      const auto back = parse_bdf(write_bdf(f));
      REQUIRE(back.glyphs == f.glyphs);
    }
  }
}
