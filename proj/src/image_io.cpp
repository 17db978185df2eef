#include <zlib.h>

#include <array>
#include <cstring>

#include "scnlp/superchar.hpp"

namespace scnlp {
namespace {

constexpr std::array<unsigned char, 8> kPngSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

void put_u32_be(std::string& out, std::uint32_t v) {
  out += static_cast<char>((v >> 24) & 0xFF);
  out += static_cast<char>((v >> 16) & 0xFF);
  out += static_cast<char>((v >> 8) & 0xFF);
  out += static_cast<char>(v & 0xFF);
}

std::uint32_t get_u32_be(std::string_view s, std::size_t at) {
  return (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at])) << 24) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 1])) << 16) |
         (static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 2])) << 8) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[at + 3]));
}

void put_chunk(std::string& out, const char* type, const std::string& data) {
  put_u32_be(out, static_cast<std::uint32_t>(data.size()));
  std::string body(type, 4);
  body += data;
  out += body;
  put_u32_be(out, static_cast<std::uint32_t>(
                      crc32(0L, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size()))));
}

[[noreturn]] void bad_image(const std::string& what) { throw Error(ErrorCode::malformed_image, what); }

std::string encode_png(const SuperImage& img) {
  const auto w = static_cast<std::size_t>(img.pixels.cols());
  const auto h = static_cast<std::size_t>(img.pixels.rows());
  std::string raw;
  raw.reserve((w + 1) * h);
  for (std::size_t y = 0; y < h; ++y) {
    raw += '\0';
    raw.append(reinterpret_cast<const char*>(img.pixels.data() + y * w), w);
  }
  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string z(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(z.data()), &bound, reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), 9) != Z_OK) {
    throw Error(ErrorCode::io_error, "zlib compression failed");
  }
  z.resize(bound);

  std::string out(reinterpret_cast<const char*>(kPngSignature.data()), kPngSignature.size());
  std::string ihdr;
  put_u32_be(ihdr, static_cast<std::uint32_t>(w));
  put_u32_be(ihdr, static_cast<std::uint32_t>(h));
  ihdr += static_cast<char>(8);  // bit depth
  ihdr += static_cast<char>(0);  // grayscale
  ihdr += std::string(3, '\0');  // compression, filter, interlace
  put_chunk(out, "IHDR", ihdr);
  put_chunk(out, "IDAT", z);
  put_chunk(out, "IEND", "");
  return out;
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  return pb <= pc ? b : c;
}

SuperImage decode_png(std::string_view s, Index channels) {
  std::size_t at = kPngSignature.size();
  std::uint32_t w = 0, h = 0;
  std::string idat;
  bool have_header = false;
  while (at + 12 <= s.size()) {
    const std::uint32_t len = get_u32_be(s, at);
    const std::string_view type = s.substr(at + 4, 4);
    if (at + 12 + len > s.size()) bad_image("truncated PNG chunk");
    const std::string_view data = s.substr(at + 8, len);
    const std::uint32_t crc = get_u32_be(s, at + 8 + len);
    const auto actual = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(s.data() + at + 4), static_cast<uInt>(len + 4)));
    if (crc != actual) bad_image("PNG chunk CRC mismatch");
    if (type == "IHDR") {
      if (len != 13) bad_image("bad IHDR");
      w = get_u32_be(data, 0);
      h = get_u32_be(data, 4);
      if (data[8] != 8 || data[9] != 0 || data[12] != 0) {
        bad_image("only 8-bit non-interlaced grayscale PNG is supported");
      }
      have_header = true;
    } else if (type == "IDAT") {
      idat.append(data);
    } else if (type == "IEND") {
      break;
    }
    at += 12 + len;
  }
  if (!have_header) bad_image("PNG without IHDR");
  if (w != h) bad_image("canvas images are square");
  uLongf raw_len = static_cast<uLongf>((w + 1) * static_cast<std::size_t>(h));
  std::string raw(raw_len, '\0');
  if (uncompress(reinterpret_cast<Bytef*>(raw.data()), &raw_len, reinterpret_cast<const Bytef*>(idat.data()),
                 static_cast<uLong>(idat.size())) != Z_OK ||
      raw_len != raw.size()) {
    bad_image("corrupt PNG image data");
  }
  SuperImage img;
  img.side = w;
  img.channels = channels;
  img.pixels = RowMatrix<std::uint8_t>::Zero(h, w);
  for (std::uint32_t y = 0; y < h; ++y) {
    const auto filter = static_cast<unsigned char>(raw[y * (w + 1)]);
    for (std::uint32_t x = 0; x < w; ++x) {
      const int v = static_cast<unsigned char>(raw[y * (w + 1) + 1 + x]);
      const int a = x > 0 ? img.pixels(y, x - 1) : 0;
      const int b = y > 0 ? img.pixels(y - 1, x) : 0;
      const int c = (x > 0 && y > 0) ? img.pixels(y - 1, x - 1) : 0;
      int pred = 0;
      switch (filter) {
        case 0: pred = 0; break;
        case 1: pred = a; break;
        case 2: pred = b; break;
        case 3: pred = (a + b) / 2; break;
        case 4: pred = paeth(a, b, c); break;
        default: bad_image("unknown PNG filter " + std::to_string(filter));
      }
      img.pixels(y, x) = static_cast<std::uint8_t>((v + pred) & 0xFF);
    }
  }
  return img;
}

SuperImage decode_pgm(std::string_view s, Index channels) {
  std::size_t at = 2;
  auto next_int = [&]() -> long {
    for (;;) {
      while (at < s.size() && std::isspace(static_cast<unsigned char>(s[at]))) ++at;
      if (at < s.size() && s[at] == '#') {
        while (at < s.size() && s[at] != '\n') ++at;
        continue;
      }
      break;
    }
    if (at >= s.size() || !std::isdigit(static_cast<unsigned char>(s[at]))) bad_image("bad PGM header");
    long v = 0;
    while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) v = v * 10 + (s[at++] - '0');
    return v;
  };
  const long w = next_int(), h = next_int(), maxval = next_int();
  if (maxval != 255) bad_image("PGM maxval must be 255");
  if (w != h) bad_image("canvas images are square");
  ++at;  // single whitespace before raster
  if (s.size() - std::min(at, s.size()) < static_cast<std::size_t>(w * h)) bad_image("truncated PGM raster");
  SuperImage img;
  img.side = w;
  img.channels = channels;
  img.pixels = RowMatrix<std::uint8_t>::Zero(h, w);
  std::memcpy(img.pixels.data(), s.data() + at, static_cast<std::size_t>(w * h));
  return img;
}

}  // namespace

ImageFormat parse_image_format(std::string_view s) {
  if (s == "pgm") return ImageFormat::pgm;
  if (s == "png") return ImageFormat::png;
  throw Error(ErrorCode::unsupported_format, "image format '" + std::string(s) + "'");
}

std::string export_image(const SuperImage& img, ImageFormat format) {
  if (format == ImageFormat::png) return encode_png(img);
  std::string out = "P5\n" + std::to_string(img.pixels.cols()) + " " + std::to_string(img.pixels.rows()) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), static_cast<std::size_t>(img.pixels.size()));
  return out;
}

SuperImage import_image(std::string_view bytes, Index channels) {
  if (bytes.size() >= 2 && bytes.substr(0, 2) == "P5") return decode_pgm(bytes, channels);
  if (bytes.size() >= kPngSignature.size() &&
      std::memcmp(bytes.data(), kPngSignature.data(), kPngSignature.size()) == 0) {
    return decode_png(bytes, channels);
  }
  throw Error(ErrorCode::unsupported_format, "not a P5 PGM or PNG stream");
}

}  // namespace scnlp
