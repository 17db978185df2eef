#include "scnlp/model_file.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace scnlp {
namespace {

constexpr char kMagic[4] = {'G', 'N', 'F', 'C'};

class Writer {
 public:
  void u8(std::uint8_t v) { out_ += static_cast<char>(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_ += static_cast<char>((v >> (8 * i)) & 0xFF);
  }
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
  void bytes(std::string_view s) { out_.append(s); }
  void blob(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    bytes(s);
  }
  std::string& str() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view s) : s_(s) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(s_[at_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s_[at_++])) << (8 * i);
    return v;
  }
  std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
  float f32() { return std::bit_cast<float>(u32()); }
  std::string_view bytes(std::size_t n) {
    need(n);
    auto v = s_.substr(at_, n);
    at_ += n;
    return v;
  }
  std::string_view blob() { return bytes(u32()); }
  bool done() const { return at_ == s_.size(); }

 private:
  void need(std::size_t n) const {
    if (s_.size() - at_ < n) throw Error(ErrorCode::truncated, "model payload ends early");
  }
  std::string_view s_;
  std::size_t at_ = 0;
};

std::uint32_t checksum(std::string_view payload) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size())));
}

[[noreturn]] void inconsistent(const std::string& m) { throw Error(ErrorCode::inconsistent_model, m); }

void check_against_arch(const NetworkGraph& g, const ArchSpec& arch) {
  const NetworkGraph expected = build_gnetfc(arch);
  if (!(expected.input_shape == g.input_shape)) inconsistent("input shape does not match arch block");
  if (expected.layers.size() != g.layers.size()) inconsistent("layer count does not match arch block");
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const LayerSpec& a = expected.layers[i].spec;
    const LayerSpec& b = g.layers[i].spec;
    if (a.kind != b.kind || a.in_channels != b.in_channels || a.out_channels != b.out_channels) {
      inconsistent("layer " + std::to_string(i) + " does not match arch block");
    }
    if (a.kind == LayerKind::conv3x3 &&
        (a.padding != b.padding || a.weight_bits != b.weight_bits || a.relu != b.relu)) {
      inconsistent("layer " + std::to_string(i) + " conv parameters do not match arch block");
    }
  }
}

}  // namespace

std::string serialize_model(const Model& model) {
  const NetworkGraph& g = model.graph;
  if (g.input_shape.rank() != 3) throw Error(ErrorCode::bad_shape, "model input must be (C, H, W)");
  Writer p;
  p.blob(model.arch ? model.arch->to_config() : std::string());
  p.u32(static_cast<std::uint32_t>(model.labels.size()));
  for (const auto& l : model.labels) p.blob(l);
  for (Index d : g.input_shape.dims) p.u32(static_cast<std::uint32_t>(d));
  p.f32(g.input_act_scale);
  p.u32(static_cast<std::uint32_t>(g.layers.size()));
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const Layer& layer = g.layers[i];
    const LayerSpec& s = layer.spec;
    switch (s.kind) {
      case LayerKind::maxpool2x2:
        p.u8(1);
        p.u32(static_cast<std::uint32_t>(s.in_channels));
        break;
      case LayerKind::conv3x3: {
        if (!layer.quantized) {
          throw Error(ErrorCode::missing_weights, "layer " + std::to_string(i) + " must be quantized before saving");
        }
        const QuantWeights& q = *layer.quantized;
        if (q.bits != s.weight_bits || q.out_channels != s.out_channels || q.in_channels != s.in_channels) {
          inconsistent("layer " + std::to_string(i) + " weights disagree with its spec");
        }
        p.u8(0);
        p.u8(static_cast<std::uint8_t>(s.padding));
        p.u8(static_cast<std::uint8_t>(s.weight_bits));
        p.u8(s.relu ? 1 : 0);
        p.u32(static_cast<std::uint32_t>(s.out_channels));
        p.u32(static_cast<std::uint32_t>(s.in_channels));
        p.f32(s.out_act_scale);
        for (float sc : q.scales) p.f32(sc);
        for (std::int32_t b : q.bias) p.i32(b);
        p.blob(std::string_view(reinterpret_cast<const char*>(q.packed.data()), q.packed.size()));
        break;
      }
      case LayerKind::fully_connected:
        throw Error(ErrorCode::unsupported_op, "fully connected layers cannot be stored");
    }
  }

  Writer out;
  out.bytes(std::string_view(kMagic, 4));
  out.u32(kModelVersion);
  out.u32(static_cast<std::uint32_t>(p.str().size()));
  out.bytes(p.str());
  out.u32(checksum(p.str()));
  return std::move(out.str());
}

Model deserialize_model(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw Error(ErrorCode::bad_magic, "not a GNFC model file");
  }
  Reader header(bytes.substr(4));
  const std::uint32_t version = header.u32();
  if (version != kModelVersion) {
    throw Error(ErrorCode::version_unsupported, "model version " + std::to_string(version));
  }
  const std::uint32_t payload_size = header.u32();
  if (bytes.size() < 12 + static_cast<std::size_t>(payload_size) + 4) {
    throw Error(ErrorCode::truncated, "model file shorter than its declared payload");
  }
  const std::string_view payload = bytes.substr(12, payload_size);
  Reader tail(bytes.substr(12 + payload_size));
  if (tail.u32() != checksum(payload)) throw Error(ErrorCode::checksum_mismatch, "model payload CRC32 mismatch");

  Model model;
  Reader r(payload);
  const std::string_view arch = r.blob();
  if (!arch.empty()) model.arch = ArchSpec::from_config(arch);
  const std::uint32_t n_labels = r.u32();
  for (std::uint32_t i = 0; i < n_labels; ++i) model.labels.emplace_back(r.blob());
  NetworkGraph& g = model.graph;
  const Index c = r.u32(), h = r.u32(), w = r.u32();
  g.input_shape = Shape{c, h, w};
  g.input_act_scale = r.f32();
  const std::uint32_t n_layers = r.u32();
  for (std::uint32_t i = 0; i < n_layers; ++i) {
    const std::uint8_t kind = r.u8();
    if (kind == 1) {
      g.layers.push_back(Layer::pool(r.u32()));
      continue;
    }
    if (kind != 0) inconsistent("unknown layer kind " + std::to_string(kind));
    const int padding = r.u8();
    const int bits = r.u8();
    const bool relu = r.u8() != 0;
    const Index cout = r.u32(), cin = r.u32();
    Layer layer = Layer::conv(cin, cout, padding, bits, relu);
    layer.spec.out_act_scale = r.f32();
    QuantWeights q;
    q.bits = bits;
    q.out_channels = cout;
    q.in_channels = cin;
    for (Index o = 0; o < cout; ++o) q.scales.push_back(r.f32());
    for (Index o = 0; o < cout; ++o) q.bias.push_back(r.i32());
    const std::string_view packed = r.blob();
    if (bits != 1 && bits != 3) inconsistent("layer " + std::to_string(i) + " has " + std::to_string(bits) + "-bit weights");
    if (packed.size() != packed_size(static_cast<std::size_t>(q.count()), bits)) {
      inconsistent("layer " + std::to_string(i) + " packed weight size mismatch");
    }
    q.packed.assign(packed.begin(), packed.end());
    layer.quantized = std::move(q);
    g.layers.push_back(std::move(layer));
  }
  if (!r.done()) inconsistent("trailing bytes after layer records");

  Shape cur = g.input_shape;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    if (cur[0] != g.layers[i].spec.in_channels) inconsistent("layer " + std::to_string(i) + " breaks the channel chain");
    auto next = layer_output_shape(g.layers[i].spec, cur);
    if (!next) inconsistent("layer " + std::to_string(i) + " cannot accept input " + cur.str());
    cur = *next;
  }
  if (model.arch) check_against_arch(g, *model.arch);
  return model;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path);
}

void save_model(const Model& model, const std::string& path) { write_file(path, serialize_model(model)); }

Model load_model(const std::string& path) { return deserialize_model(read_file(path)); }

}  // namespace scnlp
