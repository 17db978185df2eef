#include "scnlp/gnetfc.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace scnlp {
namespace {

[[noreturn]] void invalid(const std::string& m) { throw Error(ErrorCode::invalid_spec, m); }

template <typename T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s;
}

template <typename T>
std::vector<T> parse_list(std::string_view key, std::string_view s) {
  std::vector<T> out;
  std::size_t at = 0;
  while (at <= s.size()) {
    std::size_t comma = s.find(',', at);
    if (comma == std::string_view::npos) comma = s.size();
    std::string_view item = s.substr(at, comma - at);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    T v{};
    auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || p != item.data() + item.size() || item.empty()) {
      invalid("bad value '" + std::string(item) + "' for " + std::string(key));
    }
    out.push_back(v);
    at = comma + 1;
  }
  return out;
}

template <typename T>
T parse_one(std::string_view key, std::string_view s) {
  auto v = parse_list<T>(key, s);
  if (v.size() != 1) invalid(std::string(key) + " takes a single value");
  return v[0];
}

Index scaled(Index channels, Index divisor) { return channels / divisor; }

}  // namespace

Index ArchSpec::effective_side() const { return scale_divisor > 0 ? input_side / scale_divisor : 0; }

void ArchSpec::validate() const {
  if (major_channels.size() != 5 || major_sublayers.size() != 5) {
    invalid("majors 1-5 need exactly 5 channel widths and 5 sublayer counts");
  }
  if (major6_hidden.size() != 2) invalid("major 6 needs exactly 2 hidden channel widths");
  if (bits_per_major.size() != 6) invalid("bit assignment needs exactly 6 entries");
  for (int b : bits_per_major) {
    if (b != 1 && b != 3) invalid("weight bits must be 1 or 3");
  }
  if (scale_divisor != 1 && scale_divisor != 2 && scale_divisor != 4) invalid("scale_divisor must be 1, 2 or 4");
  if (input_channels < 1 || num_classes < 1) invalid("input_channels and num_classes must be positive");
  for (Index n : major_sublayers) {
    if (n < 1) invalid("every major layer needs at least one sublayer");
  }
  for (Index c : major_channels) {
    if (c < scale_divisor || c % scale_divisor) invalid("channel width " + std::to_string(c) + " not divisible by scale_divisor");
  }
  for (Index c : major6_hidden) {
    if (c < scale_divisor || c % scale_divisor) invalid("channel width " + std::to_string(c) + " not divisible by scale_divisor");
  }
  if (input_side < 1 || input_side % scale_divisor) invalid("input side not divisible by scale_divisor");
  // Five pools must land on an integer side k with k - 6 >= 1 for the three valid convs.
  const Index side = effective_side();
  if (side % 32 != 0) {
    invalid("input side " + std::to_string(side) + " does not reach an integer map after 5 pools (" +
            std::to_string(side) + "/32)");
  }
  if (side / 32 < 7) {
    invalid("input side " + std::to_string(side) + " gives a " + std::to_string(side / 32) +
            "x" + std::to_string(side / 32) + " map, too small for three unpadded 3x3 convs");
  }
}

std::string ArchSpec::to_config() const {
  std::ostringstream out;
  out << "input_side=" << input_side << "\n";
  out << "input_channels=" << input_channels << "\n";
  out << "num_classes=" << num_classes << "\n";
  out << "major_channels=" << join(major_channels) << "\n";
  out << "major_sublayers=" << join(major_sublayers) << "\n";
  out << "major6_channels=" << join(major6_channels()) << "\n";
  out << "bits_per_major=" << join(bits_per_major) << "\n";
  out << "scale_divisor=" << scale_divisor << "\n";
  return out.str();
}

ArchSpec ArchSpec::from_config(std::string_view text) {
  ArchSpec spec;
  std::map<std::string, std::string> kv;
  std::size_t at = 0;
  while (at < text.size()) {
    std::size_t nl = text.find('\n', at);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(at, nl - at);
    at = nl + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    while (!line.empty() && line.front() == ' ') line.remove_prefix(1);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) invalid("expected key=value, got '" + std::string(line) + "'");
    std::string key(line.substr(0, eq));
    while (!key.empty() && key.back() == ' ') key.pop_back();
    kv[key] = std::string(line.substr(eq + 1));
  }
  std::vector<Index> m6;
  for (const auto& [key, value] : kv) {
    if (key == "input_side") spec.input_side = parse_one<Index>(key, value);
    else if (key == "input_channels") spec.input_channels = parse_one<Index>(key, value);
    else if (key == "num_classes") spec.num_classes = parse_one<Index>(key, value);
    else if (key == "major_channels") spec.major_channels = parse_list<Index>(key, value);
    else if (key == "major_sublayers") spec.major_sublayers = parse_list<Index>(key, value);
    else if (key == "major6_channels") m6 = parse_list<Index>(key, value);
    else if (key == "bits_per_major") spec.bits_per_major = parse_list<int>(key, value);
    else if (key == "scale_divisor") spec.scale_divisor = parse_one<Index>(key, value);
    else invalid("unknown key '" + key + "'");
  }
  if (!m6.empty()) {
    if (m6.size() != 3) invalid("major6_channels needs 3 values");
    if (m6[2] != spec.num_classes) invalid("last major6 channel width must equal num_classes");
    spec.major6_hidden = {m6[0], m6[1]};
  }
  return spec;
}

NetworkGraph build_gnetfc(const ArchSpec& spec) {
  spec.validate();
  const Index d = spec.scale_divisor;
  const Index side = spec.effective_side();
  NetworkGraph g;
  g.input_shape = Shape{spec.input_channels, side, side};
  g.input_act_scale = 255.0f / static_cast<float>(kActivationMax);
  Index channels = spec.input_channels;
  for (std::size_t m = 0; m < 5; ++m) {
    const Index width = scaled(spec.major_channels[m], d);
    for (Index s = 0; s < spec.major_sublayers[m]; ++s) {
      g.layers.push_back(Layer::conv(channels, width, 1, spec.bits_per_major[m]));
      channels = width;
    }
    g.layers.push_back(Layer::pool(channels));
  }
  const auto m6 = spec.major6_channels();
  for (std::size_t s = 0; s < 3; ++s) {
    const bool last = s == 2;
    const Index width = last ? m6[s] : scaled(m6[s], d);
    g.layers.push_back(Layer::conv(channels, width, 0, spec.bits_per_major[5], !last));
    channels = width;
  }
  return g;
}

NetworkGraph build_vgg16_conv_stack(Index input_side) {
  const std::vector<Index> widths{64, 128, 256, 512, 512};
  const std::vector<Index> depth{2, 2, 3, 3, 3};
  const std::vector<int> bits{3, 3, 1, 1, 1};
  NetworkGraph g;
  g.input_shape = Shape{3, input_side, input_side};
  g.input_act_scale = 255.0f / static_cast<float>(kActivationMax);
  Index channels = 3;
  for (std::size_t m = 0; m < 5; ++m) {
    for (Index s = 0; s < depth[m]; ++s) {
      g.layers.push_back(Layer::conv(channels, widths[m], 1, bits[m]));
      channels = widths[m];
    }
    g.layers.push_back(Layer::pool(channels));
  }
  return g;
}

void init_weights(NetworkGraph& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (auto& layer : g.layers) {
    if (layer.spec.kind != LayerKind::conv3x3) continue;
    const Index cin = layer.spec.in_channels, cout = layer.spec.out_channels;
    std::normal_distribution<float> dist(0.0f, std::sqrt(2.0f / static_cast<float>(cin * 9)));
    layer.weights = FloatTensor(Shape{cout, cin, 3, 3});
    for (Index i = 0; i < layer.weights.size(); ++i) layer.weights.values()[i] = dist(rng);
    layer.bias.assign(static_cast<std::size_t>(cout), 0.0f);
    layer.quantized.reset();
  }
}

FloatTensor fc_as_single_conv(const FloatTensor& fc_weights, Index k, Index channels) {
  const Shape& s = fc_weights.shape();
  if (s.rank() != 2 || k < 1 || channels < 1 || s[1] != channels * k * k) {
    throw Error(ErrorCode::dimension_mismatch, "FC weights " + s.str() + " do not match a " + std::to_string(k) +
                                                   "x" + std::to_string(k) + "x" + std::to_string(channels) +
                                                   " input map");
  }
  return FloatTensor(Shape{s[0], channels, k, k}, fc_weights.values());
}

std::vector<float> calibrate_scales(const NetworkGraph& g, const std::vector<FloatTensor>& samples) {
  if (samples.empty()) throw Error(ErrorCode::empty_sample_set, "calibration needs at least one sample");
  std::vector<double> max_seen(g.conv_count(), 0.0);
  for (const auto& sample : samples) {
    FloatTensor cur = sample;
    std::size_t conv_index = 0;
    for (std::size_t i = 0; i < g.layers.size(); ++i) {
      const Layer& layer = g.layers[i];
      if (layer.spec.kind == LayerKind::maxpool2x2) {
        cur = maxpool2x2(cur);
        continue;
      }
      if (layer.spec.kind != LayerKind::conv3x3) {
        throw Error(ErrorCode::unsupported_op, "layer " + std::to_string(i) + " cannot be calibrated");
      }
      if (layer.weights.empty()) {
        throw Error(ErrorCode::missing_weights, "calibration needs float weights on layer " + std::to_string(i));
      }
      cur = conv3x3_float(cur, layer.weights, layer.bias, layer.spec.padding, layer.spec.relu);
      const double m = cur.size() ? static_cast<double>(cur.values().cwiseAbs().maxCoeff()) : 0.0;
      max_seen[conv_index] = std::max(max_seen[conv_index], m);
      ++conv_index;
    }
  }
  std::vector<float> scales;
  scales.reserve(max_seen.size());
  for (double m : max_seen) scales.push_back(m > 0.0 ? static_cast<float>(m / kActivationMax) : 1.0f);
  return scales;
}

float calibrate_input_scale(const std::vector<FloatTensor>& samples) {
  if (samples.empty()) throw Error(ErrorCode::empty_sample_set, "calibration needs at least one sample");
  double m = 0.0;
  for (const auto& s : samples) {
    if (s.size()) m = std::max(m, static_cast<double>(s.values().maxCoeff()));
  }
  return m > 0.0 ? static_cast<float>(m / kActivationMax) : 1.0f;
}

void apply_scales(NetworkGraph& g, const std::vector<float>& scales) {
  if (scales.size() != g.conv_count()) {
    throw Error(ErrorCode::dimension_mismatch, "expected " + std::to_string(g.conv_count()) + " scales, got " +
                                                   std::to_string(scales.size()));
  }
  std::size_t k = 0;
  for (auto& layer : g.layers) {
    if (layer.spec.kind == LayerKind::conv3x3) layer.spec.out_act_scale = scales[k++];
  }
}

void quantize_network(NetworkGraph& g) {
  float in_scale = g.input_act_scale;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    Layer& layer = g.layers[i];
    if (layer.spec.kind != LayerKind::conv3x3) continue;
    if (layer.weights.empty()) {
      throw Error(ErrorCode::missing_weights, "layer " + std::to_string(i) + " has no float weights to quantize");
    }
    QuantWeights q = quantize_weights(layer.weights, layer.spec.weight_bits);
    for (std::size_t o = 0; o < q.bias.size() && o < layer.bias.size(); ++o) {
      const double unit = static_cast<double>(in_scale) * static_cast<double>(q.scales[o]);
      q.bias[o] = static_cast<std::int32_t>(round_half_away(static_cast<double>(layer.bias[o]) / unit));
    }
    layer.quantized = std::move(q);
    in_scale = layer.spec.out_act_scale;
  }
}

StorageMode parse_storage_mode(std::string_view s) {
  if (s == "packed") return StorageMode::packed;
  if (s == "paper") return StorageMode::paper;
  throw Error(ErrorCode::invalid_spec, "unknown storage mode '" + std::string(s) + "'");
}

int paper_mode_bits(int weight_bits) { return weight_bits == 1 ? 2 : 4; }

double MemoryReport::packed_ratio() const {
  return packed_bytes ? static_cast<double>(float_bytes) / static_cast<double>(packed_bytes) : 0.0;
}

double MemoryReport::paper_ratio() const {
  return paper_bytes ? static_cast<double>(float_bytes) / static_cast<double>(paper_bytes) : 0.0;
}

MemoryReport memory_report(const NetworkGraph& g, StorageMode mode) {
  MemoryReport r;
  r.mode = mode;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const LayerSpec& s = g.layers[i].spec;
    if (s.kind != LayerKind::conv3x3) continue;
    LayerMemory m;
    m.layer = i;
    m.bits = s.weight_bits;
    m.coefficients = s.out_channels * s.in_channels * 9;
    const auto n = static_cast<std::size_t>(m.coefficients);
    m.float_bytes = 4 * n;
    m.packed_bytes = packed_size(n, s.weight_bits);
    m.paper_bytes = packed_size(n, paper_mode_bits(s.weight_bits));
    r.coefficients += m.coefficients;
    r.float_bytes += m.float_bytes;
    r.packed_bytes += m.packed_bytes;
    r.paper_bytes += m.paper_bytes;
    r.layers.push_back(m);
  }
  if (!g.layers.empty()) r.peak_activation_bytes = plan_shapes(g).peak_activation_bytes;
  return r;
}

}  // namespace scnlp
