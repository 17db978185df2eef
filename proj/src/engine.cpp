#include "scnlp/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace scnlp {
namespace {

// Output rows per im2col band; bounds the column buffer on large maps.
constexpr Index kBandElements = 1 << 21;

template <typename In, typename Acc>
void im2col_band(const Tensor<In>& x, int padding, Index y0, Index y1, Index out_w, RowMatrix<Acc>& cols) {
  const Index cin = x.dim(0), h = x.dim(1), w = x.dim(2);
  const Index n = (y1 - y0) * out_w;
  cols.setZero(cin * 9, n);
  for (Index c = 0; c < cin; ++c) {
    const auto plane = x.plane(c);
    for (Index ky = 0; ky < 3; ++ky) {
      for (Index kx = 0; kx < 3; ++kx) {
        auto row = cols.row((c * 3 + ky) * 3 + kx);
        for (Index oy = y0; oy < y1; ++oy) {
          const Index iy = oy + ky - padding;
          if (iy < 0 || iy >= h) continue;
          for (Index ox = 0; ox < out_w; ++ox) {
            const Index ix = ox + kx - padding;
            if (ix < 0 || ix >= w) continue;
            row((oy - y0) * out_w + ox) = static_cast<Acc>(plane(iy, ix));
          }
        }
      }
    }
  }
}

void check_padding(int padding) {
  if (padding != 0 && padding != 1) {
    throw Error(ErrorCode::shape_mismatch, "padding must be 0 or 1, got " + std::to_string(padding));
  }
}

std::pair<Index, Index> conv_out_dims(const Shape& in, int padding) {
  const Index oh = in[1] + 2 * padding - 2, ow = in[2] + 2 * padding - 2;
  if (oh < 1 || ow < 1) {
    throw Error(ErrorCode::shape_mismatch, "conv3x3 with padding " + std::to_string(padding) +
                                               " collapses input " + in.str());
  }
  return {oh, ow};
}

Index band_rows(Index k, Index out_w, Index out_h) {
  return std::clamp<Index>(kBandElements / std::max<Index>(1, k * out_w), 1, out_h);
}

void check_conv_operands(const QuantActivations& x, const QuantWeights& w) {
  if (x.shape().rank() != 3 || x.shape()[0] != w.in_channels) {
    throw Error(ErrorCode::shape_mismatch, "activation shape " + x.shape().str() + " does not match weights " +
                                               w.shape().str());
  }
  if (!(x.scale > 0.0f)) throw Error(ErrorCode::scale_invalid, "input activation scale must be positive");
  if (w.scales.size() != static_cast<std::size_t>(w.out_channels)) {
    throw Error(ErrorCode::scale_invalid, "weight scale count does not match output channels");
  }
  for (float s : w.scales) {
    if (!(s > 0.0f)) throw Error(ErrorCode::scale_invalid, "weight scales must be positive");
  }
}

double real_value(std::int32_t acc, float x_scale, float w_scale, bool relu) {
  const double r = static_cast<double>(acc) * static_cast<double>(x_scale) * static_cast<double>(w_scale);
  return relu ? std::max(r, 0.0) : r;
}

}  // namespace

const char* to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::conv3x3: return "conv3x3";
    case LayerKind::maxpool2x2: return "maxpool2x2";
    case LayerKind::fully_connected: return "fully_connected";
  }
  return "unknown";
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::unsupported_op: return "UnsupportedOp";
    case ViolationKind::illegal_padding: return "IllegalPadding";
    case ViolationKind::illegal_bits: return "IllegalBits";
    case ViolationKind::channel_mismatch: return "ChannelMismatch";
    case ViolationKind::shape_collapse: return "ShapeCollapse";
    case ViolationKind::odd_spatial_dim: return "OddSpatialDim";
    case ViolationKind::bad_input: return "BadInput";
    case ViolationKind::budget_exceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

Layer Layer::conv(Index in_channels, Index out_channels, int padding, int bits, bool relu) {
  Layer l;
  l.spec.kind = LayerKind::conv3x3;
  l.spec.in_channels = in_channels;
  l.spec.out_channels = out_channels;
  l.spec.padding = padding;
  l.spec.weight_bits = bits;
  l.spec.relu = relu;
  return l;
}

Layer Layer::pool(Index channels) {
  Layer l;
  l.spec.kind = LayerKind::maxpool2x2;
  l.spec.in_channels = l.spec.out_channels = channels;
  l.spec.padding = 0;
  l.spec.weight_bits = 0;
  l.spec.relu = false;
  return l;
}

std::size_t NetworkGraph::conv_count() const {
  return static_cast<std::size_t>(std::count_if(
      layers.begin(), layers.end(), [](const Layer& l) { return l.spec.kind == LayerKind::conv3x3; }));
}

std::size_t activation_bytes(const Shape& shape) {
  return packed_size(static_cast<std::size_t>(shape.numel()), kActivationBits);
}

std::optional<Shape> layer_output_shape(const LayerSpec& spec, const Shape& in) {
  if (in.rank() != 3) return std::nullopt;
  switch (spec.kind) {
    case LayerKind::conv3x3: {
      const Index oh = in[1] + 2 * spec.padding - 2, ow = in[2] + 2 * spec.padding - 2;
      if (oh < 1 || ow < 1) return std::nullopt;
      return Shape{spec.out_channels, oh, ow};
    }
    case LayerKind::maxpool2x2:
      if (in[1] % 2 || in[2] % 2 || in[1] < 2 || in[2] < 2) return std::nullopt;
      return Shape{in[0], in[1] / 2, in[2] / 2};
    case LayerKind::fully_connected:
      return Shape{spec.out_channels, 1, 1};
  }
  return std::nullopt;
}

std::size_t packed_coefficient_bytes(const LayerSpec& spec) {
  if (spec.kind != LayerKind::conv3x3) return 0;
  return packed_size(static_cast<std::size_t>(spec.out_channels * spec.in_channels * 9), spec.weight_bits);
}

ShapePlan plan_shapes(const NetworkGraph& g) {
  ShapePlan plan;
  Shape cur = g.input_shape;
  for (const auto& layer : g.layers) {
    plan.coefficient_bytes += packed_coefficient_bytes(layer.spec);
    auto next = layer_output_shape(layer.spec, cur);
    if (!next) break;
    plan.peak_activation_bytes = std::max(plan.peak_activation_bytes, activation_bytes(cur) + activation_bytes(*next));
    plan.outputs.push_back(*next);
    cur = *next;
  }
  return plan;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate_graph(const NetworkGraph& g, std::size_t budget_bytes) {
  ValidationReport report;
  report.budget_bytes = budget_bytes;
  auto add = [&](ViolationKind k, std::optional<std::size_t> layer, std::string msg) {
    report.violations.push_back(Violation{k, layer, std::move(msg)});
  };

  if (g.input_shape.rank() != 3 || g.input_shape.numel() <= 0) {
    add(ViolationKind::bad_input, std::nullopt, "input shape must be (C, H, W), got " + g.input_shape.str());
    return report;
  }
  if (!(g.input_act_scale > 0.0f)) add(ViolationKind::bad_input, std::nullopt, "input activation scale must be positive");

  Shape cur = g.input_shape;
  bool shapes_known = true;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const LayerSpec& s = g.layers[i].spec;
    const std::string where = "layer " + std::to_string(i) + " (" + to_string(s.kind) + ")";
    report.coefficient_bytes += packed_coefficient_bytes(s);

    if (s.kind == LayerKind::fully_connected) {
      add(ViolationKind::unsupported_op, i, where + ": inner-product layers are not supported on chip");
    } else if (s.kind == LayerKind::conv3x3) {
      if (s.padding != 0 && s.padding != 1) {
        add(ViolationKind::illegal_padding, i, where + ": padding must be 0 or 1");
      }
      if (s.weight_bits != 1 && s.weight_bits != 3) {
        add(ViolationKind::illegal_bits, i, where + ": weights must be 1 or 3 bits");
      }
    } else if (s.in_channels != s.out_channels) {
      add(ViolationKind::channel_mismatch, i, where + ": pooling must preserve channels");
    }

    if (!shapes_known) continue;
    if (cur[0] != s.in_channels) {
      add(ViolationKind::channel_mismatch, i,
          where + ": expects " + std::to_string(s.in_channels) + " channels, receives " + std::to_string(cur[0]));
    }
    if (s.kind == LayerKind::maxpool2x2 && (cur[1] % 2 || cur[2] % 2)) {
      add(ViolationKind::odd_spatial_dim, i, where + ": input " + cur.str() + " has an odd dimension");
      shapes_known = false;
      continue;
    }
    auto next = layer_output_shape(s, cur);
    if (!next) {
      add(ViolationKind::shape_collapse, i, where + ": input " + cur.str() + " shrinks below 1x1");
      shapes_known = false;
      continue;
    }
    report.peak_activation_bytes =
        std::max(report.peak_activation_bytes, activation_bytes(cur) + activation_bytes(*next));
    cur = *next;
  }
  if (shapes_known) report.output_shape = cur;

  const std::size_t total = report.coefficient_bytes + report.peak_activation_bytes;
  if (total > budget_bytes) {
    add(ViolationKind::budget_exceeded, std::nullopt,
        "coefficients (" + std::to_string(report.coefficient_bytes) + " B) + peak activations (" +
            std::to_string(report.peak_activation_bytes) + " B) exceed budget of " + std::to_string(budget_bytes) +
            " B");
  }
  return report;
}

namespace {

// Banded im2col GEMM; adds no bias.
template <typename Acc>
void accumulate_bands(const QuantActivations& x, const std::vector<std::int8_t>& codes, int padding,
                      Tensor<std::int32_t>& acc) {
  const Index cout = acc.dim(0), oh = acc.dim(1), ow = acc.dim(2);
  const Index k = x.codes.dim(0) * 9;
  RowMatrix<Acc> wm(cout, k);
  for (Index o = 0; o < cout; ++o) {
    for (Index i = 0; i < k; ++i) wm(o, i) = static_cast<Acc>(codes[static_cast<std::size_t>(o * k + i)]);
  }
  const Index band = band_rows(k, ow, oh);
  RowMatrix<Acc> cols;
  RowMatrix<Acc> prod;
  for (Index y0 = 0; y0 < oh; y0 += band) {
    const Index y1 = std::min(oh, y0 + band);
    im2col_band(x.codes, padding, y0, y1, ow, cols);
    prod.noalias() = wm * cols;
    for (Index o = 0; o < cout; ++o) {
      acc.plane(o).middleRows(y0, y1 - y0) =
          Eigen::Map<const RowMatrix<Acc>>(prod.row(o).data(), y1 - y0, ow).template cast<std::int32_t>();
    }
  }
}

}  // namespace

Tensor<std::int32_t> conv3x3_accumulate(const QuantActivations& x, const QuantWeights& w, int padding) {
  check_padding(padding);
  check_conv_operands(x, w);
  const auto [oh, ow] = conv_out_dims(x.shape(), padding);
  const Index k = w.in_channels * 9;

  // |acc| <= 9 * C_in * 31 * 3 stays far inside int32 for any realistic C_in.
  const Index bound = k * kActivationMax * 3;
  if (bound >= (Index{1} << 30)) {
    throw Error(ErrorCode::shape_mismatch, "input channel count overflows the 32-bit accumulator");
  }

  Tensor<std::int32_t> acc(Shape{w.out_channels, oh, ow});
  // Below 2^24 every partial sum is an exactly representable float, so the
  // float GEMM is exact in any summation order.
  if (bound < (Index{1} << 24)) {
    accumulate_bands<float>(x, w.codes(), padding, acc);
  } else {
    accumulate_bands<std::int32_t>(x, w.codes(), padding, acc);
  }
  if (!w.bias.empty()) {
    const Index plane = oh * ow;
    for (Index o = 0; o < w.out_channels; ++o) {
      acc.values().segment(o * plane, plane).array() += w.bias[static_cast<std::size_t>(o)];
    }
  }
  return acc;
}

QuantActivations conv3x3_int(const QuantActivations& x, const QuantWeights& w, int padding, bool relu,
                             float out_scale) {
  if (!(out_scale > 0.0f) || !std::isfinite(out_scale)) {
    throw Error(ErrorCode::scale_invalid, "output activation scale must be positive");
  }
  const Tensor<std::int32_t> acc = conv3x3_accumulate(x, w, padding);
  QuantActivations out;
  out.scale = out_scale;
  out.codes = CodeTensor(acc.shape());
  const Index plane = acc.dim(1) * acc.dim(2);
  for (Index o = 0; o < acc.dim(0); ++o) {
    const float ws = w.scales[static_cast<std::size_t>(o)];
    for (Index i = o * plane; i < (o + 1) * plane; ++i) {
      const double r = real_value(acc.values()[i], x.scale, ws, relu);
      const double code = std::clamp(round_half_away(r / static_cast<double>(out_scale)), 0.0,
                                     static_cast<double>(kActivationMax));
      out.codes.values()[i] = static_cast<std::uint8_t>(code);
    }
  }
  return out;
}

FloatTensor conv3x3_int_real(const QuantActivations& x, const QuantWeights& w, int padding, bool relu) {
  const Tensor<std::int32_t> acc = conv3x3_accumulate(x, w, padding);
  FloatTensor out(acc.shape());
  const Index plane = acc.dim(1) * acc.dim(2);
  for (Index o = 0; o < acc.dim(0); ++o) {
    const float ws = w.scales[static_cast<std::size_t>(o)];
    for (Index i = o * plane; i < (o + 1) * plane; ++i) {
      out.values()[i] = static_cast<float>(real_value(acc.values()[i], x.scale, ws, relu));
    }
  }
  return out;
}

FloatTensor conv3x3_float(const FloatTensor& x, const FloatTensor& w, const std::vector<float>& bias, int padding,
                          bool relu) {
  check_padding(padding);
  const Shape& ws = w.shape();
  if (ws.rank() != 4 || ws[2] != 3 || ws[3] != 3) {
    throw Error(ErrorCode::shape_mismatch, "expected (C_out, C_in, 3, 3) weights, got " + ws.str());
  }
  if (x.shape().rank() != 3 || x.dim(0) != ws[1]) {
    throw Error(ErrorCode::shape_mismatch, "input " + x.shape().str() + " does not match weights " + ws.str());
  }
  if (!bias.empty() && bias.size() != static_cast<std::size_t>(ws[0])) {
    throw Error(ErrorCode::shape_mismatch, "bias length does not match output channels");
  }
  const auto [oh, ow] = conv_out_dims(x.shape(), padding);
  const Index cout = ws[0], k = ws[1] * 9;
  const RowMatrix<double> wm = Eigen::Map<const RowMatrix<float>>(w.data(), cout, k).cast<double>();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(cout);
  for (Index o = 0; o < cout && !bias.empty(); ++o) b[o] = bias[static_cast<std::size_t>(o)];

  FloatTensor out(Shape{cout, oh, ow});
  const Index band = band_rows(k, ow, oh);
  RowMatrix<double> cols;
  for (Index y0 = 0; y0 < oh; y0 += band) {
    const Index y1 = std::min(oh, y0 + band);
    im2col_band(x, padding, y0, y1, ow, cols);
    RowMatrix<double> prod = (wm * cols).colwise() + b;
    if (relu) prod = prod.cwiseMax(0.0);
    for (Index o = 0; o < cout; ++o) {
      out.plane(o).middleRows(y0, y1 - y0) =
          Eigen::Map<const RowMatrix<double>>(prod.row(o).data(), y1 - y0, ow).cast<float>();
    }
  }
  return out;
}

QuantActivations maxpool2x2(const QuantActivations& x) { return QuantActivations{maxpool2x2(x.codes), x.scale}; }

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void require_runnable(const NetworkGraph& g) {
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    if (g.layers[i].spec.kind == LayerKind::fully_connected) {
      throw Error(ErrorCode::unsupported_op, "layer " + std::to_string(i) + " is a fully connected layer");
    }
  }
}

void record(ExecutionTrace& trace, const Shape& in, const Shape& out, double ms) {
  trace.layers.push_back(LayerTrace{out, activation_bytes(out), ms});
  trace.peak_activation_bytes = std::max(trace.peak_activation_bytes, activation_bytes(in) + activation_bytes(out));
}

RunResult run_float(const NetworkGraph& g, const FloatTensor& input) {
  RunResult result;
  FloatTensor cur = input;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const Layer& layer = g.layers[i];
    const auto t0 = Clock::now();
    const Shape in_shape = cur.shape();
    if (layer.spec.kind == LayerKind::maxpool2x2) {
      cur = maxpool2x2(cur);
    } else if (!layer.weights.empty()) {
      cur = conv3x3_float(cur, layer.weights, layer.bias, layer.spec.padding, layer.spec.relu);
    } else if (layer.quantized) {
      // Float view of a quantized layer: dequantized weights, bias back in real units.
      std::vector<float> bias;
      float prev_scale = g.input_act_scale;
      for (std::size_t j = 0; j < i; ++j) {
        if (g.layers[j].spec.kind == LayerKind::conv3x3) prev_scale = g.layers[j].spec.out_act_scale;
      }
      const QuantWeights& q = *layer.quantized;
      for (std::size_t o = 0; o < q.bias.size(); ++o) {
        bias.push_back(static_cast<float>(static_cast<double>(q.bias[o]) * prev_scale * q.scales[o]));
      }
      cur = conv3x3_float(cur, q.dequantize(), bias, layer.spec.padding, layer.spec.relu);
    } else {
      throw Error(ErrorCode::missing_weights, "layer " + std::to_string(i) + " has no weights");
    }
    record(result.trace, in_shape, cur.shape(), millis_since(t0));
  }
  result.output = std::move(cur);
  return result;
}

}  // namespace

RunResult run(const NetworkGraph& g, const QuantActivations& input) {
  require_runnable(g);
  if (!(input.shape() == g.input_shape)) {
    throw Error(ErrorCode::shape_mismatch,
                "input " + input.shape().str() + " does not match graph input " + g.input_shape.str());
  }
  RunResult result;
  QuantActivations cur = input;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const Layer& layer = g.layers[i];
    const auto t0 = Clock::now();
    const Shape in_shape = cur.shape();
    if (layer.spec.kind == LayerKind::maxpool2x2) {
      cur = maxpool2x2(cur);
    } else {
      if (!layer.quantized) throw Error(ErrorCode::missing_weights, "layer " + std::to_string(i) + " is not quantized");
      const bool last = i + 1 == g.layers.size();
      if (last && !layer.spec.relu) {
        result.output = conv3x3_int_real(cur, *layer.quantized, layer.spec.padding, false);
        record(result.trace, in_shape, result.output.shape(), millis_since(t0));
        return result;
      }
      cur = conv3x3_int(cur, *layer.quantized, layer.spec.padding, layer.spec.relu, layer.spec.out_act_scale);
    }
    record(result.trace, in_shape, cur.shape(), millis_since(t0));
  }
  result.output = cur.dequantize();
  return result;
}

RunResult run(const NetworkGraph& g, const FloatTensor& input, ExecMode mode) {
  require_runnable(g);
  if (!(input.shape() == g.input_shape)) {
    throw Error(ErrorCode::shape_mismatch,
                "input " + input.shape().str() + " does not match graph input " + g.input_shape.str());
  }
  if (mode == ExecMode::floating) return run_float(g, input);
  if (g.layers.empty()) return RunResult{input, {}};
  return run(g, quantize_activations(input, g.input_act_scale));
}

}  // namespace scnlp
