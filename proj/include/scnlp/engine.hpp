#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scnlp/qtensor.hpp"
#include "scnlp/tensor.hpp"

namespace scnlp {

/// On-chip memory shared by coefficients and activation maps: 9 MiB.
inline constexpr std::size_t kChipBudgetBytes = 9u * 1024u * 1024u;

/// Operator kinds. Only conv3x3 and maxpool2x2 exist on the accelerator;
/// fully_connected is representable so that graphs containing it can be
/// rejected by validation.
enum class LayerKind : std::uint8_t { conv3x3 = 0, maxpool2x2 = 1, fully_connected = 2 };

const char* to_string(LayerKind kind);

/// Conv layers are 3x3, stride 1, with ReLU fused into requantization.
/// Pools are 2x2, stride 2, unpadded.
struct LayerSpec {
  LayerKind kind = LayerKind::conv3x3;
  int padding = 1;
  Index in_channels = 0;
  Index out_channels = 0;
  int weight_bits = 1;
  bool relu = true;
  float out_act_scale = 1.0f;

  bool operator==(const LayerSpec&) const = default;
};

struct Layer {
  LayerSpec spec;
  FloatTensor weights;      // (C_out, C_in, 3, 3) float coefficients, may be empty
  std::vector<float> bias;  // float bias, may be empty (treated as zero)
  std::optional<QuantWeights> quantized;

  static Layer conv(Index in_channels, Index out_channels, int padding, int bits, bool relu = true);
  static Layer pool(Index channels);
};

struct NetworkGraph {
  Shape input_shape;  // (C, H, W)
  float input_act_scale = 1.0f;
  std::vector<Layer> layers;

  std::size_t conv_count() const;
};

enum class ExecMode { integer, floating };

/// Bytes of a 5-bit packed activation map of this shape.
std::size_t activation_bytes(const Shape& shape);

/// Output shape of one layer, or nullopt when the layer cannot accept `in`.
std::optional<Shape> layer_output_shape(const LayerSpec& spec, const Shape& in);

/// Packed coefficient bytes of one conv layer: ceil(C_out * C_in * 9 * bits / 8).
std::size_t packed_coefficient_bytes(const LayerSpec& spec);

/// Dry shape pass over a graph.
struct ShapePlan {
  std::vector<Shape> outputs;              // one per layer
  std::size_t peak_activation_bytes = 0;   // max over layers of input + output maps
  std::size_t coefficient_bytes = 0;       // packed
};
ShapePlan plan_shapes(const NetworkGraph& g);

enum class ViolationKind {
  unsupported_op,
  illegal_padding,
  illegal_bits,
  channel_mismatch,
  shape_collapse,
  odd_spatial_dim,
  bad_input,
  budget_exceeded,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::optional<std::size_t> layer;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::size_t coefficient_bytes = 0;
  std::size_t peak_activation_bytes = 0;
  std::size_t budget_bytes = 0;
  Shape output_shape;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate_graph(const NetworkGraph& g, std::size_t budget_bytes = kChipBudgetBytes);

/// Integer accumulators sum(x_code * w_code) + bias, shape (C_out, H', W').
Tensor<std::int32_t> conv3x3_accumulate(const QuantActivations& x, const QuantWeights& w, int padding);

/// Quantized conv: acc * x.scale * w.scales[c], optional ReLU, requantized
/// to 5 bits with out_scale (round half away from zero, then clamp).
QuantActivations conv3x3_int(const QuantActivations& x, const QuantWeights& w, int padding, bool relu,
                             float out_scale);

/// Same accumulation, but returns the real values without requantizing.
FloatTensor conv3x3_int_real(const QuantActivations& x, const QuantWeights& w, int padding, bool relu);

/// Float reference convolution (cross-correlation, stride 1). Accumulates in double.
FloatTensor conv3x3_float(const FloatTensor& x, const FloatTensor& w, const std::vector<float>& bias,
                          int padding, bool relu);

template <typename Scalar>
Tensor<Scalar> maxpool2x2(const Tensor<Scalar>& x) {
  const Index c = x.dim(0), h = x.dim(1), w = x.dim(2);
  if (h % 2 != 0 || w % 2 != 0) {
    throw Error(ErrorCode::odd_spatial_dim, "maxpool2x2 input " + x.shape().str() + " has an odd dimension");
  }
  Tensor<Scalar> out(Shape{c, h / 2, w / 2});
  for (Index ch = 0; ch < c; ++ch) {
    const auto in = x.plane(ch);
    auto o = out.plane(ch);
    for (Index y = 0; y < h / 2; ++y) {
      for (Index xx = 0; xx < w / 2; ++xx) o(y, xx) = in.template block<2, 2>(2 * y, 2 * xx).maxCoeff();
    }
  }
  return out;
}

QuantActivations maxpool2x2(const QuantActivations& x);

struct LayerTrace {
  Shape output_shape;
  std::size_t activation_bytes = 0;
  double millis = 0.0;
};

struct ExecutionTrace {
  std::vector<LayerTrace> layers;
  std::size_t peak_activation_bytes = 0;
};

struct RunResult {
  FloatTensor output;
  ExecutionTrace trace;
};

/// Runs every layer in order. In integer mode the input is quantized with
/// g.input_act_scale; a final conv without ReLU yields its real-valued
/// accumulator output (raw scores), otherwise the last activations are
/// dequantized. Float mode uses float weights, or dequantized ones when only
/// quantized weights are present.
RunResult run(const NetworkGraph& g, const FloatTensor& input, ExecMode mode);

/// Integer-mode run from already-quantized input.
RunResult run(const NetworkGraph& g, const QuantActivations& input);

}  // namespace scnlp
