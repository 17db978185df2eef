#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scnlp/tensor.hpp"

namespace scnlp {

/// Largest 5-bit activation code.
inline constexpr int kActivationMax = 31;
inline constexpr int kActivationBits = 5;

/// Bit-packed 3x3 convolution coefficients.
///
/// 1-bit codes are {-1, +1} (stored bit 1 -> +1, 0 -> -1). 3-bit codes are
/// -3..+3 in two's complement; -4 is never produced. Dequantized weight is
/// code * scales[c_out]. Biases live in the accumulator domain, i.e. in units
/// of (input activation scale * scales[c_out]).
struct QuantWeights {
  int bits = 1;
  Index out_channels = 0;
  Index in_channels = 0;
  std::vector<std::uint8_t> packed;
  std::vector<float> scales;
  std::vector<std::int32_t> bias;

  Index count() const { return out_channels * in_channels * 9; }
  Shape shape() const { return Shape{out_channels, in_channels, 3, 3}; }

  /// Unpacked signed codes, row-major over (C_out, C_in, 3, 3).
  std::vector<std::int8_t> codes() const;
  FloatTensor dequantize() const;
  bool operator==(const QuantWeights&) const = default;
};

/// 5-bit activation codes with one scale per tensor: real = code * scale.
struct QuantActivations {
  CodeTensor codes;  // (C, H, W), values 0..31
  float scale = 1.0f;

  const Shape& shape() const { return codes.shape(); }
  FloatTensor dequantize() const;
  bool operator==(const QuantActivations&) const = default;
};

/// Round half away from zero.
inline double round_half_away(double v) { return std::round(v); }

QuantWeights quantize_weights_1bit(const FloatTensor& w);
QuantWeights quantize_weights_3bit(const FloatTensor& w);
/// Dispatches on bits (1 or 3).
QuantWeights quantize_weights(const FloatTensor& w, int bits);

QuantActivations quantize_activations(const FloatTensor& x, float scale);

/// Little-endian bit stream: code i occupies bits [i*bits, (i+1)*bits), low bit
/// first; the final byte is zero-padded. bits is 1, 3 or 5.
std::vector<std::uint8_t> pack_codes(std::span<const int> codes, int bits);
std::vector<int> unpack_codes(std::span<const std::uint8_t> bytes, std::size_t count, int bits);

/// Bytes needed for `count` codes of `bits` each.
inline std::size_t packed_size(std::size_t count, int bits) {
  return (count * static_cast<std::size_t>(bits) + 7) / 8;
}

}  // namespace scnlp
