#include "scnlp/qtensor.hpp"

#include <algorithm>
#include <cmath>

namespace scnlp {
namespace {

void require_kernel_shape(const FloatTensor& w) {
  const Shape& s = w.shape();
  if (s.rank() != 4 || s[2] != 3 || s[3] != 3) {
    throw Error(ErrorCode::bad_shape, "expected (C_out, C_in, 3, 3) weights, got " + s.str());
  }
}

void check_code(int code, int bits) {
  bool ok = false;
  switch (bits) {
    case 1: ok = code == -1 || code == 1; break;
    case 3: ok = code >= -3 && code <= 3; break;
    case 5: ok = code >= 0 && code <= kActivationMax; break;
    default:
      throw Error(ErrorCode::code_out_of_range, "unsupported code width " + std::to_string(bits));
  }
  if (!ok) {
    throw Error(ErrorCode::code_out_of_range,
                "code " + std::to_string(code) + " not representable in " + std::to_string(bits) + " bits");
  }
}

unsigned to_field(int code, int bits) {
  if (bits == 1) return code > 0 ? 1u : 0u;
  return static_cast<unsigned>(code) & ((1u << bits) - 1u);
}

int from_field(unsigned field, int bits) {
  if (bits == 1) return field ? 1 : -1;
  if (bits == 3) return (field & 0x4u) ? static_cast<int>(field) - 8 : static_cast<int>(field);
  return static_cast<int>(field);
}

}  // namespace

std::vector<std::uint8_t> pack_codes(std::span<const int> codes, int bits) {
  std::vector<std::uint8_t> out(packed_size(codes.size(), bits), 0);
  std::size_t pos = 0;
  for (int code : codes) {
    check_code(code, bits);
    const unsigned field = to_field(code, bits);
    for (int b = 0; b < bits; ++b, ++pos) {
      if ((field >> b) & 1u) out[pos / 8] |= static_cast<std::uint8_t>(1u << (pos % 8));
    }
  }
  return out;
}

std::vector<int> unpack_codes(std::span<const std::uint8_t> bytes, std::size_t count, int bits) {
  if (bits != 1 && bits != 3 && bits != 5) {
    throw Error(ErrorCode::code_out_of_range, "unsupported code width " + std::to_string(bits));
  }
  if (bytes.size() < packed_size(count, bits)) {
    throw Error(ErrorCode::truncated, "packed stream too short for " + std::to_string(count) + " codes");
  }
  std::vector<int> out;
  out.reserve(count);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < count; ++i) {
    unsigned field = 0;
    for (int b = 0; b < bits; ++b, ++pos) field |= ((bytes[pos / 8] >> (pos % 8)) & 1u) << b;
    const int code = from_field(field, bits);
    check_code(code, bits);
    out.push_back(code);
  }
  return out;
}

std::vector<std::int8_t> QuantWeights::codes() const {
  const auto raw = unpack_codes(packed, static_cast<std::size_t>(count()), bits);
  return {raw.begin(), raw.end()};
}

FloatTensor QuantWeights::dequantize() const {
  FloatTensor out(shape());
  const auto c = codes();
  const Index per_out = in_channels * 9;
  for (Index o = 0; o < out_channels; ++o) {
    for (Index i = 0; i < per_out; ++i) {
      out.values()[o * per_out + i] = static_cast<float>(c[static_cast<std::size_t>(o * per_out + i)]) *
                                      scales[static_cast<std::size_t>(o)];
    }
  }
  return out;
}

FloatTensor QuantActivations::dequantize() const {
  return FloatTensor(codes.shape(), codes.values().cast<float>() * scale);
}

QuantWeights quantize_weights_1bit(const FloatTensor& w) {
  require_kernel_shape(w);
  QuantWeights q;
  q.bits = 1;
  q.out_channels = w.dim(0);
  q.in_channels = w.dim(1);
  const Index per_out = q.in_channels * 9;
  std::vector<int> codes(static_cast<std::size_t>(q.count()));
  for (Index o = 0; o < q.out_channels; ++o) {
    const auto block = w.values().segment(o * per_out, per_out);
    const double mean_abs = per_out ? block.cast<double>().cwiseAbs().sum() / static_cast<double>(per_out) : 0.0;
    q.scales.push_back(mean_abs > 0.0 ? static_cast<float>(mean_abs) : 1.0f);
    for (Index i = 0; i < per_out; ++i) codes[static_cast<std::size_t>(o * per_out + i)] = block[i] < 0.0f ? -1 : 1;
  }
  q.packed = pack_codes(codes, 1);
  q.bias.assign(static_cast<std::size_t>(q.out_channels), 0);
  return q;
}

QuantWeights quantize_weights_3bit(const FloatTensor& w) {
  require_kernel_shape(w);
  QuantWeights q;
  q.bits = 3;
  q.out_channels = w.dim(0);
  q.in_channels = w.dim(1);
  const Index per_out = q.in_channels * 9;
  std::vector<int> codes(static_cast<std::size_t>(q.count()));
  for (Index o = 0; o < q.out_channels; ++o) {
    const auto block = w.values().segment(o * per_out, per_out);
    const double max_abs = per_out ? static_cast<double>(block.cwiseAbs().maxCoeff()) : 0.0;
    const bool zero = max_abs == 0.0;
    const float scale = zero ? 1.0f : static_cast<float>(max_abs / 3.0);
    q.scales.push_back(scale);
    for (Index i = 0; i < per_out; ++i) {
      const double r = zero ? 0.0 : round_half_away(static_cast<double>(block[i]) / scale);
      codes[static_cast<std::size_t>(o * per_out + i)] = static_cast<int>(std::clamp(r, -3.0, 3.0));
    }
  }
  q.packed = pack_codes(codes, 3);
  q.bias.assign(static_cast<std::size_t>(q.out_channels), 0);
  return q;
}

QuantWeights quantize_weights(const FloatTensor& w, int bits) {
  if (bits == 1) return quantize_weights_1bit(w);
  if (bits == 3) return quantize_weights_3bit(w);
  throw Error(ErrorCode::code_out_of_range, "weight bits must be 1 or 3, got " + std::to_string(bits));
}

QuantActivations quantize_activations(const FloatTensor& x, float scale) {
  if (!(scale > 0.0f) || !std::isfinite(scale)) {
    throw Error(ErrorCode::non_positive_scale, "activation scale must be positive, got " + std::to_string(scale));
  }
  QuantActivations q;
  q.scale = scale;
  q.codes = CodeTensor(x.shape());
  for (Index i = 0; i < x.size(); ++i) {
    const double r = round_half_away(static_cast<double>(x.values()[i]) / scale);
    q.codes.values()[i] = static_cast<std::uint8_t>(std::clamp(r, 0.0, static_cast<double>(kActivationMax)));
  }
  return q;
}

}  // namespace scnlp
