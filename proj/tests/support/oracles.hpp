#pragma once

// Naive reference implementations. Nothing here calls into the engine; the
// weight bit stream is decoded by hand.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "scnlp/engine.hpp"
#include "scnlp/qtensor.hpp"

namespace oracle {

using scnlp::Index;

inline int decode_code(const std::vector<std::uint8_t>& bytes, std::size_t i, int bits) {
  unsigned v = 0;
  for (int b = 0; b < bits; ++b) {
    const std::size_t bit = i * static_cast<std::size_t>(bits) + static_cast<std::size_t>(b);
    if ((bytes[bit / 8] >> (bit % 8)) & 1u) v |= 1u << b;
  }
  if (bits == 1) return v ? 1 : -1;
  if (bits == 3) return v >= 4 ? static_cast<int>(v) - 8 : static_cast<int>(v);
  return static_cast<int>(v);
}

inline double round_away(double v) { return v < 0 ? -std::floor(-v + 0.5) : std::floor(v + 0.5); }

/// Raw accumulators, int64, quadruple loop over (o, y, x) x (i, ky, kx).
inline std::vector<std::int64_t> conv_acc(const scnlp::QuantActivations& x, const scnlp::QuantWeights& w, int pad,
                                          Index& oh, Index& ow) {
  const Index cin = x.codes.dim(0), h = x.codes.dim(1), wd = x.codes.dim(2);
  oh = h + 2 * pad - 2;
  ow = wd + 2 * pad - 2;
  std::vector<std::int64_t> out;
  for (Index o = 0; o < w.out_channels; ++o) {
    for (Index y = 0; y < oh; ++y) {
      for (Index xx = 0; xx < ow; ++xx) {
        std::int64_t acc = w.bias.empty() ? 0 : w.bias[static_cast<std::size_t>(o)];
        for (Index i = 0; i < cin; ++i) {
          for (Index ky = 0; ky < 3; ++ky) {
            for (Index kx = 0; kx < 3; ++kx) {
              const Index sy = y + ky - pad, sx = xx + kx - pad;
              if (sy < 0 || sx < 0 || sy >= h || sx >= wd) continue;
              const auto idx = static_cast<std::size_t>(((o * cin + i) * 3 + ky) * 3 + kx);
              acc += static_cast<std::int64_t>(x.codes(i, sy, sx)) * decode_code(w.packed, idx, w.bits);
            }
          }
        }
        out.push_back(acc);
      }
    }
  }
  return out;
}

inline std::vector<std::uint8_t> conv_int(const scnlp::QuantActivations& x, const scnlp::QuantWeights& w, int pad,
                                          bool relu, float out_scale) {
  Index oh = 0, ow = 0;
  const auto acc = conv_acc(x, w, pad, oh, ow);
  std::vector<std::uint8_t> codes;
  for (std::size_t n = 0; n < acc.size(); ++n) {
    const auto o = static_cast<std::size_t>(static_cast<Index>(n) / (oh * ow));
    double r = static_cast<double>(acc[n]) * x.scale * w.scales[o];
    if (relu && r < 0) r = 0;
    const double c = round_away(r / out_scale);
    codes.push_back(static_cast<std::uint8_t>(c < 0 ? 0 : (c > 31 ? 31 : c)));
  }
  return codes;
}

/// Direct summation cross-correlation in long double.
inline std::vector<double> conv_float(const scnlp::FloatTensor& x, const scnlp::FloatTensor& w,
                                      const std::vector<float>& bias, int pad, bool relu) {
  const Index cin = x.dim(0), h = x.dim(1), wd = x.dim(2), cout = w.dim(0);
  const Index oh = h + 2 * pad - 2, ow = wd + 2 * pad - 2;
  std::vector<double> out;
  for (Index o = 0; o < cout; ++o) {
    for (Index y = 0; y < oh; ++y) {
      for (Index xx = 0; xx < ow; ++xx) {
        long double s = bias.empty() ? 0.0L : bias[static_cast<std::size_t>(o)];
        for (Index i = 0; i < cin; ++i) {
          for (Index ky = 0; ky < 3; ++ky) {
            for (Index kx = 0; kx < 3; ++kx) {
              const Index sy = y + ky - pad, sx = xx + kx - pad;
              if (sy < 0 || sx < 0 || sy >= h || sx >= wd) continue;
              s += static_cast<long double>(x(i, sy, sx)) * w(o, i, ky, kx);
            }
          }
        }
        double v = static_cast<double>(s);
        if (relu && v < 0) v = 0;
        out.push_back(v);
      }
    }
  }
  return out;
}

/// Random quantized weights built from random codes (not from float weights).
inline scnlp::QuantWeights random_quant_weights(std::mt19937& rng, Index cout, Index cin, int bits,
                                                bool with_bias = true) {
  scnlp::QuantWeights q;
  q.bits = bits;
  q.out_channels = cout;
  q.in_channels = cin;
  std::vector<int> codes(static_cast<std::size_t>(cout * cin * 9));
  std::uniform_int_distribution<int> c3(-3, 3), c1(0, 1);
  for (auto& c : codes) c = bits == 1 ? (c1(rng) ? 1 : -1) : c3(rng);
  q.packed = scnlp::pack_codes(codes, bits);
  std::uniform_real_distribution<float> sd(0.01f, 0.5f);
  std::uniform_int_distribution<int> bd(-200, 200);
  for (Index o = 0; o < cout; ++o) {
    q.scales.push_back(sd(rng));
    q.bias.push_back(with_bias ? bd(rng) : 0);
  }
  return q;
}

inline scnlp::QuantActivations random_activations(std::mt19937& rng, Index c, Index h, Index w) {
  scnlp::QuantActivations a;
  a.codes = scnlp::CodeTensor(scnlp::Shape{c, h, w});
  std::uniform_int_distribution<int> d(0, 31);
  for (Index i = 0; i < a.codes.size(); ++i) a.codes.values()[i] = static_cast<std::uint8_t>(d(rng));
  a.scale = std::uniform_real_distribution<float>(0.02f, 0.3f)(rng);
  return a;
}

inline scnlp::FloatTensor random_tensor(std::mt19937& rng, scnlp::Shape shape, float lo = -1.0f, float hi = 1.0f) {
  scnlp::FloatTensor t(std::move(shape));
  std::uniform_real_distribution<float> d(lo, hi);
  for (Index i = 0; i < t.size(); ++i) t.values()[i] = d(rng);
  return t;
}

}  // namespace oracle
