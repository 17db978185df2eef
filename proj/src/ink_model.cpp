#include "scnlp/ink_model.hpp"

namespace scnlp {

namespace {

// Taps are (out, in, ky, kx, code); every other code is 0, every scale 1.
struct Tap {
  Index o, i, ky, kx;
  int code;
};

Layer fixed_conv(Index in, Index out, int padding, bool relu, float out_scale, std::initializer_list<Tap> taps) {
  Layer layer = Layer::conv(in, out, padding, 3, relu);
  layer.spec.out_act_scale = out_scale;
  std::vector<int> codes(static_cast<std::size_t>(out * in * 9), 0);
  for (const Tap& t : taps) codes[static_cast<std::size_t>(((t.o * in + t.i) * 3 + t.ky) * 3 + t.kx)] = t.code;
  QuantWeights q;
  q.bits = 3;
  q.out_channels = out;
  q.in_channels = in;
  q.packed = pack_codes(codes, 3);
  q.scales.assign(static_cast<std::size_t>(out), 1.0f);
  q.bias.assign(static_cast<std::size_t>(out), 0);
  layer.quantized = std::move(q);
  return layer;
}

}  // namespace

Model ink_balance_model() {
  constexpr float unit = 255.0f;
  Model m;
  m.labels = {"left", "right"};
  NetworkGraph& g = m.graph;
  g.input_shape = Shape{3, 224, 224};
  g.input_act_scale = unit / kActivationMax;

  g.layers.push_back(fixed_conv(3, 1, 1, true, unit, {{0, 0, 1, 1, 1}}));
  for (int i = 0; i < 5; ++i) g.layers.push_back(Layer::pool(1));

  // 7x7 -> 5x5: channel 0 sums a 3x3 window, channel 1 only its bottom row.
  g.layers.push_back(fixed_conv(1, 2, 0, true, unit,
                                {{0, 0, 0, 0, 1}, {0, 0, 0, 1, 1}, {0, 0, 0, 2, 1},
                                 {0, 0, 1, 0, 1}, {0, 0, 1, 1, 1}, {0, 0, 1, 2, 1},
                                 {0, 0, 2, 0, 1}, {0, 0, 2, 1, 1}, {0, 0, 2, 2, 1},
                                 {1, 0, 2, 0, 1}, {1, 0, 2, 1, 1}, {1, 0, 2, 2, 1}}));

  // 5x5 -> 3x3: rows 0-2 and rows 3-6 of the left and right column bands.
  g.layers.push_back(fixed_conv(2, 4, 0, true, unit,
                                {{0, 0, 0, 0, 1},
                                 {1, 0, 1, 0, 1}, {1, 1, 2, 0, 1},
                                 {2, 0, 0, 2, 1},
                                 {3, 0, 1, 2, 1}, {3, 1, 2, 2, 1}}));

  // 3x3 -> 1x1, linear.
  g.layers.push_back(fixed_conv(4, 2, 0, false, unit,
                                {{0, 0, 0, 0, 1}, {0, 1, 2, 0, 1}, {0, 2, 0, 2, -1}, {0, 3, 2, 2, -1},
                                 {1, 0, 0, 0, -1}, {1, 1, 2, 0, -1}, {1, 2, 0, 2, 1}, {1, 3, 2, 2, 1}}));
  return m;
}

BitmapFont dotless_font() {
  BitmapFont font = embedded_font();
  BitmapGlyph& dot = font.glyphs.at(U'.');
  dot.rows.setZero();
  return font;
}

}  // namespace scnlp
