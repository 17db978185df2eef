// Acceptance gate: one PASS/FAIL line per criterion, each with a wall-clock limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "scnlp/gnetfc.hpp"
#include "scnlp/ink_model.hpp"
#include "scnlp/pipeline.hpp"
#include "support/ink_texts.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"
#include "support/random_text.hpp"

using namespace scnlp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

template <typename F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

double mb(std::size_t bytes) { return static_cast<double>(bytes) / 1e6; }

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[200];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome shape_chain() {
  Outcome r;
  const auto g = build_gnetfc(ArchSpec{});
  const auto plan = plan_shapes(g);
  r.require(g.input_shape == Shape{3, 224, 224}, "input is not 3x224x224");
  r.require(g.conv_count() == 16 && g.layers.size() == 21, "expected 16 convs and 5 pools");
  std::vector<Index> after_pool, major6;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const auto& s = g.layers[i].spec;
    if (s.kind == LayerKind::maxpool2x2) after_pool.push_back(plan.outputs[i][1]);
    if (s.kind == LayerKind::conv3x3 && s.padding == 0) major6.push_back(plan.outputs[i][1]);
    r.require(plan.outputs[i][1] == plan.outputs[i][2], "non-square map");
  }
  r.require(after_pool == std::vector<Index>{112, 56, 28, 14, 7}, "pool chain is not 112/56/28/14/7");
  r.require(major6 == std::vector<Index>{5, 3, 1}, "major 6 is not 5 -> 3 -> 1");
  r.require(plan.outputs.back() == Shape{14, 1, 1}, "output is not 14x1x1");
  r.require(!g.layers.back().spec.relu, "final conv is not linear");
  r.require(validate_graph(g).ok(), "default graph fails validation");
  if (r.ok) r.detail = "224 -> 112 -> 56 -> 28 -> 14 -> 7 -> 5 -> 3 -> 1, output 14x1x1";
  return r;
}

Outcome memory_accounting() {
  Outcome r;
  const auto vgg = memory_report(build_vgg16_conv_stack(), StorageMode::paper);
  const auto gnet = memory_report(build_gnetfc(ArchSpec{}), StorageMode::paper);
  const double vgg_mb = mb(vgg.float_bytes);
  const double gnet_mb = mb(gnet.paper_bytes);
  r.require(std::abs(vgg_mb - 58.9) <= 58.9 * 0.005, fmt("VGG16 conv float32 %.3f MB", vgg_mb));
  r.require(std::abs(gnet_mb - 2.8) <= 2.8 * 0.15, fmt("GnetFC paper-mode %.3f MB", gnet_mb));
  r.require(vgg.paper_ratio() > 10.0, fmt("VGG paper-mode ratio %.2f", vgg.paper_ratio()));
  const std::size_t used = gnet.packed_bytes + gnet.peak_activation_bytes;
  r.require(used <= kChipBudgetBytes, fmt("packed + peak %.3f MB over budget", mb(used)));
  if (r.ok) {
    r.detail = fmt("VGG16 %.3f MB, GnetFC paper %.3f MB, ratio %.1fx", vgg_mb, gnet_mb, vgg.paper_ratio()) +
               fmt(", packed+peak %.2f MiB", static_cast<double>(used) / (1 << 20));
  }
  return r;
}

Outcome integer_oracle() {
  Outcome r;
  std::mt19937 rng(501);
  std::uniform_int_distribution<Index> ch(1, 8), side(1, 12);
  std::uniform_int_distribution<int> coin(0, 1);
  int instances = 0;
  for (; instances < 500 && r.ok; ++instances) {
    const int pad = coin(rng);
    Index h = side(rng), w = side(rng);
    if (!pad) {
      h = std::max<Index>(h, 3);
      w = std::max<Index>(w, 3);
    }
    const auto x = oracle::random_activations(rng, ch(rng), h, w);
    const auto q = oracle::random_quant_weights(rng, ch(rng), x.codes.dim(0), coin(rng) ? 3 : 1);
    const bool relu = coin(rng);
    const float out_scale = std::uniform_real_distribution<float>(0.05f, 2.0f)(rng);
    const auto y = conv3x3_int(x, q, pad, relu, out_scale);
    const auto expect = oracle::conv_int(x, q, pad, relu, out_scale);
    r.require(std::vector<std::uint8_t>(y.codes.data(), y.codes.data() + y.codes.size()) == expect,
              "conv3x3_int differs from the oracle on instance " + std::to_string(instances));
  }

  // Exhaustive over H, W in 1..16.
  for (Index h = 1; h <= 16 && r.ok; ++h) {
    for (Index w = 1; w <= 16 && r.ok; ++w) {
      const auto x = oracle::random_activations(rng, 2, h, w);
      for (int pad : {0, 1}) {
        const Index oh = h + 2 * pad - 2, ow = w + 2 * pad - 2;
        const auto q = oracle::random_quant_weights(rng, 3, 2, 1);
        if (oh >= 1 && ow >= 1) {
          r.require(conv3x3_int(x, q, pad, true, 1.0f).shape() == Shape{3, oh, ow}, "conv shape law");
        } else {
          r.require(error_of([&] { conv3x3_int(x, q, pad, true, 1.0f); }) == ErrorCode::shape_mismatch,
                    "collapsed conv not rejected");
        }
      }
      if (h % 2 || w % 2) {
        r.require(error_of([&] { maxpool2x2(x); }) == ErrorCode::odd_spatial_dim, "odd pool not rejected");
        continue;
      }
      const auto p = maxpool2x2(x);
      r.require(p.shape() == Shape{2, h / 2, w / 2}, "pool shape law");
      r.require(p.dequantize() == maxpool2x2(x.dequantize()), "pool does not commute with dequantization");
      for (Index c = 0; c < 2; ++c) {
        for (Index y = 0; y < h / 2; ++y) {
          for (Index xx = 0; xx < w / 2; ++xx) {
            const auto m = std::max({x.codes(c, 2 * y, 2 * xx), x.codes(c, 2 * y, 2 * xx + 1),
                                     x.codes(c, 2 * y + 1, 2 * xx), x.codes(c, 2 * y + 1, 2 * xx + 1)});
            r.require(p.codes(c, y, xx) == m, "pool element is not the block max");
          }
        }
      }
    }
  }
  if (r.ok) r.detail = "500 conv instances bit-exact; shape/pool laws for all H,W <= 16";
  return r;
}

Outcome fc_equivalence() {
  Outcome r;
  std::mt19937 rng(502);
  std::uniform_int_distribution<Index> dim(1, 8);
  const Index ks[] = {1, 3, 5, 7};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = dim(rng), c = dim(rng), k = ks[trial % 4];
    const auto fc = oracle::random_tensor(rng, Shape{d, c * k * k});
    const auto x = oracle::random_tensor(rng, Shape{c, k, k});
    const auto kernels = fc_as_single_conv(fc, k, c);
    const Eigen::VectorXd direct =
        Eigen::Map<const RowMatrix<float>>(fc.data(), d, c * k * k).cast<double>() * x.values().cast<double>();
    Eigen::VectorXd conv(d);
    if (k == 3) {
      const auto y = conv3x3_float(x, kernels, {}, 0, false);
      conv = y.values().cast<double>();
    } else {
      for (Index o = 0; o < d; ++o) {
        double s = 0.0;
        for (Index ci = 0; ci < c; ++ci) {
          for (Index ky = 0; ky < k; ++ky) {
            for (Index kx = 0; kx < k; ++kx) s += static_cast<double>(kernels(o, ci, ky, kx)) * x(ci, ky, kx);
          }
        }
        conv[o] = s;
      }
    }
    const double rel = (direct - conv).cwiseAbs().maxCoeff() / std::max(direct.cwiseAbs().maxCoeff(), 1e-30);
    worst = std::max(worst, rel);
  }
  r.require(worst <= 1e-6, fmt("max relative error %.3g", worst));
  if (r.ok) r.detail = fmt("100 instances, max relative error %.2g", worst);
  return r;
}

bool round_trips(const std::vector<int>& v, int bits) {
  return unpack_codes(pack_codes(v, bits), v.size(), bits) == v;
}

Outcome quantization() {
  Outcome r;
  // Exhaustive: every 1-bit vector up to 16 codes, every 3-bit vector up to 6,
  // every 5-bit vector up to 4.
  struct Alphabet {
    int bits;
    std::vector<int> codes;
    std::size_t max_len;
  };
  std::vector<int> five(32);
  for (int i = 0; i < 32; ++i) five[static_cast<std::size_t>(i)] = i;
  const Alphabet alphabets[] = {{1, {-1, 1}, 16}, {3, {-3, -2, -1, 0, 1, 2, 3}, 6}, {5, five, 4}};
  std::size_t vectors = 0;
  for (const auto& a : alphabets) {
    for (std::size_t len = 0; len <= a.max_len && r.ok; ++len) {
      std::vector<std::size_t> digit(len, 0);
      std::vector<int> v(len);
      for (;;) {
        for (std::size_t i = 0; i < len; ++i) v[i] = a.codes[digit[i]];
        ++vectors;
        if (!round_trips(v, a.bits)) {
          r.require(false, "unpack(pack(x)) != x for " + std::to_string(a.bits) + "-bit codes");
          break;
        }
        std::size_t i = 0;
        while (i < len && ++digit[i] == a.codes.size()) digit[i++] = 0;
        if (i == len) break;
      }
    }
  }
  // Every byte is a valid 1-bit stream, so packing is onto as well.
  for (int b = 0; b < 256; ++b) {
    const std::vector<std::uint8_t> byte{static_cast<std::uint8_t>(b)};
    r.require(pack_codes(unpack_codes(byte, 8, 1), 1) == byte, "1-bit byte stream not reproduced");
  }
  std::mt19937 rng(503);
  for (int bits : {1, 3, 5}) {
    std::uniform_int_distribution<int> code(bits == 5 ? 0 : -3, bits == 5 ? 31 : 3);
    std::vector<int> v(100000);
    for (auto& c : v) c = bits == 1 ? (code(rng) >= 0 ? 1 : -1) : code(rng);
    r.require(round_trips(v, bits), "random 1e5-element round trip failed");
  }

  // 3-bit weights and 5-bit activations: error <= step / 2.
  for (int trial = 0; trial < 200 && r.ok; ++trial) {
    const auto w = oracle::random_tensor(rng, Shape{4, 3, 3, 3}, -2.0f, 2.0f);
    const auto q = quantize_weights_3bit(w);
    const auto deq = q.dequantize();
    for (Index i = 0; i < w.size(); ++i) {
      const double step = q.scales[static_cast<std::size_t>(i / 27)];
      r.require(std::abs(static_cast<double>(deq.values()[i]) - w.values()[i]) <= step / 2 * (1 + 1e-6),
                "3-bit error above step/2");
    }
    const float s = std::uniform_real_distribution<float>(0.01f, 3.0f)(rng);
    const auto x = oracle::random_tensor(rng, Shape{2, 6, 6}, 0.0f, 31.5f * s);
    const auto dx = quantize_activations(x, s).dequantize();
    r.require((dx.values() - x.values()).cwiseAbs().maxCoeff() <= s / 2 * (1 + 1e-5), "5-bit error above step/2");
  }

  // 1-bit: the chosen signs minimise the L2 error among all 2^18 patterns of each channel.
  for (int trial = 0; trial < 4 && r.ok; ++trial) {
    const auto w = oracle::random_tensor(rng, Shape{2, 2, 3, 3});
    const auto q = quantize_weights_1bit(w);
    const auto deq = q.dequantize();
    for (Index o = 0; o < 2; ++o) {
      const Eigen::VectorXd block = w.values().segment(o * 18, 18).cast<double>();
      const double alpha = block.cwiseAbs().mean();
      double best = 1e300;
      for (std::uint32_t pattern = 0; pattern < (1u << 18); ++pattern) {
        double e = 0.0;
        for (int i = 0; i < 18; ++i) {
          const double v = ((pattern >> i) & 1u) ? alpha : -alpha;
          e += (v - block[i]) * (v - block[i]);
        }
        best = std::min(best, e);
      }
      const double ours = (deq.values().segment(o * 18, 18).cast<double>() - block).squaredNorm();
      r.require(ours <= best * (1 + 1e-5) + 1e-12, "1-bit signs are not L2-optimal");
    }
  }
  if (r.ok) r.detail = std::to_string(vectors) + " exhaustive vectors, 3x1e5 random codes, error and optimality checks";
  return r;
}

Outcome sew_layout() {
  Outcome r;
  r.require(ceil_sqrt(1) == 1 && ceil_sqrt(5) == 3 && ceil_sqrt(10) == 4, "k formula");
  const CanvasSpec spec;
  for (auto [word, k, side] : {std::tuple{"a", 1, 28}, {"hello", 3, 9}, {"abcdefghij", 4, 7}}) {
    const auto plan = layout(tokenize(word, EmbedMode::sew), spec, EmbedMode::sew);
    r.require(plan.tokens.size() == 1 && plan.tokens[0].subgrid == k && plan.tokens[0].letter_side == side,
              std::string("layout of '") + word + "'");
  }
  std::mt19937 rng(504);
  for (int t = 0; t < 1000 && r.ok; ++t) {
    const std::string text = test_support::random_text(rng);
    const auto tokens = tokenize(text, EmbedMode::sew);
    const auto plan = layout(tokens, spec, EmbedMode::sew);
    std::vector<Rect> rects;
    for (const auto& tok : plan.tokens) {
      const Rect cell = tok.cell(spec);
      for (const auto& l : tok.letters) {
        r.require(cell.contains(l.rect), "letter outside its cell");
        rects.push_back(l.rect);
      }
    }
    for (std::size_t i = 0; i < rects.size(); ++i) {
      for (std::size_t j = i + 1; j < rects.size(); ++j) r.require(!rects[i].intersects(rects[j]), "overlapping letters");
    }
    std::vector<std::string> expect;
    for (std::size_t i = 0; i < plan.tokens.size(); ++i) expect.push_back(tokens[i].text);
    r.require(recover_tokens(plan) == expect, "tokens not recoverable from the plan");
    r.require(plan.truncated == (tokens.size() > 64), "truncation flag");
    if (t % 10 == 0) {
      const auto a = export_image(render(plan, spec, embedded_font()), ImageFormat::pgm);
      const auto b = export_image(render(plan, spec, embedded_font()), ImageFormat::pgm);
      r.require(a == b, "double render differs");
    }
  }
  if (r.ok) r.detail = "k(1,5,10) = 1,3,4; 1000 texts disjoint and recoverable; renders byte-identical";
  return r;
}

Outcome end_to_end() {
  Outcome r;
  const Model model = ink_balance_model();
  const BitmapFont font = dotless_font();
  const Classifier clf(model, ClassifierConfig{EmbedMode::sew, CanvasSpec{}, &font});
  std::mt19937 rng(505);
  int correct = 0;
  for (int i = 0; i < 50; ++i) {
    const auto [text, label] = test_support::ink_text(rng, i % 2);
    const auto a = clf.classify(text);
    const auto b = clf.classify(text);
    correct += a.index == static_cast<std::size_t>(label);
    r.require(a.scores == b.scores && a.index == b.index, "scores differ across runs");
  }
  r.require(correct == 50, "accuracy " + std::to_string(correct) + "/50");
  if (r.ok) r.detail = "50/50 correct, repeat runs identical";
  return r;
}

Outcome preprocess_latency() {
  Outcome r;
  std::string sentence;
  std::mt19937 rng(506);
  while (sentence.size() < 200) sentence += test_support::random_word(rng) + " ";
  sentence.resize(200);
  const CanvasSpec spec;
  std::vector<double> ms;
  for (int i = 0; i < 51; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto img = render_text(sentence, spec, embedded_font(), EmbedMode::sew);
    const auto t1 = std::chrono::steady_clock::now();
    r.require(img.side == 224, "wrong canvas size");
    ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(ms.begin(), ms.end());
  const double median = ms[ms.size() / 2];
  r.require(median < 10.0, fmt("median %.3f ms", median));
  if (r.ok) r.detail = fmt("200 chars -> 224x224, median %.3f ms (max %.3f ms)", median, ms.back());
  return r;
}

Outcome model_format() {
  Outcome r;
  const Model m = test_support::calibrated_model(test_support::tiny_arch(4), {"w", "x", "y", "z"}, 507, 2);
  const std::string bytes = serialize_model(m);
  const Model back = deserialize_model(bytes);
  r.require(serialize_model(back) == bytes, "re-serialization differs");
  std::mt19937 rng(507);
  for (int i = 0; i < 3; ++i) {
    const auto x =
        render_text(test_support::random_text(rng), CanvasSpec{}, embedded_font(), EmbedMode::sew).to_tensor();
    r.require(run(back.graph, x, ExecMode::integer).output == run(m.graph, x, ExecMode::integer).output,
              "loaded model infers differently");
  }
  int rejected = 0, flips = 0;
  for (std::size_t at = 12; at + 4 < bytes.size(); at += 13, ++flips) {
    std::string bad = bytes;
    bad[at] = static_cast<char>(bad[at] ^ 0x01);
    rejected += error_of([&] { deserialize_model(bad); }) == ErrorCode::checksum_mismatch;
  }
  r.require(rejected == flips, "corruption not detected");
  if (r.ok) r.detail = "bit-identical inference after reload; " + std::to_string(flips) + " corruptions rejected";
  return r;
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<Outcome()> check;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"shape-chain", 1.0, shape_chain},
      {"memory-accounting", 1.0, memory_accounting},
      {"integer-engine-oracle", 30.0, integer_oracle},
      {"fc-conv-equivalence", 10.0, fc_equivalence},
      {"quantization-properties", 30.0, quantization},
      {"sew-layout", 30.0, sew_layout},
      {"end-to-end-ink-model", 10.0, end_to_end},
      {"preprocess-latency", 10.0, preprocess_latency},
      {"model-format", 5.0, model_format},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.limit_s;
    if (!in_time && o.ok) o.detail = fmt("took %.2f s, limit %.0f s", s, c.limit_s);
    const bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("%s  %-24s %7.3fs  %s\n", pass ? "PASS" : "FAIL", c.name, s, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
