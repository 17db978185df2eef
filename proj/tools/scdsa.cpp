// scdsa: Super-Characters text classification on a 3x3-conv-only engine.
//
// Exit status: 0 ok, 1 usage, 2 data error, 3 model error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "scnlp/gnetfc.hpp"
#include "scnlp/ink_model.hpp"
#include "scnlp/pipeline.hpp"

using namespace scnlp;

namespace {

enum Exit { ok = 0, usage = 1, data = 2, model_error = 3 };

struct Failure {
  Exit status;
  std::string message;
};

[[noreturn]] void fail(Exit status, const std::string& message) { throw Failure{status, message}; }

// Runs f, turning library errors into a fixed exit status.
template <typename F>
auto guarded(Exit status, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    fail(status, e.what());
  }
}

struct RenderOptions {
  std::string mode = "sew";
  std::string font;
  Index canvas = 224;
  std::string grid = "8x8";
};

void add_render_options(CLI::App* cmd, RenderOptions& o) {
  cmd->add_option("--mode", o.mode, "Embedding: sew (one square per word) or cjk (one per character)")
      ->check(CLI::IsMember({"sew", "cjk"}))
      ->capture_default_str();
  cmd->add_option("--font", o.font, "BDF font file (default: embedded 8x8 font)")->check(CLI::ExistingFile);
  cmd->add_option("--canvas", o.canvas, "Canvas side in pixels")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--grid", o.grid, "Word grid, RxC or N")->capture_default_str();
}

CanvasSpec canvas_of(const RenderOptions& o) {
  Index rows = 0, cols = 0;
  char x = 0;
  std::istringstream in(o.grid);
  if (!(in >> rows)) fail(usage, "--grid: expected RxC or N, got '" + o.grid + "'");
  cols = rows;
  if (in >> x) {
    if ((x != 'x' && x != 'X') || !(in >> cols)) fail(usage, "--grid: expected RxC or N, got '" + o.grid + "'");
  }
  if (!in.eof() && in.peek() != EOF) fail(usage, "--grid: trailing characters in '" + o.grid + "'");
  CanvasSpec spec = CanvasSpec::square(o.canvas, std::max(rows, cols));
  spec.grid_rows = rows;
  spec.grid_cols = cols;
  guarded(usage, [&] { spec.validate(); });
  return spec;
}

struct Session {
  Model model;
  BitmapFont font;
  std::unique_ptr<Classifier> classifier;
};

BitmapFont font_of(const RenderOptions& o) {
  if (o.font.empty()) return embedded_font();
  return guarded(data, [&] { return parse_bdf(read_file(o.font)); });
}

std::unique_ptr<Session> open_session(const std::string& model_path, const RenderOptions& o) {
  auto s = std::make_unique<Session>();
  const CanvasSpec canvas = canvas_of(o);
  s->font = font_of(o);
  s->model = guarded(model_error, [&] { return load_model(model_path); });
  s->classifier = guarded(model_error, [&] {
    return std::make_unique<Classifier>(s->model, ClassifierConfig{parse_embed_mode(o.mode), canvas, &s->font});
  });
  return s;
}

std::vector<std::string> labels_of(const std::string& which, Index classes) {
  std::vector<std::string> labels;
  if (which == "dbpedia") {
    labels = dbpedia_labels();
  } else if (which == "jd") {
    labels = jd_labels();
  } else if (!which.empty()) {
    std::istringstream in(guarded(data, [&] { return read_file(which); }));
    for (std::string line; std::getline(in, line);) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) labels.push_back(line);
    }
  } else {
    for (Index i = 0; i < classes; ++i) labels.push_back("class" + std::to_string(i));
  }
  if (static_cast<Index>(labels.size()) != classes) {
    fail(usage, std::to_string(labels.size()) + " labels for " + std::to_string(classes) + " classes");
  }
  return labels;
}

ArchSpec arch_of(const std::string& path) {
  if (path.empty()) return ArchSpec{};
  return guarded(usage, [&] {
    ArchSpec a = ArchSpec::from_config(read_file(path));
    a.validate();
    return a;
  });
}

std::vector<std::string> calibration_texts(const std::string& csv_path, std::size_t n) {
  std::vector<std::string> texts;
  if (!csv_path.empty()) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) fail(data, "cannot open " + csv_path);
    CsvReader reader(in);
    std::vector<std::string> f;
    guarded(data, [&] {
      while (texts.size() < n && reader.next(f)) {
        if (f.size() == 3) texts.push_back(f[1] + " " + f[2]);
      }
    });
  }
  if (texts.empty()) {
    texts = {"The quick brown fox jumps over the lazy dog.",
             "Abbott Laboratories is an American health care company founded in 1888.",
             "Mount Everest is Earth's highest mountain above sea level.",
             "A symphony orchestra performs classical music on stage every night.",
             "Kittens sleep most of the day and play at dusk.",
             "Paris is the capital and most populous city of France."};
    if (texts.size() > n) texts.resize(n);
  }
  return texts;
}

void print_memory(const MemoryReport& r, const NetworkGraph& g, bool json) {
  if (json) {
    nlohmann::ordered_json j;
    j["storage_mode"] = r.mode == StorageMode::packed ? "packed" : "paper";
    j["coefficients"] = r.coefficients;
    j["float_bytes"] = r.float_bytes;
    j["packed_bytes"] = r.packed_bytes;
    j["paper_bytes"] = r.paper_bytes;
    j["model_bytes"] = r.model_bytes();
    j["peak_activation_bytes"] = r.peak_activation_bytes;
    j["budget_bytes"] = r.budget_bytes;
    j["packed_ratio"] = r.packed_ratio();
    j["paper_ratio"] = r.paper_ratio();
    j["fits_budget"] = r.fits_budget();
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (const auto& l : r.layers) {
      layers.push_back({{"layer", l.layer},
                        {"coefficients", l.coefficients},
                        {"bits", l.bits},
                        {"float_bytes", l.float_bytes},
                        {"packed_bytes", l.packed_bytes},
                        {"paper_bytes", l.paper_bytes}});
    }
    j["layers"] = layers;
    std::cout << j.dump(2) << "\n";
    return;
  }
  const auto shapes = plan_shapes(g).outputs;
  std::printf("%5s  %-10s %-16s %11s %4s %12s %11s %11s\n", "layer", "kind", "output", "coeffs", "bits", "float32",
              "packed", "paper");
  std::size_t next = 0;
  for (std::size_t i = 0; i < g.layers.size(); ++i) {
    const std::string out = i < shapes.size() ? shapes[i].str() : "?";
    if (next < r.layers.size() && r.layers[next].layer == i) {
      const auto& l = r.layers[next++];
      std::printf("%5zu  %-10s %-16s %11lld %4d %12zu %11zu %11zu\n", i, to_string(g.layers[i].spec.kind),
                  out.c_str(), static_cast<long long>(l.coefficients), l.bits, l.float_bytes, l.packed_bytes,
                  l.paper_bytes);
    } else {
      std::printf("%5zu  %-10s %-16s\n", i, to_string(g.layers[i].spec.kind), out.c_str());
    }
  }
  std::printf("\ncoefficients        %lld\n", static_cast<long long>(r.coefficients));
  std::printf("float32             %.3f MB\n", static_cast<double>(r.float_bytes) / 1e6);
  std::printf("packed              %.3f MB  (%.1fx)\n", static_cast<double>(r.packed_bytes) / 1e6, r.packed_ratio());
  std::printf("paper-mode          %.3f MB  (%.1fx)\n", static_cast<double>(r.paper_bytes) / 1e6, r.paper_ratio());
  std::printf("peak activations    %.3f MB\n", static_cast<double>(r.peak_activation_bytes) / 1e6);
  std::printf("on-chip (packed)    %.3f MiB of %.0f MiB: %s\n",
              static_cast<double>(r.packed_bytes + r.peak_activation_bytes) / (1 << 20),
              static_cast<double>(r.budget_bytes) / (1 << 20), r.fits_budget() ? "fits" : "over budget");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Super-Characters text classification with a 3x3-conv-only quantized engine"};
  app.require_subcommand(1);

  RenderOptions render_opts;
  std::string model_path, text, data_path, out_path, arch_path, labels_arg, storage = "packed", calib_path, name;
  std::optional<std::size_t> limit;
  bool json = false, title_only = false, vgg16 = false;
  std::uint64_t seed = 1;
  std::size_t calib_n = 6, budget = kChipBudgetBytes;

  auto* classify = app.add_subcommand("classify", "Classify one text");
  classify->add_option("--model", model_path, "Model file")->required();
  classify->add_option("text", text, "Text to classify")->required();
  classify->add_flag("--json", json, "JSON output");
  add_render_options(classify, render_opts);

  auto* eval = app.add_subcommand("eval", "Evaluate on a CSV of class,title,body rows (class is 1-based)");
  eval->add_option("--model", model_path, "Model file")->required();
  eval->add_option("--data", data_path, "CSV file")->required();
  eval->add_option("--limit", limit, "Classify at most N rows");
  eval->add_option("--name", name, "Dataset name for the report");
  eval->add_flag("--title-only", title_only, "Classify the title field only");
  eval->add_flag("--json", json, "JSON report");
  add_render_options(eval, render_opts);

  auto* repl_cmd = app.add_subcommand("repl", "Classify lines from stdin (:quit, :dump <path>)");
  repl_cmd->add_option("--model", model_path, "Model file")->required();
  add_render_options(repl_cmd, render_opts);

  auto* render_cmd = app.add_subcommand("render", "Render a text to a Super-Characters image");
  render_cmd->add_option("--out", out_path, "Output image (.pgm or .png)")->required();
  render_cmd->add_option("text", text, "Text to render")->required();
  add_render_options(render_cmd, render_opts);

  auto* report = app.add_subcommand("report", "Coefficient memory report");
  auto* report_src = report->add_option_group("source");
  report_src->add_option("--model", model_path, "Model file");
  report_src->add_option("--arch", arch_path, "ArchSpec key=value file");
  report_src->add_flag("--vgg16", vgg16, "VGG16 convolution stack");
  report_src->require_option(0, 1);
  report->add_option("--storage", storage, "Headline storage model")
      ->check(CLI::IsMember({"packed", "paper"}))
      ->capture_default_str();
  report->add_flag("--json", json, "JSON output");

  auto* validate = app.add_subcommand("validate", "Check a model against the chip constraints");
  auto* validate_src = validate->add_option_group("source");
  validate_src->add_option("--model", model_path, "Model file");
  validate_src->add_option("--arch", arch_path, "ArchSpec key=value file");
  validate_src->require_option(1);
  validate->add_option("--budget", budget, "On-chip budget in bytes")->capture_default_str();

  auto* init = app.add_subcommand("init", "Write a random-weight, calibrated GnetFC model");
  init->add_option("--out", out_path, "Output model file")->required();
  init->add_option("--arch", arch_path, "ArchSpec key=value file (default architecture otherwise)");
  init->add_option("--labels", labels_arg, "dbpedia, jd, or a file with one label per line");
  init->add_option("--seed", seed, "Weight seed")->capture_default_str();
  init->add_option("--calib-data", calib_path, "CSV whose texts are used for calibration");
  init->add_option("--calib-count", calib_n, "Calibration texts")->check(CLI::PositiveNumber)->capture_default_str();
  add_render_options(init, render_opts);

  auto* ink = app.add_subcommand("ink-model", "Write the hand-weighted left/right ink-balance model");
  ink->add_option("--out", out_path, "Output model file")->required();
  std::string font_out;
  ink->add_option("--font-out", font_out, "Also write the matching dotless BDF font");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  if (*classify) {
    const auto s = open_session(model_path, render_opts);
    const auto c = guarded(data, [&] { return s->classifier->classify(text); });
    if (json) {
      nlohmann::ordered_json j;
      j["label"] = c.label;
      j["index"] = c.index;
      j["scores"] = c.scores;
      j["timings_ms"] = {{"preprocess", c.timings.preprocess_ms},
                         {"inference", c.timings.inference_ms},
                         {"postprocess", c.timings.postprocess_ms},
                         {"total", c.timings.total_ms}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << format_result(c) << "\n";
    }
    return ok;
  }
  if (*eval) {
    const auto s = open_session(model_path, render_opts);
    EvalOptions opts{name.empty() ? data_path : name, limit, title_only};
    const auto r = guarded(data, [&] { return evaluate(data_path, *s->classifier, opts); });
    std::cout << (json ? r.to_json() + "\n" : r.to_text());
    return ok;
  }
  if (*repl_cmd) {
    const auto s = open_session(model_path, render_opts);
    return repl(*s->classifier, std::cin, std::cout) == 0 ? ok : data;
  }
  if (*render_cmd) {
    const CanvasSpec canvas = canvas_of(render_opts);
    const BitmapFont font = font_of(render_opts);
    const auto dot = out_path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : out_path.substr(dot + 1);
    const ImageFormat format = guarded(usage, [&] { return parse_image_format(ext); });
    const auto img = render_text(text, canvas, font, parse_embed_mode(render_opts.mode));
    guarded(data, [&] { write_file(out_path, export_image(img, format)); });
    return ok;
  }
  if (*report) {
    NetworkGraph g;
    if (!model_path.empty()) {
      g = guarded(model_error, [&] { return load_model(model_path); }).graph;
    } else if (vgg16) {
      g = build_vgg16_conv_stack();
    } else {
      g = build_gnetfc(arch_of(arch_path));
    }
    print_memory(memory_report(g, parse_storage_mode(storage)), g, json);
    return ok;
  }
  if (*validate) {
    const NetworkGraph g = model_path.empty() ? build_gnetfc(arch_of(arch_path))
                                              : guarded(model_error, [&] { return load_model(model_path); }).graph;
    const auto r = validate_graph(g, budget);
    std::printf("coefficients %zu B + peak activations %zu B = %zu B of %zu B\n", r.coefficient_bytes,
                r.peak_activation_bytes, r.coefficient_bytes + r.peak_activation_bytes, r.budget_bytes);
    if (r.ok()) {
      std::printf("valid, output %s\n", r.output_shape.str().c_str());
      return ok;
    }
    for (const auto& v : r.violations) {
      const std::string where = v.layer ? "layer " + std::to_string(*v.layer) : "graph";
      std::printf("%s: %s: %s\n", to_string(v.kind), where.c_str(), v.message.c_str());
    }
    return model_error;
  }
  if (*init) {
    const ArchSpec arch = arch_of(arch_path);
    if (arch.input_side != render_opts.canvas || arch.input_channels != 3) {
      fail(usage, "architecture input " + std::to_string(arch.input_side) + " does not match --canvas " +
                      std::to_string(render_opts.canvas));
    }
    Model m;
    m.arch = arch;
    m.labels = labels_of(labels_arg, arch.num_classes);
    m.graph = build_gnetfc(arch);
    init_weights(m.graph, seed);
    const CanvasSpec canvas = canvas_of(render_opts);
    const BitmapFont font = font_of(render_opts);
    std::vector<FloatTensor> samples;
    for (const auto& t : calibration_texts(calib_path, calib_n)) {
      samples.push_back(render_text(t, canvas, font, parse_embed_mode(render_opts.mode)).to_tensor());
    }
    m.graph.input_act_scale = calibrate_input_scale(samples);
    apply_scales(m.graph, calibrate_scales(m.graph, samples));
    quantize_network(m.graph);
    for (auto& layer : m.graph.layers) {
      layer.weights = FloatTensor();
      layer.bias.clear();
    }
    guarded(data, [&] { save_model(m, out_path); });
    std::printf("wrote %s (%zu conv layers, %zu labels)\n", out_path.c_str(), m.graph.conv_count(), m.labels.size());
    return ok;
  }
  if (*ink) {
    guarded(data, [&] { save_model(ink_balance_model(), out_path); });
    if (!font_out.empty()) guarded(data, [&] { write_file(font_out, write_bdf(dotless_font())); });
    return ok;
  }
  return usage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const Failure& f) {
    std::cerr << "scdsa: " << f.message << "\n";
    return f.status;
  } catch (const Error& e) {
    std::cerr << "scdsa: " << e.what() << "\n";
    return data;
  } catch (const std::exception& e) {
    std::cerr << "scdsa: " << e.what() << "\n";
    return data;
  }
}
