#pragma once

#include <random>
#include <string>
#include <vector>

#include "scnlp/gnetfc.hpp"
#include "scnlp/model_file.hpp"
#include "scnlp/superchar.hpp"
#include "support/random_text.hpp"

namespace test_support {

/// GnetFC geometry at 224x224 with every width cut to a few channels.
inline scnlp::ArchSpec tiny_arch(scnlp::Index classes) {
  scnlp::ArchSpec s;
  s.num_classes = classes;
  s.major_channels = {4, 4, 6, 6, 6};
  s.major_sublayers = {1, 1, 1, 1, 1};
  s.major6_hidden = {8, 8};
  return s;
}

/// Random weights calibrated on rendered random texts, then quantized.
inline scnlp::Model calibrated_model(const scnlp::ArchSpec& arch, std::vector<std::string> labels,
                                     std::uint64_t seed, int samples = 4) {
  scnlp::Model m;
  m.arch = arch;
  m.labels = std::move(labels);
  m.graph = scnlp::build_gnetfc(arch);
  scnlp::init_weights(m.graph, seed);
  std::mt19937 rng(static_cast<std::uint32_t>(seed));
  std::normal_distribution<float> bias(0.0f, 0.5f);
  for (auto& layer : m.graph.layers) {
    for (auto& b : layer.bias) b = bias(rng);
  }
  std::vector<scnlp::FloatTensor> inputs;
  for (int i = 0; i < samples; ++i) {
    inputs.push_back(scnlp::render_text(random_text(rng), scnlp::CanvasSpec{}, scnlp::embedded_font(),
                                         scnlp::EmbedMode::sew)
                         .to_tensor());
  }
  m.graph.input_act_scale = scnlp::calibrate_input_scale(inputs);
  scnlp::apply_scales(m.graph, scnlp::calibrate_scales(m.graph, inputs));
  scnlp::quantize_network(m.graph);
  return m;
}

}  // namespace test_support
