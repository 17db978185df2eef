#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "scnlp/engine.hpp"

namespace scnlp {

/// VGG-style network whose classifier is three unpadded 3x3 convolutions.
///
/// Majors 1-5 are padded conv stacks each closed by a 2x2 pool; major 6 turns
/// the 7x7 map into 5x5, 3x3 and finally 1x1 x num_classes raw scores.
struct ArchSpec {
  Index input_side = 224;
  Index input_channels = 3;
  Index num_classes = 14;
  std::vector<Index> major_channels{64, 128, 256, 512, 256};
  std::vector<Index> major_sublayers{2, 2, 3, 3, 3};
  std::vector<Index> major6_hidden{256, 256};
  std::vector<int> bits_per_major{3, 3, 1, 1, 1, 1};
  Index scale_divisor = 1;

  /// Channel widths of the three major-6 convs, the last being num_classes.
  std::vector<Index> major6_channels() const { return {major6_hidden[0], major6_hidden[1], num_classes}; }

  /// Input side after applying scale_divisor.
  Index effective_side() const;

  /// Throws Error(invalid_spec) on any violated structural constraint.
  void validate() const;

  /// key=value lines, one per field, fixed order.
  std::string to_config() const;
  static ArchSpec from_config(std::string_view text);

  bool operator==(const ArchSpec&) const = default;
};

/// Structure only: conv layers carry no weights until init_weights or load.
NetworkGraph build_gnetfc(const ArchSpec& spec);

/// The 13-conv VGG16 feature extractor (no classifier), with GnetFC's bit
/// assignment for majors 1-5.
NetworkGraph build_vgg16_conv_stack(Index input_side = 224);

/// He-normal float weights, zero bias, deterministic for a seed.
void init_weights(NetworkGraph& g, std::uint64_t seed);

/// Reshapes FC weights (D x C*k*k, input flattened as C, H, W) into D kernels
/// of shape (C, k, k); a valid k x k convolution over a k x k x C map then
/// reproduces the FC output.
FloatTensor fc_as_single_conv(const FloatTensor& fc_weights, Index k, Index channels);

/// Per-conv-layer output scale: max observed activation / 31 over the samples
/// (max |value| for a linear layer); 1 when the layer never activates.
std::vector<float> calibrate_scales(const NetworkGraph& g, const std::vector<FloatTensor>& samples);

/// max sample value / 31, or 1 for all-zero samples.
float calibrate_input_scale(const std::vector<FloatTensor>& samples);

/// Writes one scale per conv layer into spec.out_act_scale.
void apply_scales(NetworkGraph& g, const std::vector<float>& scales);

/// Quantizes every conv's float weights at its bit width; biases are rounded
/// into the accumulator domain of the layer's input scale.
void quantize_network(NetworkGraph& g);

enum class StorageMode { packed, paper };

StorageMode parse_storage_mode(std::string_view s);

struct LayerMemory {
  std::size_t layer = 0;
  Index coefficients = 0;
  int bits = 0;
  std::size_t float_bytes = 0;
  std::size_t packed_bytes = 0;
  std::size_t paper_bytes = 0;
};

/// Coefficient accounting. Packed is true bit-packing; paper mode stores
/// 1-bit layers at 2 bits and 3-bit layers at 4 bits per coefficient
/// (4x and 2x against an 8-bit baseline).
struct MemoryReport {
  StorageMode mode = StorageMode::packed;
  std::vector<LayerMemory> layers;
  Index coefficients = 0;
  std::size_t float_bytes = 0;
  std::size_t packed_bytes = 0;
  std::size_t paper_bytes = 0;
  std::size_t peak_activation_bytes = 0;
  std::size_t budget_bytes = kChipBudgetBytes;

  std::size_t model_bytes() const { return mode == StorageMode::packed ? packed_bytes : paper_bytes; }
  double packed_ratio() const;
  double paper_ratio() const;
  bool fits_budget() const { return packed_bytes + peak_activation_bytes <= budget_bytes; }
};

MemoryReport memory_report(const NetworkGraph& g, StorageMode mode = StorageMode::packed);

/// Stored bits per coefficient under the paper-mode accounting.
int paper_mode_bits(int weight_bits);

}  // namespace scnlp
