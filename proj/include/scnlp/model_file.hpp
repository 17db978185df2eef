#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scnlp/engine.hpp"
#include "scnlp/gnetfc.hpp"

namespace scnlp {

inline constexpr std::uint32_t kModelVersion = 1;

/// A quantized network plus its label table. `arch` is set for models built
/// from an ArchSpec; hand-assembled graphs leave it empty.
struct Model {
  NetworkGraph graph;
  std::vector<std::string> labels;
  std::optional<ArchSpec> arch;
};

/// Binary layout (all integers little-endian, floats IEEE-754 binary32 LE):
///
///   "GNFC" | u32 version | u32 payload_size | payload | u32 crc32(payload)
///
/// payload:
///   u32 arch_len, arch_len bytes of ArchSpec key=value text (0 = none)
///   u32 label_count, then per label: u32 len, UTF-8 bytes
///   u32 C, u32 H, u32 W, f32 input_act_scale
///   u32 layer_count, then per layer:
///     u8 kind (0 conv3x3, 1 maxpool2x2)
///     conv3x3 only: u8 padding, u8 bits, u8 relu, u32 C_out, u32 C_in,
///       f32 out_act_scale, f32 scales[C_out], i32 bias[C_out],
///       u32 packed_len, packed_len bytes of packed weight codes
///     maxpool2x2 only: u32 channels
std::string serialize_model(const Model& model);
Model deserialize_model(std::string_view bytes);

void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

/// Reads a whole file; throws Error(io_error).
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view bytes);

}  // namespace scnlp
