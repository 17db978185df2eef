#pragma once

#include <stdexcept>
#include <string>

namespace scnlp {

enum class ErrorCode {
  malformed_font,
  unsupported_format,
  malformed_image,
  bad_shape,
  code_out_of_range,
  non_positive_scale,
  shape_mismatch,
  scale_invalid,
  odd_spatial_dim,
  unsupported_op,
  missing_weights,
  invalid_spec,
  dimension_mismatch,
  empty_sample_set,
  bad_magic,
  checksum_mismatch,
  version_unsupported,
  truncated,
  inconsistent_model,
  malformed_csv,
  label_out_of_range,
  io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace scnlp
