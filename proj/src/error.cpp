#include "scnlp/error.hpp"

namespace scnlp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_font: return "MalformedFont";
    case ErrorCode::unsupported_format: return "UnsupportedFormat";
    case ErrorCode::malformed_image: return "MalformedImage";
    case ErrorCode::bad_shape: return "BadShape";
    case ErrorCode::code_out_of_range: return "CodeOutOfRange";
    case ErrorCode::non_positive_scale: return "NonPositiveScale";
    case ErrorCode::shape_mismatch: return "ShapeMismatch";
    case ErrorCode::scale_invalid: return "ScaleInvalid";
    case ErrorCode::odd_spatial_dim: return "OddSpatialDim";
    case ErrorCode::unsupported_op: return "UnsupportedOp";
    case ErrorCode::missing_weights: return "MissingWeights";
    case ErrorCode::invalid_spec: return "InvalidSpec";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::empty_sample_set: return "EmptySampleSet";
    case ErrorCode::bad_magic: return "BadMagic";
    case ErrorCode::checksum_mismatch: return "ChecksumMismatch";
    case ErrorCode::version_unsupported: return "VersionUnsupported";
    case ErrorCode::truncated: return "Truncated";
    case ErrorCode::inconsistent_model: return "InconsistentModel";
    case ErrorCode::malformed_csv: return "MalformedCsv";
    case ErrorCode::label_out_of_range: return "LabelOutOfRange";
    case ErrorCode::io_error: return "IoError";
  }
  return "Unknown";
}

}  // namespace scnlp
