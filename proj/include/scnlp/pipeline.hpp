#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scnlp/fontkit.hpp"
#include "scnlp/model_file.hpp"
#include "scnlp/superchar.hpp"

namespace scnlp {

/// The 14 DBpedia ontology classes in dataset index order.
const std::vector<std::string>& dbpedia_labels();
/// JD binary sentiment classes in dataset index order.
const std::vector<std::string>& jd_labels();

/// Index of the largest score; ties go to the lowest index.
std::size_t argmax(std::span<const float> scores);

struct StageTimings {
  double preprocess_ms = 0.0;
  double inference_ms = 0.0;
  double postprocess_ms = 0.0;
  double total_ms = 0.0;
};

struct Classification {
  std::size_t index = 0;
  std::string label;
  std::vector<float> scores;
  StageTimings timings;
  SuperImage image;
};

struct ClassifierConfig {
  EmbedMode mode = EmbedMode::sew;
  CanvasSpec canvas;
  const BitmapFont* font = nullptr;  // null selects the embedded font
};

/// Text -> canvas -> integer inference -> argmax.
class Classifier {
 public:
  /// Throws Error(inconsistent_model) when the model's label count, output
  /// shape or input shape does not fit the configuration.
  Classifier(const Model& model, ClassifierConfig config);

  Classification classify(std::string_view text) const;

  const Model& model() const { return *model_; }
  const ClassifierConfig& config() const { return config_; }
  const BitmapFont& font() const { return *config_.font; }

 private:
  const Model* model_;
  ClassifierConfig config_;
};

/// Streaming RFC 4180 reader: comma separated, double-quoted fields with
/// doubled-quote escapes, fields may span lines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Next record, or false at end of input. Throws Error(malformed_csv).
  bool next(std::vector<std::string>& fields);
  std::size_t line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

struct EvalOptions {
  std::string dataset_name;
  std::optional<std::size_t> limit;
  bool title_only = false;
};

struct EvalReport {
  std::string dataset;
  std::vector<std::string> labels;
  std::vector<std::size_t> class_counts;               // rows per true class
  std::vector<std::vector<std::size_t>> confusion;     // [true][predicted]
  std::size_t total = 0;
  double mean_preprocess_ms = 0.0;
  double mean_inference_ms = 0.0;
  double mean_postprocess_ms = 0.0;

  std::size_t correct() const;
  double accuracy() const;
  /// Stable key order.
  std::string to_json() const;
  std::string to_text() const;
};

/// Rows are `class_index (1-based), title, body`; the classified text is
/// "title body" (title only with options.title_only).
EvalReport evaluate(std::istream& csv, const Classifier& classifier, const EvalOptions& options = {});
EvalReport evaluate(const std::string& path, const Classifier& classifier, EvalOptions options = {});

/// Number of CSV records in a stream.
std::size_t count_csv_rows(std::istream& csv);

/// One result line per input line. ":quit" ends the loop; ":dump <path>"
/// writes the last canvas as PGM. Returns the process exit status.
int repl(const Classifier& classifier, std::istream& in, std::ostream& out);

/// Single-line result: label, scores and stage timings.
std::string format_result(const Classification& c);

}  // namespace scnlp
