#include "scnlp/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

namespace scnlp {
namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::string fmt_ms(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

const std::vector<std::string>& dbpedia_labels() {
  static const std::vector<std::string> labels{
      "Company", "EducationalInstitution", "Artist", "Athlete", "OfficeHolder", "MeanOfTransportation", "Building",
      "NaturalPlace", "Village", "Animal", "Plant", "Album", "Film", "WrittenWork"};
  return labels;
}

const std::vector<std::string>& jd_labels() {
  static const std::vector<std::string> labels{"negative", "positive"};
  return labels;
}

std::size_t argmax(std::span<const float> scores) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[best]) best = i;
  }
  return best;
}

Classifier::Classifier(const Model& model, ClassifierConfig config) : model_(&model), config_(config) {
  if (!config_.font) config_.font = &embedded_font();
  config_.canvas.validate();
  const NetworkGraph& g = model.graph;
  const Shape expected_input{config_.canvas.channels, config_.canvas.side, config_.canvas.side};
  if (!(g.input_shape == expected_input)) {
    throw Error(ErrorCode::inconsistent_model,
                "model input " + g.input_shape.str() + " does not match canvas " + expected_input.str());
  }
  const ShapePlan plan = plan_shapes(g);
  const Shape out = plan.outputs.empty() ? g.input_shape : plan.outputs.back();
  if (plan.outputs.size() != g.layers.size() || out.numel() != static_cast<Index>(model.labels.size())) {
    throw Error(ErrorCode::inconsistent_model, "model output " + out.str() + " does not match " +
                                                   std::to_string(model.labels.size()) + " labels");
  }
}

Classification Classifier::classify(std::string_view text) const {
  Classification c;
  const auto t0 = Clock::now();
  c.image = render_text(text, config_.canvas, *config_.font, config_.mode);
  const FloatTensor input = c.image.to_tensor();
  const auto t1 = Clock::now();
  RunResult result = run(model_->graph, input, ExecMode::integer);
  const auto t2 = Clock::now();
  c.scores.assign(result.output.data(), result.output.data() + result.output.size());
  c.index = argmax(c.scores);
  c.label = model_->labels[c.index];
  const auto t3 = Clock::now();
  c.timings.preprocess_ms = ms_between(t0, t1);
  c.timings.inference_ms = ms_between(t1, t2);
  c.timings.postprocess_ms = ms_between(t2, t3);
  c.timings.total_ms = ms_between(t0, t3);
  return c;
}

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool quoted = false, field_started = false, after_quote = false, any = false;
  record_line_ = line_;
  const std::size_t start_line = line_;
  for (;;) {
    const int ch = in_.get();
    if (ch == EOF) {
      if (quoted) throw Error(ErrorCode::malformed_csv, "line " + std::to_string(start_line) + ": unterminated quoted field");
      if (!any) return false;
      fields.push_back(std::move(field));
      return true;
    }
    any = true;
    const char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in_.peek() == '"') {
          in_.get();
          field += '"';
        } else {
          quoted = false;
          after_quote = true;
        }
      } else {
        if (c == '\n') ++line_;
        field += c;
      }
      continue;
    }
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      field_started = after_quote = false;
    } else if (c == '\r') {
      if (in_.peek() != '\n') {
        throw Error(ErrorCode::malformed_csv, "line " + std::to_string(line_) + ": stray carriage return");
      }
    } else if (c == '\n') {
      ++line_;
      if (fields.empty() && field.empty() && !field_started) {
        // blank line
        record_line_ = line_;
        any = false;
        continue;
      }
      fields.push_back(std::move(field));
      return true;
    } else if (c == '"') {
      if (field_started || after_quote) {
        throw Error(ErrorCode::malformed_csv, "line " + std::to_string(line_) + ", field " +
                                                  std::to_string(fields.size() + 1) + ": quote inside unquoted field");
      }
      quoted = true;
      field_started = true;
    } else {
      if (after_quote) {
        throw Error(ErrorCode::malformed_csv, "line " + std::to_string(line_) + ", field " +
                                                  std::to_string(fields.size() + 1) + ": text after closing quote");
      }
      field_started = true;
      field += c;
    }
  }
}

std::size_t EvalReport::correct() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < confusion.size(); ++i) n += confusion[i][i];
  return n;
}

double EvalReport::accuracy() const { return total ? static_cast<double>(correct()) / static_cast<double>(total) : 0.0; }

std::string EvalReport::to_json() const {
  nlohmann::ordered_json j;
  j["dataset"] = dataset;
  j["total"] = total;
  j["correct"] = correct();
  j["accuracy"] = accuracy();
  j["labels"] = labels;
  j["class_counts"] = class_counts;
  j["confusion"] = confusion;
  j["latency_ms"] = {{"preprocess", mean_preprocess_ms},
                     {"inference", mean_inference_ms},
                     {"postprocess", mean_postprocess_ms}};
  j["reference_device_latency_ms"] = {{"preprocess", 6.0}, {"inference", 15.0}, {"total", 21.0}};
  return j.dump(2);
}

std::string EvalReport::to_text() const {
  std::ostringstream out;
  out << "dataset: " << (dataset.empty() ? "-" : dataset) << "\n";
  out << "rows: " << total << "  correct: " << correct() << "  accuracy: " << accuracy() << "\n";
  out << "mean latency (ms): preprocess " << fmt_ms(mean_preprocess_ms) << ", inference "
      << fmt_ms(mean_inference_ms) << ", postprocess " << fmt_ms(mean_postprocess_ms) << "\n";
  out << "reference device latency (ms): preprocess ~6, chip 15, total 21\n";
  out << "confusion (rows = true class):\n";
  for (std::size_t i = 0; i < confusion.size(); ++i) {
    out << "  " << (i < labels.size() ? labels[i] : std::to_string(i)) << ":";
    for (std::size_t v : confusion[i]) out << ' ' << v;
    out << "\n";
  }
  return out.str();
}

EvalReport evaluate(std::istream& csv, const Classifier& classifier, const EvalOptions& options) {
  const auto& labels = classifier.model().labels;
  const std::size_t k = labels.size();
  EvalReport report;
  report.dataset = options.dataset_name;
  report.labels = labels;
  report.class_counts.assign(k, 0);
  report.confusion.assign(k, std::vector<std::size_t>(k, 0));

  CsvReader reader(csv);
  std::vector<std::string> fields;
  std::size_t row = 0;
  while ((!options.limit || row < *options.limit) && reader.next(fields)) {
    ++row;
    const std::string where = "row " + std::to_string(row) + " (line " + std::to_string(reader.line()) + ")";
    if (fields.size() != 3) {
      throw Error(ErrorCode::malformed_csv, where + ": expected 3 fields (class, title, body), got " +
                                                std::to_string(fields.size()));
    }
    long cls = 0;
    try {
      std::size_t used = 0;
      cls = std::stol(fields[0], &used);
      if (used != fields[0].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::malformed_csv, where + ", field 1: class index '" + fields[0] + "' is not an integer");
    }
    if (cls < 1 || static_cast<std::size_t>(cls) > k) {
      throw Error(ErrorCode::label_out_of_range,
                  where + ": class index " + std::to_string(cls) + " outside 1.." + std::to_string(k));
    }
    std::string text = fields[1];
    if (!options.title_only) text += " " + fields[2];

    const Classification c = classifier.classify(text);
    const auto truth = static_cast<std::size_t>(cls - 1);
    ++report.class_counts[truth];
    ++report.confusion[truth][c.index];
    report.mean_preprocess_ms += c.timings.preprocess_ms;
    report.mean_inference_ms += c.timings.inference_ms;
    report.mean_postprocess_ms += c.timings.postprocess_ms;
  }
  report.total = row;
  if (row) {
    report.mean_preprocess_ms /= static_cast<double>(row);
    report.mean_inference_ms /= static_cast<double>(row);
    report.mean_postprocess_ms /= static_cast<double>(row);
  }
  return report;
}

EvalReport evaluate(const std::string& path, const Classifier& classifier, EvalOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  if (options.dataset_name.empty()) options.dataset_name = path;
  return evaluate(in, classifier, options);
}

std::size_t count_csv_rows(std::istream& csv) {
  CsvReader reader(csv);
  std::vector<std::string> fields;
  std::size_t n = 0;
  while (reader.next(fields)) ++n;
  return n;
}

std::string format_result(const Classification& c) {
  std::ostringstream out;
  out << c.label << "\tscores=[";
  for (std::size_t i = 0; i < c.scores.size(); ++i) {
    if (i) out << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", static_cast<double>(c.scores[i]));
    out << buf;
  }
  out << "]\tpre=" << fmt_ms(c.timings.preprocess_ms) << "ms inf=" << fmt_ms(c.timings.inference_ms)
      << "ms post=" << fmt_ms(c.timings.postprocess_ms) << "ms total=" << fmt_ms(c.timings.total_ms) << "ms";
  return out.str();
}

int repl(const Classifier& classifier, std::istream& in, std::ostream& out) {
  std::optional<SuperImage> last;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == ":quit") return 0;
    if (line.rfind(":dump", 0) == 0) {
      std::string path = line.substr(5);
      path.erase(0, path.find_first_not_of(' '));
      if (path.empty()) {
        out << "error: usage :dump <path>" << std::endl;
      } else if (!last) {
        out << "error: nothing classified yet" << std::endl;
      } else {
        try {
          write_file(path, export_image(*last, ImageFormat::pgm));
          out << "wrote " << path << std::endl;
        } catch (const Error& e) {
          out << "error: " << e.what() << std::endl;
          return 2;
        }
      }
      continue;
    }
    Classification c = classifier.classify(line);
    out << format_result(c) << std::endl;
    last = std::move(c.image);
    if (!out) return 2;
  }
  return in.bad() ? 2 : 0;
}

}  // namespace scnlp
