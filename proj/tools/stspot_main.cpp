// Copyright 2026 The stspot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stspot/dataset.hpp"
#include "stspot/instance.hpp"
#include "stspot/json_io.hpp"
#include "stspot/metrics.hpp"
#include "stspot/pattern.hpp"

namespace {

using nlohmann::json;
using namespace stspot;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitInternalError = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kSchemaViolation, "cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kSchemaViolation, "cannot write file: " + path);
  out << content;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

struct GlobalOptions {
  std::string alphabet_file;

  const Alphabet& alphabet() const {
    if (alphabet_file.empty()) return Alphabet::printable_ascii();
    if (!cached) cached = Alphabet::from_file(alphabet_file);
    return *cached;
  }

 private:
  mutable std::optional<Alphabet> cached;
};

struct CompileOptions {
  std::string pattern;
  std::string encoding = "multi";
  std::size_t capacity = kDefaultCapacity;
  std::string output = "-";
};

void run_compile(const GlobalOptions& global, const CompileOptions& opt) {
  const QueryPattern pattern = parse_pattern(opt.pattern, global.alphabet(), opt.capacity);
  json j;
  if (opt.encoding == "multi") {
    j = multi_hot_to_json(encode_multi_hot(pattern, opt.capacity));
  } else {
    j = one_hot_to_json(encode_one_hot(pattern, opt.capacity));
  }
  write_output(opt.output, dump(j));
}

struct MatchOptions {
  std::string pattern;
  std::string strings_path = "-";
  std::string encoding = "multi";
  std::size_t capacity = kDefaultCapacity;
  std::string output = "-";
};

void run_match(const GlobalOptions& global, const MatchOptions& opt) {
  const QueryPattern pattern = parse_pattern(opt.pattern, global.alphabet(), opt.capacity);
  const std::vector<std::string> lines = split_lines(read_input(opt.strings_path));
  std::ostringstream out;
  if (opt.encoding == "multi") {
    const MultiHotEncoding encoding = encode_multi_hot(pattern, opt.capacity);
    std::size_t line_number = 0;
    for (const std::string& line : lines) {
      ++line_number;
      const MatchVerdict verdict = encoding.verdict(line);
      if (verdict == MatchVerdict::kUnknownCharacter) {
        std::cerr << "warning: line " << line_number
                  << " contains a character outside the alphabet; treated as non-match\n";
      }
      out << (verdict == MatchVerdict::kMatch ? "true" : "false") << '\t' << line << '\n';
    }
  } else {
    const OneHotEncoding encoding = encode_one_hot(pattern, opt.capacity);
    std::size_t line_number = 0;
    for (const std::string& line : lines) {
      ++line_number;
      const MatchVerdict verdict = encoding.verdict(line);
      if (verdict == MatchVerdict::kUnknownCharacter) {
        std::cerr << "warning: line " << line_number
                  << " contains a character outside the alphabet; treated as non-match\n";
      }
      out << (verdict == MatchVerdict::kMatch ? "true" : "false") << '\t' << line << '\n';
    }
  }
  write_output(opt.output, out.str());
}

struct PostprocessOptions {
  std::string detections_path;
  std::string pattern;
  std::string strategy;
  double alpha = 1.0;
  int max_iterations = 100;
  std::size_t capacity = kDefaultCapacity;
  std::string output = "-";
};

void run_postprocess(const GlobalOptions& global, const PostprocessOptions& opt) {
  const QueryPattern pattern = parse_pattern(opt.pattern, global.alphabet(), opt.capacity);
  DetectionsFile file = detections_from_json(parse_json_text(read_input(opt.detections_path)));
  const MergeConfig config{opt.alpha, opt.max_iterations, true};
  for (DetectionImage& image : file.images) {
    image.instances = opt.strategy == "validation"
                          ? postprocess_validation(image.instances, pattern, config)
                          : postprocess_iterative(image.instances, pattern, config);
  }
  write_output(opt.output, dump(detections_to_json(file)));
}

struct BuildDatasetOptions {
  std::string hiertext_path;
  std::string output = "-";
};

void run_build_dataset(const GlobalOptions&, const BuildDatasetOptions& opt) {
  const HierAnnotation annotation = hiertext_from_json(parse_json_text(read_input(opt.hiertext_path)));
  StructuredFile file;
  file.images = build_structured(annotation);
  write_output(opt.output, dump(structured_to_json(file)));
}

struct SampleQueriesOptions {
  std::string annotations_path;
  double p_exact = 0.2;
  std::uint64_t seed = 0;
  std::size_t count = 10;
  std::size_t capacity = kDefaultCapacity;
  std::string output = "-";
};

// Deterministic bounded draw (rejection sampling, no modulo bias).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t value = rng();
  while (value >= limit) value = rng();
  return value % n;
}

void run_sample_queries(const GlobalOptions& global, const SampleQueriesOptions& opt) {
  const Alphabet& alphabet = global.alphabet();
  StructuredFile file = structured_from_json(parse_json_text(read_input(opt.annotations_path)));
  std::sort(file.images.begin(), file.images.end(),
            [](const StructuredImage& a, const StructuredImage& b) { return a.image_id < b.image_id; });

  struct Eligible {
    const StructuredImage* image;
    const StructuredInstance* instance;
  };
  std::vector<Eligible> eligible;
  for (const StructuredImage& image : file.images) {
    for (const StructuredInstance& inst : image.instances) {
      if (inst.text.size() > opt.capacity) continue;
      const bool encodable = std::all_of(inst.text.begin(), inst.text.end(),
                                         [&](char c) { return alphabet.contains(c); });
      if (encodable) eligible.push_back({&image, &inst});
    }
  }
  if (opt.count > 0 && eligible.empty()) {
    throw Error(ErrorCode::kSchemaViolation, "no instance is eligible for query sampling");
  }

  std::mt19937_64 rng(opt.seed);
  QuerySetFile queries;
  for (std::size_t q = 0; q < opt.count; ++q) {
    const Eligible& pick = eligible[bounded(rng, eligible.size())];
    const std::uint64_t query_seed = rng();
    const SampledQuery sampled = sample_query(*pick.instance, pick.image->instances, opt.p_exact,
                                              query_seed, alphabet, opt.capacity);
    QueryEntry entry;
    entry.pattern = sampled.pattern;
    entry.image_id = pick.image->image_id;
    entry.positive_ids = sampled.positive_ids;
    entry.seed = sampled.seed;
    entry.p_exact = sampled.p_exact;
    queries.queries.push_back(std::move(entry));
  }
  write_output(opt.output, dump(queries_to_json(queries)));
}

struct EvaluateOptions {
  std::string gt_path;
  std::string preds_path;
  bool by_category = false;
  bool ed_unmatched = false;
  std::string output = "-";
};

void run_evaluate(const GlobalOptions&, const EvaluateOptions& opt) {
  const DetectionsFile gt = detections_from_json(parse_json_text(read_input(opt.gt_path)));
  const DetectionsFile preds = detections_from_json(parse_json_text(read_input(opt.preds_path)));
  const EditDistanceMode mode = opt.ed_unmatched ? EditDistanceMode::kPenalizeUnmatched
                                                 : EditDistanceMode::kMatchedOnly;
  const MetricsReport report = per_category_report(group_by_category(gt, preds), mode);
  write_output(opt.output, dump(report_to_json(report, opt.by_category)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured scene-text spotting toolkit"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--alphabet", global.alphabet_file,
                 "Alphabet file (ordered characters, raw bytes)")
      ->type_name("FILE");

  CompileOptions compile_opt;
  CLI::App* compile = app.add_subcommand("compile", "Compile a pattern to an encoding JSON");
  compile->add_option("pattern", compile_opt.pattern, "Query pattern")->required();
  compile->add_option("--encoding", compile_opt.encoding, "Encoding kind")
      ->check(CLI::IsMember({"multi", "one"}))
      ->capture_default_str();
  compile->add_option("--capacity", compile_opt.capacity, "Maximum recognition length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compile->add_option("-o,--out", compile_opt.output, "Output path ('-' for stdout)")
      ->capture_default_str();

  MatchOptions match_opt;
  CLI::App* match = app.add_subcommand("match", "Match candidate strings against a pattern");
  match->add_option("pattern", match_opt.pattern, "Query pattern")->required();
  match->add_option("strings", match_opt.strings_path, "Candidates file, one per line ('-' for stdin)")
      ->capture_default_str();
  match->add_option("--encoding", match_opt.encoding, "Encoding kind")
      ->check(CLI::IsMember({"multi", "one"}))
      ->capture_default_str();
  match->add_option("--capacity", match_opt.capacity, "Maximum recognition length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  match->add_option("-o,--out", match_opt.output, "Output path")->capture_default_str();

  PostprocessOptions post_opt;
  CLI::App* post = app.add_subcommand("postprocess", "Filter and merge detections against a pattern");
  post->add_option("detections", post_opt.detections_path, "Detections JSON ('-' for stdin)")
      ->required();
  post->add_option("pattern", post_opt.pattern, "Query pattern")->required();
  post->add_option("--strategy", post_opt.strategy, "Post-processing strategy")
      ->check(CLI::IsMember({"validation", "iterative"}))
      ->required();
  post->add_option("--alpha", post_opt.alpha, "Gap threshold multiplier")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  post->add_option("--max-iter", post_opt.max_iterations, "Iteration cap for the iterative strategy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  post->add_option("--capacity", post_opt.capacity, "Maximum recognition length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  post->add_option("-o,--out", post_opt.output, "Output path")->capture_default_str();

  BuildDatasetOptions build_opt;
  CLI::App* build = app.add_subcommand("build-dataset",
                                       "Convert hierarchical annotations to structured instances");
  build->add_option("hiertext", build_opt.hiertext_path, "Hierarchical annotations JSON")->required();
  build->add_option("-o,--out", build_opt.output, "Output path")->capture_default_str();

  SampleQueriesOptions sample_opt;
  CLI::App* sample = app.add_subcommand("sample-queries", "Sample training queries from annotations");
  sample->add_option("annotations", sample_opt.annotations_path, "Structured annotations JSON")
      ->required();
  sample->add_option("--p-exact", sample_opt.p_exact, "Per-character exact-pin probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sample->add_option("--seed", sample_opt.seed, "RNG seed")->capture_default_str();
  sample->add_option("--count", sample_opt.count, "Number of queries")->capture_default_str();
  sample->add_option("--capacity", sample_opt.capacity, "Maximum recognition length")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sample->add_option("-o,--out", sample_opt.output, "Output path")->capture_default_str();

  EvaluateOptions eval_opt;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth");
  evaluate->add_option("gt", eval_opt.gt_path, "Ground-truth detections JSON")->required();
  evaluate->add_option("predictions", eval_opt.preds_path, "Predicted detections JSON")->required();
  evaluate->add_flag("--by-category", eval_opt.by_category, "Break metrics down per category");
  evaluate->add_flag("--ed-unmatched", eval_opt.ed_unmatched,
                     "Let unmatched instances contribute their text length to the edit distance");
  evaluate->add_option("-o,--out", eval_opt.output, "Output path")->capture_default_str();

  for (CLI::App* sub : {compile, match, post, build, sample, evaluate}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (compile->parsed()) run_compile(global, compile_opt);
    if (match->parsed()) run_match(global, match_opt);
    if (post->parsed()) run_postprocess(global, post_opt);
    if (build->parsed()) run_build_dataset(global, build_opt);
    if (sample->parsed()) run_sample_queries(global, sample_opt);
    if (evaluate->parsed()) run_evaluate(global, eval_opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitOk;
}
