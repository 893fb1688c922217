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

// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits non-zero when anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stspot/dataset.hpp"
#include "stspot/instance.hpp"
#include "stspot/json_io.hpp"
#include "stspot/metrics.hpp"
#include "stspot/pattern.hpp"
#include "support/generators.hpp"

namespace fs = std::filesystem;
using namespace stspot;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition && ok) {
      ok = false;
      detail = message;
    }
  }
};

int g_failures = 0;

void run_criterion(int number, const std::string& label, const std::function<void(Check&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  try {
    body(check);
  } catch (const std::exception& e) {
    check.require(false, std::string("exception: ") + e.what());
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char time_buffer[32];
  std::snprintf(time_buffer, sizeof(time_buffer), "%.2fs", seconds);
  if (check.ok) {
    std::cout << "PASS  " << number << ". " << label << " (" << time_buffer << ")\n";
  } else {
    std::cout << "FAIL  " << number << ". " << label << " (" << time_buffer
              << "): " << check.detail << "\n";
    ++g_failures;
  }
}

Instance make_instance(int id, double x, double y, double w, double h, std::string text,
                       double score = 0.9) {
  return Instance{id, rect_polygon(x, y, x + w, y + h), std::move(text), score, {}};
}

// Top-down recursive edit distance with a per-pair memo table.
std::size_t oracle_ed(std::string_view a, std::string_view b) {
  std::vector<int> memo((a.size() + 1) * (b.size() + 1), -1);
  const std::size_t stride = b.size() + 1;
  const std::function<std::size_t(std::size_t, std::size_t)> rec =
      [&](std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    int& slot = memo[i * stride + j];
    if (slot >= 0) return static_cast<std::size_t>(slot);
    std::size_t best;
    if (a[i] == b[j]) {
      best = rec(i + 1, j + 1);
    } else {
      best = 1 + std::min({rec(i + 1, j), rec(i, j + 1), rec(i + 1, j + 1)});
    }
    slot = static_cast<int>(best);
    return best;
  };
  return rec(0, 0);
}

std::string shell_quote(const std::string& arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out += "'";
  return out;
}

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::string command = shell_quote(STSPOT_CLI);
  for (const std::string& arg : args) command += " " + shell_quote(arg);
  command += " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  char buffer[4096];
  std::size_t n = 0;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    result.stdout_text.append(buffer, n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

void criterion_1_matcher_oracle(Check& check) {
  std::mt19937_64 rng(0xACCE97);
  const auto start = std::chrono::steady_clock::now();
  std::size_t agreements = 0;
  constexpr std::size_t kPairs = 10000;
  constexpr std::size_t kCandidatesPerPattern = 10;
  for (std::size_t p = 0; p < kPairs / kCandidatesPerPattern; ++p) {
    const testgen::GeneratedPattern generated = testgen::random_supported_pattern(rng, 25);
    const QueryPattern parsed = parse_pattern(generated.text, Alphabet::printable_ascii(), 25);
    const MultiHotEncoding encoding = encode_multi_hot(parsed, 25);
    for (std::size_t c = 0; c < kCandidatesPerPattern; ++c) {
      const std::string candidate = testgen::random_candidate(rng, generated);
      const bool expected = testgen::oracle_match(generated.positions, candidate);
      if (encoding.matches(candidate) == expected) {
        ++agreements;
      } else {
        check.require(false, "verdict mismatch for pattern '" + generated.text +
                                 "' on candidate '" + candidate + "'");
        return;
      }
    }
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  check.require(agreements == kPairs, "expected 10000 agreements");
  check.require(seconds < 10.0, "runtime exceeded 10 s");
}

void criterion_2_expressiveness(Check& check) {
  const QueryPattern pattern = parse_pattern(R"(A\d{2}0)");
  const MultiHotEncoding multi = encode_multi_hot(pattern, 25);
  check.require(multi.matches("A120"), "A\\d{2}0 must accept A120");
  check.require(!multi.matches("A12B"), "A\\d{2}0 must reject A12B");
  const OneHotEncoding one = encode_one_hot(pattern, 25);
  check.require(one.matches("Z999"), "the one-hot projection must accept Z999");
  for (const char* rejected : {"[0-9]{2-5}", "+", "*"}) {
    try {
      parse_pattern(rejected);
      check.require(false, std::string("pattern '") + rejected + "' must be rejected");
    } catch (const Error& e) {
      check.require(e.code() == ErrorCode::kUnsupportedOperand,
                    std::string("pattern '") + rejected + "' must raise UnsupportedOperand");
    }
  }
}

void criterion_3_validation_scenario(Check& check) {
  const QueryPattern full = parse_pattern(R"([A-Za-z]{2}\d{2}[ ][A-Za-z]{2}\d{2})");
  const std::vector<Instance> detections = {
      make_instance(0, 0, 0, 40, 10, "AB12", 0.90),
      make_instance(1, 45, 0, 40, 10, "CD34", 0.80),
      make_instance(2, 0, 40, 60, 10, "STATION", 0.95),
      make_instance(3, 100, 40, 30, 10, "x1", 0.70),
  };
  const std::vector<Instance> result = postprocess_validation(detections, full, {});
  check.require(result.size() == 1,
                "expected exactly 1 instance, got " + std::to_string(result.size()));
  if (result.size() != 1) return;
  const MultiHotEncoding encoding = encode_multi_hot(full, full.length());
  check.require(encoding.matches(result[0].text), "merged text must match the full query");
  check.require(result[0].text == "AB12 CD34", "transcriptions must join with a space");
}

void criterion_4_iterative_scenario(Check& check) {
  const QueryPattern uic = parse_pattern(R"(\d{11}-\d)");
  std::vector<Instance> detections = {
      make_instance(0, 0, 0, 70, 10, "2837584", 0.90),
      make_instance(1, 72, 0, 40, 10, "7391", 0.85),
      make_instance(2, 114, 0, 20, 10, "-1", 0.80),
      // Close enough to merge with the assembled code if freezing failed.
      make_instance(3, 140, 0, 20, 10, "99", 0.70),
  };
  MergeConfig config;
  config.max_iterations = 3;
  const std::vector<Instance> result = postprocess_iterative(detections, uic, config);
  check.require(result.size() == 1,
                "expected exactly 1 instance, got " + std::to_string(result.size()));
  if (result.size() != 1) return;
  check.require(encode_multi_hot(uic, uic.length()).matches(result[0].text),
                "merged text must match the query");
  check.require(result[0].merged_from == std::vector<int>{0, 1, 2},
                "provenance must cover the three fragments and exclude the frozen-out neighbor");
}

void criterion_5_dataset_scenario(Check& check) {
  const Word step{rect_polygon(0, 0, 35, 10), "STEP"};
  const Word version{rect_polygon(40, 0, 70, 10), "v1.0"};
  const Word release{rect_polygon(75, 0, 135, 10), "release"};
  const auto images = build_structured(
      HierAnnotation{{ImageAnnotation{"img", {Paragraph{{Line{{step, version, release}}}}}}}});
  check.require(images.size() == 1 && images[0].instances.size() == 3,
                "the toy line must produce exactly 3 instances");
  if (images[0].instances.size() == 3) {
    check.require(images[0].instances[0].text == "v1.0" &&
                      images[0].instances[0].origin == Origin::kSingle,
                  "first instance must be the selected word");
    check.require(images[0].instances[1].text == "STEP v1.0" &&
                      images[0].instances[1].origin == Origin::kLeftMerge,
                  "second instance must be the left merge");
    check.require(images[0].instances[2].text == "v1.0 release" &&
                      images[0].instances[2].origin == Origin::kRightMerge,
                  "third instance must be the right merge");
  }
  const Word hello{rect_polygon(0, 0, 40, 10), "hello"};
  const Word world{rect_polygon(45, 0, 90, 10), "world"};
  const auto alphabetic = build_structured(
      HierAnnotation{{ImageAnnotation{"img", {Paragraph{{Line{{hello, world}}}}}}}});
  check.require(alphabetic[0].instances.empty(),
                "an all-alphabetic line must produce no instances");
}

void criterion_6_metrics_identities(Check& check) {
  // Identity on perfect predictions.
  const std::vector<Instance> gts = {make_instance(0, 0, 0, 40, 10, "AB12", 1.0),
                                     make_instance(1, 60, 0, 40, 10, "CD34", 1.0)};
  const MatchResult self_match = match_instances(gts, gts);
  const PrfScores det = detection_metrics(self_match);
  const PrfScores e2e = e2e_metrics(self_match, gts, gts);
  check.require(det.precision == 1.0 && det.recall == 1.0 && det.f_score == 1.0,
                "detection P/R/F must all be 1.0 on identical predictions");
  check.require(e2e.precision == 1.0 && e2e.recall == 1.0 && e2e.f_score == 1.0,
                "e2e P/R/F must all be 1.0 on identical predictions");
  const auto ed = avg_edit_distance(self_match, gts, gts);
  check.require(ed.has_value() && *ed == 0.0, "avg edit distance must be 0");

  // IoU exactly 0.5 is rejected.
  const std::vector<Instance> half_gt = {make_instance(0, 0, 0, 130, 10, "X", 1.0)};
  const std::vector<Instance> half_pred = {make_instance(0, 65, 0, 65, 10, "X", 0.9)};
  check.require(match_instances(half_pred, half_gt).pairs.empty(),
                "an IoU of exactly 0.5 must not match");

  // e2e never beats detection on randomized perturbations.
  std::mt19937_64 rng(0xE2E);
  const std::vector<std::string> words = {"AB12", "CD34", "25.0t", "v1.0", "X9"};
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Instance> truth;
    const std::size_t n = rng() % 5;
    for (std::size_t g = 0; g < n; ++g) {
      truth.push_back(make_instance(static_cast<int>(g), static_cast<double>(g) * 120.0,
                                    static_cast<double>(rng() % 40), 80, 20,
                                    words[rng() % words.size()], 1.0));
    }
    std::vector<Instance> preds;
    int pred_id = 0;
    for (const Instance& gt : truth) {
      if (rng() % 4 == 0) continue;
      Instance pred = gt;
      pred.id = pred_id++;
      pred.score = static_cast<double>(rng() % 100) / 100.0;
      const BBox box = gt.polygon.bbox();
      const double dx = static_cast<double>(rng() % 30) - 15.0;
      pred.polygon = rect_polygon(box.x_min + dx, box.y_min, box.x_max + dx, box.y_max);
      if (rng() % 3 == 0) pred.text[0] = '?';
      preds.push_back(std::move(pred));
    }
    if (rng() % 3 == 0) preds.push_back(make_instance(pred_id++, 900, 900, 40, 10, "FP", 0.3));
    const MatchResult match = match_instances(preds, truth);
    const PrfScores trial_det = detection_metrics(match);
    const PrfScores trial_e2e = e2e_metrics(match, preds, truth);
    if (trial_e2e.f_score > trial_det.f_score + 1e-12) {
      check.require(false, "e2e F exceeded detection F on trial " + std::to_string(trial));
      return;
    }
  }

  // Levenshtein equals the recursive oracle on every pair of strings of
  // length <= 6 over a 3-letter alphabet.
  std::vector<std::string> strings = {""};
  std::size_t start = 0;
  for (int len = 1; len <= 6; ++len) {
    const std::size_t end = strings.size();
    for (std::size_t i = start; i < end; ++i) {
      for (char c : {'a', 'b', 'c'}) strings.push_back(strings[i] + c);
    }
    start = end;
  }
  check.require(strings.size() == 1093, "expected 1093 strings");
  for (const std::string& a : strings) {
    for (const std::string& b : strings) {
      if (levenshtein(a, b) != oracle_ed(a, b)) {
        check.require(false, "edit distance mismatch on ('" + a + "', '" + b + "')");
        return;
      }
    }
  }
}

void criterion_7_multi_target(Check& check) {
  const std::vector<StructuredInstance> instances = {
      {0, rect_polygon(0, 0, 40, 10), "10:30", Origin::kSingle},
      {1, rect_polygon(0, 20, 40, 30), "12:45", Origin::kSingle},
  };
  const SampledQuery query = sample_query(instances[0], instances, 0.0, 1);
  check.require(query.pattern == R"(\d{2}:\d{2})",
                "expected the two-clock pattern, got '" + query.pattern + "'");
  check.require(query.positive_ids == std::vector<int>{0, 1},
                "both clock readings must be positives");

  std::vector<Instance> gts;
  for (const StructuredInstance& inst : instances) {
    gts.push_back(Instance{inst.id, inst.polygon, inst.text, 1.0, {}});
  }
  const MatchResult match = match_instances(gts, gts);
  const PrfScores det = detection_metrics(match);
  const PrfScores e2e = e2e_metrics(match, gts, gts);
  check.require(det.recall == 1.0 && e2e.recall == 1.0,
                "recall must be 1.0 when both targets are predicted");
}

void criterion_8_cli_determinism(Check& check) {
  const fs::path fixtures(STSPOT_FIXTURES_DIR);
  const fs::path tmp =
      fs::temp_directory_path() / ("stspot_acceptance_" + std::to_string(std::random_device{}()));
  fs::create_directories(tmp);
  const fs::path annotations = tmp / "annotations.json";

  const RunResult build = run_cli({"build-dataset", (fixtures / "hiertext_toy.json").string(),
                                   "-o", annotations.string()});
  check.require(build.exit_code == 0, "build-dataset must succeed");

  const std::vector<std::vector<std::string>> commands = {
      {"compile", R"([A-Za-z]{4}\s\d{6}\s\d)"},
      {"compile", R"(A\d{2}0)", "--encoding", "one"},
      {"match", R"([A-Za-z]{4}\s\d{6}\s\d)", (fixtures / "strings_bic.txt").string()},
      {"postprocess", (fixtures / "fig8_detections.json").string(),
       R"([A-Za-z]{2}\d{2}[ ][A-Za-z]{2}\d{2})", "--strategy", "validation"},
      {"postprocess", (fixtures / "fig9_detections.json").string(), R"(\d{11}-\d)", "--strategy",
       "iterative"},
      {"build-dataset", (fixtures / "hiertext_toy.json").string()},
      {"sample-queries", annotations.string(), "--seed", "11", "--count", "8"},
      {"evaluate", (fixtures / "eval_gt.json").string(), (fixtures / "eval_preds.json").string(),
       "--by-category"},
  };
  for (const std::vector<std::string>& command : commands) {
    const RunResult first = run_cli(command);
    const RunResult second = run_cli(command);
    check.require(first.exit_code == 0,
                  "command '" + command[0] + "' must succeed, exit " +
                      std::to_string(first.exit_code));
    check.require(first.stdout_text == second.stdout_text,
                  "command '" + command[0] + "' must be byte-identical across runs");
    check.require(!first.stdout_text.empty(), "command '" + command[0] + "' must print output");
  }

  std::error_code ec;
  fs::remove_all(tmp, ec);
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  run_criterion(1, "matcher-oracle equivalence on 10000 randomized pairs",
                criterion_1_matcher_oracle);
  run_criterion(2, "expressiveness witnesses and rejected operands", criterion_2_expressiveness);
  run_criterion(3, "validation-split merge scenario", criterion_3_validation_scenario);
  run_criterion(4, "iterative test-split merge scenario", criterion_4_iterative_scenario);
  run_criterion(5, "hierarchical dataset transformation scenario", criterion_5_dataset_scenario);
  run_criterion(6, "metrics identities and edit-distance oracle", criterion_6_metrics_identities);
  run_criterion(7, "multi-target query sampling and recall", criterion_7_multi_target);
  run_criterion(8, "CLI determinism across repeated runs", criterion_8_cli_determinism);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s: %d criterion(s) failed, total %.2fs\n", g_failures == 0 ? "OK" : "FAILURE",
              g_failures, seconds);
  return g_failures == 0 ? 0 : 1;
}
