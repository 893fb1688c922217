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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stspot/instance.hpp"

namespace stspot {

struct MatchedPair {
  int pred_id = 0;
  int gt_id = 0;
  double iou = 0.0;
};

/// One-to-one localization pairing for a single image.
struct MatchResult {
  std::vector<MatchedPair> pairs;
  std::vector<int> unmatched_preds;
  std::vector<int> unmatched_gts;

  std::size_t num_preds() const { return pairs.size() + unmatched_preds.size(); }
  std::size_t num_gts() const { return pairs.size() + unmatched_gts.size(); }
};

/// Greedy one-to-one matching: predictions in descending score order each
/// take the unmatched ground truth with the highest IoU, requiring IoU
/// strictly over 0.5. Ties break by ascending id.
MatchResult match_instances(const std::vector<Instance>& preds,
                            const std::vector<Instance>& gts);

struct PrfScores {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
  /// False when the denominator was empty (value reported as 0).
  bool precision_defined = true;
  bool recall_defined = true;
};

PrfScores detection_metrics(const MatchResult& match);

/// Detection pairs additionally requiring byte-identical transcriptions.
PrfScores e2e_metrics(const MatchResult& match, const std::vector<Instance>& preds,
                      const std::vector<Instance>& gts);

enum class EditDistanceMode {
  kMatchedOnly,
  /// Unmatched instances on either side contribute their full text length.
  kPenalizeUnmatched,
};

/// Unit-cost Levenshtein distance.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// Mean edit distance over detection-matched pairs (or per mode); nullopt
/// when nothing contributes.
std::optional<double> avg_edit_distance(const MatchResult& match,
                                        const std::vector<Instance>& preds,
                                        const std::vector<Instance>& gts,
                                        EditDistanceMode mode = EditDistanceMode::kMatchedOnly);

struct EvalCounts {
  std::size_t predictions = 0;
  std::size_t ground_truth = 0;
  std::size_t detection_tp = 0;
  std::size_t e2e_tp = 0;
  std::size_t ed_pairs = 0;
  double ed_sum = 0.0;
};

struct CategoryMetrics {
  PrfScores detection;
  PrfScores e2e;
  std::optional<double> avg_edit_distance;
  EvalCounts counts;
};

struct MetricsReport {
  CategoryMetrics overall;
  std::map<std::string, CategoryMetrics> by_category;
  std::size_t images = 0;
};

/// Predictions and ground truth of one image under one query context.
struct ImageEval {
  std::vector<Instance> preds;
  std::vector<Instance> gts;
};

/// Scores each category and the overall micro-average (counts summed across
/// categories before computing rates). The "" key counts toward the overall
/// numbers only and never appears in by_category.
MetricsReport per_category_report(const std::map<std::string, std::vector<ImageEval>>& by_category,
                                  EditDistanceMode mode = EditDistanceMode::kMatchedOnly);

}  // namespace stspot
