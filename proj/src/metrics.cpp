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

#include "stspot/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stspot {
namespace {

PrfScores scores_from_counts(std::size_t tp, std::size_t num_preds, std::size_t num_gts) {
  PrfScores s;
  s.precision_defined = num_preds > 0;
  s.recall_defined = num_gts > 0;
  s.precision = s.precision_defined ? static_cast<double>(tp) / static_cast<double>(num_preds) : 0.0;
  s.recall = s.recall_defined ? static_cast<double>(tp) / static_cast<double>(num_gts) : 0.0;
  const double pr = s.precision + s.recall;
  s.f_score = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
  return s;
}

std::map<int, const Instance*> by_id(const std::vector<Instance>& instances) {
  std::map<int, const Instance*> out;
  for (const Instance& inst : instances) out[inst.id] = &inst;
  return out;
}

std::size_t count_e2e_tp(const MatchResult& match, const std::vector<Instance>& preds,
                         const std::vector<Instance>& gts) {
  const auto pred_map = by_id(preds);
  const auto gt_map = by_id(gts);
  std::size_t tp = 0;
  for (const MatchedPair& pair : match.pairs) {
    if (pred_map.at(pair.pred_id)->text == gt_map.at(pair.gt_id)->text) ++tp;
  }
  return tp;
}

CategoryMetrics metrics_from_counts(const EvalCounts& counts) {
  CategoryMetrics m;
  m.counts = counts;
  m.detection = scores_from_counts(counts.detection_tp, counts.predictions, counts.ground_truth);
  m.e2e = scores_from_counts(counts.e2e_tp, counts.predictions, counts.ground_truth);
  if (counts.ed_pairs > 0) {
    m.avg_edit_distance = counts.ed_sum / static_cast<double>(counts.ed_pairs);
  }
  return m;
}

}  // namespace

MatchResult match_instances(const std::vector<Instance>& preds,
                            const std::vector<Instance>& gts) {
  std::vector<std::size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (preds[a].score != preds[b].score) return preds[a].score > preds[b].score;
    return preds[a].id < preds[b].id;
  });

  MatchResult result;
  std::vector<bool> gt_taken(gts.size(), false);
  for (std::size_t pi : order) {
    int best_gt = -1;
    double best_iou = 0.0;
    for (std::size_t gi = 0; gi < gts.size(); ++gi) {
      if (gt_taken[gi]) continue;
      const double value = iou(preds[pi].polygon, gts[gi].polygon).value;
      if (value <= 0.5) continue;  // strictly over 0.5
      if (value > best_iou ||
          (value == best_iou && best_gt >= 0 && gts[gi].id < gts[static_cast<std::size_t>(best_gt)].id)) {
        best_iou = value;
        best_gt = static_cast<int>(gi);
      }
    }
    if (best_gt >= 0) {
      gt_taken[static_cast<std::size_t>(best_gt)] = true;
      result.pairs.push_back({preds[pi].id, gts[static_cast<std::size_t>(best_gt)].id, best_iou});
    } else {
      result.unmatched_preds.push_back(preds[pi].id);
    }
  }
  for (std::size_t gi = 0; gi < gts.size(); ++gi) {
    if (!gt_taken[gi]) result.unmatched_gts.push_back(gts[gi].id);
  }
  std::sort(result.unmatched_preds.begin(), result.unmatched_preds.end());
  std::sort(result.unmatched_gts.begin(), result.unmatched_gts.end());
  return result;
}

PrfScores detection_metrics(const MatchResult& match) {
  return scores_from_counts(match.pairs.size(), match.num_preds(), match.num_gts());
}

PrfScores e2e_metrics(const MatchResult& match, const std::vector<Instance>& preds,
                      const std::vector<Instance>& gts) {
  return scores_from_counts(count_e2e_tp(match, preds, gts), match.num_preds(), match.num_gts());
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t previous = row[j];
      if (a[i - 1] == b[j - 1]) {
        row[j] = diagonal;
      } else {
        row[j] = 1 + std::min({row[j - 1], row[j], diagonal});
      }
      diagonal = previous;
    }
  }
  return row[b.size()];
}

std::optional<double> avg_edit_distance(const MatchResult& match,
                                        const std::vector<Instance>& preds,
                                        const std::vector<Instance>& gts,
                                        EditDistanceMode mode) {
  const auto pred_map = by_id(preds);
  const auto gt_map = by_id(gts);
  double sum = 0.0;
  std::size_t count = 0;
  for (const MatchedPair& pair : match.pairs) {
    sum += static_cast<double>(
        levenshtein(pred_map.at(pair.pred_id)->text, gt_map.at(pair.gt_id)->text));
    ++count;
  }
  if (mode == EditDistanceMode::kPenalizeUnmatched) {
    for (int id : match.unmatched_preds) {
      sum += static_cast<double>(pred_map.at(id)->text.size());
      ++count;
    }
    for (int id : match.unmatched_gts) {
      sum += static_cast<double>(gt_map.at(id)->text.size());
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

MetricsReport per_category_report(const std::map<std::string, std::vector<ImageEval>>& by_category,
                                  EditDistanceMode mode) {
  MetricsReport report;
  EvalCounts total;
  for (const auto& [category, images] : by_category) {
    EvalCounts counts;
    for (const ImageEval& image : images) {
      const MatchResult match = match_instances(image.preds, image.gts);
      counts.predictions += match.num_preds();
      counts.ground_truth += match.num_gts();
      counts.detection_tp += match.pairs.size();
      counts.e2e_tp += count_e2e_tp(match, image.preds, image.gts);
      const auto pred_map = by_id(image.preds);
      const auto gt_map = by_id(image.gts);
      for (const MatchedPair& pair : match.pairs) {
        counts.ed_sum += static_cast<double>(
            levenshtein(pred_map.at(pair.pred_id)->text, gt_map.at(pair.gt_id)->text));
        ++counts.ed_pairs;
      }
      if (mode == EditDistanceMode::kPenalizeUnmatched) {
        for (int id : match.unmatched_preds) {
          counts.ed_sum += static_cast<double>(pred_map.at(id)->text.size());
          ++counts.ed_pairs;
        }
        for (int id : match.unmatched_gts) {
          counts.ed_sum += static_cast<double>(gt_map.at(id)->text.size());
          ++counts.ed_pairs;
        }
      }
      report.images += 1;
    }
    total.predictions += counts.predictions;
    total.ground_truth += counts.ground_truth;
    total.detection_tp += counts.detection_tp;
    total.e2e_tp += counts.e2e_tp;
    total.ed_pairs += counts.ed_pairs;
    total.ed_sum += counts.ed_sum;
    if (!category.empty()) {
      report.by_category.emplace(category, metrics_from_counts(counts));
    }
  }
  report.overall = metrics_from_counts(total);
  return report;
}

}  // namespace stspot
