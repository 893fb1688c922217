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

#include "stspot/instance.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace stspot {
namespace {

double merge_threshold(const Instance& a, const Instance& b, double alpha) {
  return alpha * 0.5 * (a.polygon.bbox().height() + b.polygon.bbox().height());
}

// Reading order: ascending centroid x, ties by centroid y, then id.
bool reading_order_before(const Instance& a, const Instance& b) {
  const Point ca = a.polygon.centroid();
  const Point cb = b.polygon.centroid();
  return std::tie(ca.x, ca.y, a.id) < std::tie(cb.x, cb.y, b.id);
}

std::vector<int> merged_provenance(const Instance& a, const Instance& b) {
  std::vector<int> ids = provenance(a);
  const std::vector<int> other = provenance(b);
  ids.insert(ids.end(), other.begin(), other.end());
  std::sort(ids.begin(), ids.end());
  return ids;
}

// The merged transcription joins with a space exactly when the pattern
// admits one at the junction position.
std::string join_texts_for(const QueryPattern& pattern, const std::string& left,
                           const std::string& right) {
  const int space_k = pattern.alphabet.index(' ');
  const bool spaced = space_k >= 0 && left.size() < pattern.length() &&
                      pattern.positions[left.size()].contains(static_cast<std::size_t>(space_k));
  return spaced ? left + " " + right : left + right;
}

Instance make_merged(const Instance& left, const Instance& right, std::string text, int id) {
  return Instance{id, merge_polygons(left.polygon, right.polygon), std::move(text),
                  0.5 * (left.score + right.score), merged_provenance(left, right)};
}

int next_free_id(const std::vector<Instance>& instances) {
  int next = 0;
  for (const Instance& inst : instances) next = std::max(next, inst.id + 1);
  return next;
}

std::vector<Instance> sorted_by_id(std::vector<Instance> instances) {
  std::sort(instances.begin(), instances.end(),
            [](const Instance& a, const Instance& b) { return a.id < b.id; });
  return instances;
}

std::size_t count_space_positions(const QueryPattern& pattern) {
  const int space_k = pattern.alphabet.index(' ');
  if (space_k < 0) return 0;
  std::size_t count = 0;
  for (const CharSet& set : pattern.positions) {
    if (set.contains(static_cast<std::size_t>(space_k))) ++count;
  }
  return count;
}

}  // namespace

std::vector<int> provenance(const Instance& instance) {
  if (instance.merged_from.empty()) return {instance.id};
  return instance.merged_from;
}

std::vector<Instance> filter_matching(const std::vector<Instance>& instances,
                                      const QueryPattern& pattern) {
  const MultiHotEncoding encoding = encode_multi_hot(pattern, pattern.length());
  std::vector<Instance> kept;
  for (const Instance& inst : instances) {
    if (encoding.matches_lenient(inst.text)) kept.push_back(inst);
  }
  return kept;
}

std::pair<QueryPattern, QueryPattern> split_query_at_space(const QueryPattern& pattern) {
  const int space_k = pattern.alphabet.index(' ');
  std::vector<std::size_t> space_positions;
  for (std::size_t m = 0; m < pattern.positions.size(); ++m) {
    if (space_k >= 0 && pattern.positions[m].contains(static_cast<std::size_t>(space_k))) {
      space_positions.push_back(m);
    }
  }
  if (space_positions.empty()) {
    throw Error(ErrorCode::kNoSpace, "pattern has no space position to split at");
  }
  if (space_positions.size() > 1) {
    throw Error(ErrorCode::kMultipleSpaces,
                "pattern has " + std::to_string(space_positions.size()) + " space positions");
  }
  const std::size_t m = space_positions.front();
  if (m == 0 || m + 1 == pattern.positions.size()) {
    throw Error(ErrorCode::kSyntaxError, "space at the pattern edge leaves an empty sub-query");
  }
  QueryPattern left{pattern.alphabet,
                    {pattern.positions.begin(), pattern.positions.begin() + static_cast<long>(m)},
                    ""};
  left.source = canonical_pattern(left);
  QueryPattern right{pattern.alphabet,
                     {pattern.positions.begin() + static_cast<long>(m) + 1, pattern.positions.end()},
                     ""};
  right.source = canonical_pattern(right);
  return {std::move(left), std::move(right)};
}

std::vector<Instance> postprocess_validation(const std::vector<Instance>& instances,
                                             const QueryPattern& pattern,
                                             const MergeConfig& config) {
  const std::size_t spaces = count_space_positions(pattern);
  if (spaces == 0) {
    return sorted_by_id(filter_matching(instances, pattern));
  }
  if (spaces > 1) {
    throw Error(ErrorCode::kMultipleSpaces,
                "the validation strategy handles at most one space position");
  }
  const auto [left_pattern, right_pattern] = split_query_at_space(pattern);
  const MultiHotEncoding full = encode_multi_hot(pattern, pattern.length());
  const MultiHotEncoding left = encode_multi_hot(left_pattern, left_pattern.length());
  const MultiHotEncoding right = encode_multi_hot(right_pattern, right_pattern.length());

  std::vector<Instance> out;
  for (const Instance& inst : instances) {
    // Instances already carrying the spaced transcription pass through.
    if (full.matches_lenient(inst.text)) out.push_back(inst);
  }

  struct Candidate {
    double gap;
    const Instance* left;
    const Instance* right;
  };
  std::vector<Candidate> candidates;
  for (const Instance& a : instances) {
    if (!left.matches_lenient(a.text)) continue;
    for (const Instance& b : instances) {
      if (a.id == b.id || !right.matches_lenient(b.text)) continue;
      if (!reading_order_before(a, b)) continue;
      const std::optional<double> gap = gap_distance(a.polygon, b.polygon);
      if (!gap || *gap > merge_threshold(a, b, config.alpha)) continue;
      candidates.push_back({*gap, &a, &b});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    const Point xl = x.left->polygon.centroid();
    const Point yl = y.left->polygon.centroid();
    const Point xr = x.right->polygon.centroid();
    const Point yr = y.right->polygon.centroid();
    return std::tie(x.gap, xl.x, xl.y, xr.x, xr.y, x.left->id, x.right->id) <
           std::tie(y.gap, yl.x, yl.y, yr.x, yr.y, y.left->id, y.right->id);
  });

  // Closest-first matching so no instance feeds two merges.
  std::set<int> used;
  int next_id = next_free_id(instances);
  for (const Candidate& cand : candidates) {
    if (used.count(cand.left->id) || used.count(cand.right->id)) continue;
    Instance merged = make_merged(*cand.left, *cand.right,
                                  cand.left->text + " " + cand.right->text, next_id);
    if (!full.matches_lenient(merged.text)) continue;
    ++next_id;
    used.insert(cand.left->id);
    used.insert(cand.right->id);
    out.push_back(std::move(merged));
  }
  return sorted_by_id(std::move(out));
}

std::vector<Instance> postprocess_iterative(const std::vector<Instance>& instances,
                                            const QueryPattern& pattern,
                                            const MergeConfig& config) {
  const MultiHotEncoding full = encode_multi_hot(pattern, pattern.length());
  std::vector<Instance> pool = sorted_by_id(instances);
  std::set<int> frozen;
  for (const Instance& inst : pool) {
    if (full.matches_lenient(inst.text)) frozen.insert(inst.id);
  }
  int next_id = next_free_id(pool);

  for (int iteration = 0; iteration < config.max_iterations; ++iteration) {
    struct Best {
      double gap = 0.0;
      std::size_t left = 0;
      std::size_t right = 0;
      bool found = false;
    } best;
    auto better = [&](double gap, std::size_t li, std::size_t ri) {
      if (!best.found) return true;
      const Point nl = pool[li].polygon.centroid();
      const Point nr = pool[ri].polygon.centroid();
      const Point bl = pool[best.left].polygon.centroid();
      const Point br = pool[best.right].polygon.centroid();
      return std::tie(gap, nl.x, nl.y, nr.x, nr.y, pool[li].id, pool[ri].id) <
             std::tie(best.gap, bl.x, bl.y, br.x, br.y, pool[best.left].id, pool[best.right].id);
    };
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (config.freeze_matched && frozen.count(pool[i].id)) continue;
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if (config.freeze_matched && frozen.count(pool[j].id)) continue;
        const std::optional<double> gap = gap_distance(pool[i].polygon, pool[j].polygon);
        if (!gap || *gap > merge_threshold(pool[i], pool[j], config.alpha)) continue;
        const bool i_first = reading_order_before(pool[i], pool[j]);
        const std::size_t li = i_first ? i : j;
        const std::size_t ri = i_first ? j : i;
        if (better(*gap, li, ri)) best = {*gap, li, ri, true};
      }
    }
    if (!best.found) break;

    const Instance& left = pool[best.left];
    const Instance& right = pool[best.right];
    Instance merged = make_merged(left, right, join_texts_for(pattern, left.text, right.text),
                                  next_id++);
    frozen.erase(left.id);
    frozen.erase(right.id);
    if (full.matches_lenient(merged.text)) frozen.insert(merged.id);
    std::vector<Instance> next_pool;
    next_pool.reserve(pool.size() - 1);
    for (std::size_t idx = 0; idx < pool.size(); ++idx) {
      if (idx != best.left && idx != best.right) next_pool.push_back(std::move(pool[idx]));
    }
    next_pool.push_back(std::move(merged));
    pool = sorted_by_id(std::move(next_pool));
  }

  std::vector<Instance> out;
  for (const Instance& inst : pool) {
    if (full.matches_lenient(inst.text)) out.push_back(inst);
  }
  return out;
}

}  // namespace stspot
