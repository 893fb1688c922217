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

#include <string>
#include <utility>
#include <vector>

#include "stspot/geometry.hpp"
#include "stspot/pattern.hpp"

namespace stspot {

/// One detection: polygon, transcription, confidence. merged_from lists the
/// leaf source ids when the instance was produced by merging.
struct Instance {
  int id = 0;
  Polygon polygon;
  std::string text;
  double score = 1.0;
  std::vector<int> merged_from;
};

/// Leaf ids covered by an instance: itself when unmerged.
std::vector<int> provenance(const Instance& instance);

struct MergeConfig {
  /// Gap threshold multiplier: pairs merge when their horizontal gap is at
  /// most alpha times the mean bbox height of the pair.
  double alpha = 1.0;
  int max_iterations = 100;
  /// Instances whose text already matches are excluded from further merging.
  bool freeze_matched = true;
};

/// Keeps exactly the instances whose text matches the pattern (anchored,
/// full-string). Out-of-alphabet transcriptions never match.
std::vector<Instance> filter_matching(const std::vector<Instance>& instances,
                                      const QueryPattern& pattern);

/// Splits a single-space pattern into the sub-patterns left and right of the
/// space position. Throws NoSpace / MultipleSpaces outside that shape.
std::pair<QueryPattern, QueryPattern> split_query_at_space(const QueryPattern& pattern);

/// Word-granularity adaptation for single-space queries: instances matching
/// the sub-queries are merged pairwise (hull polygon, space-joined text, mean
/// score) when horizontally adjacent within the gap threshold. Instances
/// already matching the full pattern pass through; everything else is
/// dropped. Spaceless patterns reduce to filter_matching.
std::vector<Instance> postprocess_validation(const std::vector<Instance>& instances,
                                             const QueryPattern& pattern,
                                             const MergeConfig& config = {});

/// Fragment reassembly for arbitrary queries: repeatedly merges the closest
/// compatible pair under the gap threshold, re-testing each merge result
/// against the pattern and freezing matches. Returns the matching instances.
std::vector<Instance> postprocess_iterative(const std::vector<Instance>& instances,
                                            const QueryPattern& pattern,
                                            const MergeConfig& config = {});

}  // namespace stspot
