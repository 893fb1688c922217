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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "stspot/dataset.hpp"
#include "stspot/instance.hpp"
#include "stspot/metrics.hpp"

namespace stspot {

inline constexpr int kSchemaVersion = 1;

/// Detections (or ground truth) for one image. category is optional and
/// only used when scoring per category.
struct DetectionImage {
  std::string image_id;
  std::string category;
  std::vector<Instance> instances;
};

struct DetectionsFile {
  int schema_version = kSchemaVersion;
  std::vector<DetectionImage> images;
};

struct StructuredFile {
  int schema_version = kSchemaVersion;
  std::vector<StructuredImage> images;
};

/// One query entry. Only pattern is mandatory; sampled query sets carry
/// image_id / positive_ids / seed, evaluation query sets carry category.
struct QueryEntry {
  std::string pattern;
  std::string category;
  std::string image_id;
  std::vector<std::string> image_ids;
  std::vector<int> positive_ids;
  std::optional<std::uint64_t> seed;
  std::optional<double> p_exact;
};

struct QuerySetFile {
  int schema_version = kSchemaVersion;
  std::vector<QueryEntry> queries;
};

/// Parses text as JSON; throws SchemaViolation on malformed input.
nlohmann::json parse_json_text(const std::string& text);

nlohmann::json polygon_to_json(const Polygon& polygon);
Polygon polygon_from_json(const nlohmann::json& j, const std::string& context);

nlohmann::json detections_to_json(const DetectionsFile& file);
DetectionsFile detections_from_json(const nlohmann::json& j);

nlohmann::json structured_to_json(const StructuredFile& file);
StructuredFile structured_from_json(const nlohmann::json& j);

/// HierText-style hierarchy: {"annotations": [{"image_id", "paragraphs":
/// [{"lines": [{"words": [{"vertices", "text"}]}]}]}]}. Unknown keys are
/// ignored. Throws MalformedHierarchy / SchemaViolation on structural
/// problems.
HierAnnotation hiertext_from_json(const nlohmann::json& j);

nlohmann::json queries_to_json(const QuerySetFile& file);
/// Every pattern must parse under the given alphabet.
QuerySetFile queries_from_json(const nlohmann::json& j, const Alphabet& alphabet);

/// {capacity, active_length, alphabet_id, rows}: sparse rows of k-indices,
/// padding rows omitted.
nlohmann::json multi_hot_to_json(const MultiHotEncoding& encoding);
MultiHotEncoding multi_hot_from_json(const nlohmann::json& j, const Alphabet& alphabet);

/// {classes: [...]}: one class name per position up to capacity, padding
/// included.
nlohmann::json one_hot_to_json(const OneHotEncoding& encoding);
OneHotEncoding one_hot_from_json(const nlohmann::json& j, const Alphabet& alphabet);

nlohmann::json report_to_json(const MetricsReport& report, bool include_by_category);

/// Pairs prediction and ground-truth images by image id and groups them by
/// the ground-truth category ("" when absent).
std::map<std::string, std::vector<ImageEval>> group_by_category(const DetectionsFile& gt,
                                                                const DetectionsFile& preds);

}  // namespace stspot
