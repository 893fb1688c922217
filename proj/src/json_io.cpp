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

#include "stspot/json_io.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace stspot {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& message) {
  throw Error(ErrorCode::kSchemaViolation, message);
}

const json& require(const json& j, const char* key, const std::string& context) {
  const auto it = j.find(key);
  if (it == j.end()) schema_error(context + ": missing key '" + key + "'");
  return *it;
}

std::string require_string(const json& j, const char* key, const std::string& context) {
  const json& value = require(j, key, context);
  if (!value.is_string()) schema_error(context + ": '" + key + "' must be a string");
  return value.get<std::string>();
}

double require_number(const json& j, const char* key, const std::string& context) {
  const json& value = require(j, key, context);
  if (!value.is_number()) schema_error(context + ": '" + key + "' must be a number");
  return value.get<double>();
}

int require_int(const json& j, const char* key, const std::string& context) {
  const json& value = require(j, key, context);
  if (!value.is_number_integer()) schema_error(context + ": '" + key + "' must be an integer");
  return value.get<int>();
}

const json& require_array(const json& j, const char* key, const std::string& context) {
  const json& value = require(j, key, context);
  if (!value.is_array()) schema_error(context + ": '" + key + "' must be an array");
  return value;
}

int read_schema_version(const json& j, const std::string& context) {
  const int version = require_int(j, "schema_version", context);
  if (version != kSchemaVersion) {
    schema_error(context + ": unsupported schema_version " + std::to_string(version));
  }
  return version;
}

Instance instance_from_json(const json& j, const std::string& context) {
  if (!j.is_object()) schema_error(context + ": instance must be an object");
  Instance inst{require_int(j, "id", context),
                polygon_from_json(require(j, "polygon", context), context), "", 1.0, {}};
  inst.text = require_string(j, "text", context);
  if (j.contains("score")) {
    inst.score = require_number(j, "score", context);
    if (inst.score < 0.0 || inst.score > 1.0) {
      schema_error(context + ": score must lie in [0, 1]");
    }
  }
  if (j.contains("merged_from")) {
    const json& sources = j.at("merged_from");
    if (!sources.is_array()) schema_error(context + ": 'merged_from' must be an array");
    for (const json& s : sources) {
      if (!s.is_number_integer()) schema_error(context + ": 'merged_from' entries must be integers");
      inst.merged_from.push_back(s.get<int>());
    }
  }
  return inst;
}

json instance_to_json(const Instance& inst) {
  json j{{"id", inst.id},
         {"polygon", polygon_to_json(inst.polygon)},
         {"text", inst.text},
         {"score", inst.score}};
  if (!inst.merged_from.empty()) j["merged_from"] = inst.merged_from;
  return j;
}

void check_unique_ids(const std::vector<Instance>& instances, const std::string& context) {
  std::set<int> seen;
  for (const Instance& inst : instances) {
    if (!seen.insert(inst.id).second) {
      schema_error(context + ": duplicate instance id " + std::to_string(inst.id));
    }
  }
}

json prf_to_json(const PrfScores& s) {
  return json{{"precision", s.precision},
              {"recall", s.recall},
              {"f_score", s.f_score},
              {"precision_defined", s.precision_defined},
              {"recall_defined", s.recall_defined}};
}

json category_metrics_to_json(const CategoryMetrics& m) {
  json j{{"detection", prf_to_json(m.detection)},
         {"e2e", prf_to_json(m.e2e)},
         {"counts",
          json{{"predictions", m.counts.predictions},
               {"ground_truth", m.counts.ground_truth},
               {"detection_tp", m.counts.detection_tp},
               {"e2e_tp", m.counts.e2e_tp},
               {"ed_pairs", m.counts.ed_pairs}}}};
  if (m.avg_edit_distance) {
    j["avg_edit_distance"] = *m.avg_edit_distance;
  } else {
    j["avg_edit_distance"] = nullptr;
  }
  return j;
}

}  // namespace

json parse_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) schema_error("input is not valid JSON");
  return j;
}

json polygon_to_json(const Polygon& polygon) {
  json j = json::array();
  for (const Point& p : polygon.vertices()) j.push_back(json::array({p.x, p.y}));
  return j;
}

Polygon polygon_from_json(const json& j, const std::string& context) {
  if (!j.is_array()) schema_error(context + ": polygon must be an array of [x, y] pairs");
  std::vector<Point> vertices;
  vertices.reserve(j.size());
  for (const json& entry : j) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number()) {
      schema_error(context + ": polygon vertices must be [x, y] number pairs");
    }
    vertices.push_back({entry[0].get<double>(), entry[1].get<double>()});
  }
  if (vertices.size() < 3) {
    schema_error(context + ": polygon needs at least 3 vertices");
  }
  return Polygon(std::move(vertices));
}

json detections_to_json(const DetectionsFile& file) {
  json images = json::array();
  std::vector<const DetectionImage*> ordered;
  for (const DetectionImage& image : file.images) ordered.push_back(&image);
  std::sort(ordered.begin(), ordered.end(),
            [](const DetectionImage* a, const DetectionImage* b) { return a->image_id < b->image_id; });
  for (const DetectionImage* image : ordered) {
    json entry{{"image_id", image->image_id}, {"instances", json::array()}};
    if (!image->category.empty()) entry["category"] = image->category;
    for (const Instance& inst : image->instances) entry["instances"].push_back(instance_to_json(inst));
    images.push_back(std::move(entry));
  }
  return json{{"schema_version", file.schema_version}, {"images", images}};
}

DetectionsFile detections_from_json(const json& j) {
  if (!j.is_object()) schema_error("detections: root must be an object");
  DetectionsFile file;
  file.schema_version = read_schema_version(j, "detections");
  std::set<std::string> image_ids;
  for (const json& entry : require_array(j, "images", "detections")) {
    DetectionImage image;
    image.image_id = require_string(entry, "image_id", "detections image");
    if (!image_ids.insert(image.image_id).second) {
      schema_error("detections: duplicate image_id '" + image.image_id + "'");
    }
    if (entry.contains("category")) {
      image.category = require_string(entry, "category", "detections image");
    }
    const std::string context = "detections image '" + image.image_id + "'";
    for (const json& inst : require_array(entry, "instances", context)) {
      image.instances.push_back(instance_from_json(inst, context));
    }
    check_unique_ids(image.instances, context);
    file.images.push_back(std::move(image));
  }
  return file;
}

json structured_to_json(const StructuredFile& file) {
  json images = json::array();
  std::vector<const StructuredImage*> ordered;
  for (const StructuredImage& image : file.images) ordered.push_back(&image);
  std::sort(ordered.begin(), ordered.end(),
            [](const StructuredImage* a, const StructuredImage* b) { return a->image_id < b->image_id; });
  for (const StructuredImage* image : ordered) {
    json instances = json::array();
    for (const StructuredInstance& inst : image->instances) {
      instances.push_back(json{{"id", inst.id},
                               {"polygon", polygon_to_json(inst.polygon)},
                               {"text", inst.text},
                               {"origin", origin_name(inst.origin)}});
    }
    images.push_back(json{{"image_id", image->image_id}, {"instances", instances}});
  }
  return json{{"schema_version", file.schema_version}, {"images", images}};
}

StructuredFile structured_from_json(const json& j) {
  if (!j.is_object()) schema_error("annotations: root must be an object");
  StructuredFile file;
  file.schema_version = read_schema_version(j, "annotations");
  for (const json& entry : require_array(j, "images", "annotations")) {
    StructuredImage image;
    image.image_id = require_string(entry, "image_id", "annotations image");
    const std::string context = "annotations image '" + image.image_id + "'";
    std::set<int> ids;
    for (const json& inst : require_array(entry, "instances", context)) {
      const int id = require_int(inst, "id", context);
      if (!ids.insert(id).second) {
        schema_error(context + ": duplicate instance id " + std::to_string(id));
      }
      const std::string origin_str = require_string(inst, "origin", context);
      Origin origin = Origin::kSingle;
      if (origin_str == "single") {
        origin = Origin::kSingle;
      } else if (origin_str == "left-merge") {
        origin = Origin::kLeftMerge;
      } else if (origin_str == "right-merge") {
        origin = Origin::kRightMerge;
      } else {
        schema_error(context + ": unknown origin '" + origin_str + "'");
      }
      image.instances.push_back({id, polygon_from_json(require(inst, "polygon", context), context),
                                 require_string(inst, "text", context), origin});
    }
    file.images.push_back(std::move(image));
  }
  return file;
}

HierAnnotation hiertext_from_json(const json& j) {
  if (!j.is_object()) schema_error("hiertext: root must be an object");
  HierAnnotation annotation;
  for (const json& entry : require_array(j, "annotations", "hiertext")) {
    ImageAnnotation image;
    image.image_id = require_string(entry, "image_id", "hiertext annotation");
    const std::string context = "hiertext image '" + image.image_id + "'";
    if (!entry.contains("paragraphs")) {
      throw Error(ErrorCode::kMalformedHierarchy, context + ": missing paragraphs");
    }
    for (const json& par : require_array(entry, "paragraphs", context)) {
      Paragraph paragraph;
      for (const json& line : require_array(par, "lines", context)) {
        Line parsed_line;
        for (const json& word : require_array(line, "words", context)) {
          if (!word.contains("vertices")) {
            throw Error(ErrorCode::kMalformedHierarchy, context + ": word is missing its polygon");
          }
          try {
            Word parsed_word{polygon_from_json(word.at("vertices"), context),
                             require_string(word, "text", context)};
            parsed_line.words.push_back(std::move(parsed_word));
          } catch (const Error& e) {
            if (e.code() == ErrorCode::kSchemaViolation ||
                e.code() == ErrorCode::kDegenerateGeometry) {
              throw Error(ErrorCode::kMalformedHierarchy, e.what());
            }
            throw;
          }
        }
        paragraph.lines.push_back(std::move(parsed_line));
      }
      image.paragraphs.push_back(std::move(paragraph));
    }
    annotation.images.push_back(std::move(image));
  }
  return annotation;
}

json queries_to_json(const QuerySetFile& file) {
  json queries = json::array();
  for (const QueryEntry& entry : file.queries) {
    json q{{"pattern", entry.pattern}};
    if (!entry.category.empty()) q["category"] = entry.category;
    if (!entry.image_id.empty()) q["image_id"] = entry.image_id;
    if (!entry.image_ids.empty()) q["image_ids"] = entry.image_ids;
    if (!entry.positive_ids.empty()) q["positive_ids"] = entry.positive_ids;
    if (entry.seed) q["seed"] = *entry.seed;
    if (entry.p_exact) q["p_exact"] = *entry.p_exact;
    queries.push_back(std::move(q));
  }
  return json{{"schema_version", file.schema_version}, {"queries", queries}};
}

QuerySetFile queries_from_json(const json& j, const Alphabet& alphabet) {
  if (!j.is_object()) schema_error("queries: root must be an object");
  QuerySetFile file;
  file.schema_version = read_schema_version(j, "queries");
  for (const json& entry : require_array(j, "queries", "queries")) {
    QueryEntry q;
    q.pattern = require_string(entry, "pattern", "query");
    parse_pattern(q.pattern, alphabet);  // validate
    if (entry.contains("category")) q.category = require_string(entry, "category", "query");
    if (entry.contains("image_id")) q.image_id = require_string(entry, "image_id", "query");
    if (entry.contains("image_ids")) {
      for (const json& id : require_array(entry, "image_ids", "query")) {
        if (!id.is_string()) schema_error("query: 'image_ids' entries must be strings");
        q.image_ids.push_back(id.get<std::string>());
      }
    }
    if (entry.contains("positive_ids")) {
      for (const json& id : require_array(entry, "positive_ids", "query")) {
        if (!id.is_number_integer()) schema_error("query: 'positive_ids' entries must be integers");
        q.positive_ids.push_back(id.get<int>());
      }
    }
    if (entry.contains("seed")) q.seed = entry.at("seed").get<std::uint64_t>();
    if (entry.contains("p_exact")) q.p_exact = entry.at("p_exact").get<double>();
    file.queries.push_back(std::move(q));
  }
  return file;
}

json multi_hot_to_json(const MultiHotEncoding& encoding) {
  json rows = json::array();
  for (const CharSet& row : encoding.active_rows()) {
    rows.push_back(row.indices());
  }
  return json{{"capacity", encoding.capacity()},
              {"active_length", encoding.active_length()},
              {"alphabet_id", encoding.alphabet().id()},
              {"rows", rows}};
}

MultiHotEncoding multi_hot_from_json(const json& j, const Alphabet& alphabet) {
  if (!j.is_object()) schema_error("encoding: root must be an object");
  const std::string alphabet_id = require_string(j, "alphabet_id", "encoding");
  if (alphabet_id != alphabet.id()) {
    schema_error("encoding: alphabet_id '" + alphabet_id + "' does not match '" +
                 alphabet.id() + "'");
  }
  const int capacity = require_int(j, "capacity", "encoding");
  const int active_length = require_int(j, "active_length", "encoding");
  if (capacity < 0 || active_length < 0) schema_error("encoding: negative length");
  const json& rows = require_array(j, "rows", "encoding");
  if (rows.size() != static_cast<std::size_t>(active_length)) {
    schema_error("encoding: active_length does not match the number of rows");
  }
  std::vector<CharSet> parsed;
  parsed.reserve(rows.size());
  for (const json& row : rows) {
    if (!row.is_array()) schema_error("encoding: rows must be arrays of indices");
    CharSet set(alphabet.size());
    for (const json& k : row) {
      if (!k.is_number_integer()) schema_error("encoding: row indices must be integers");
      const long long value = k.get<long long>();
      if (value < 0 || value >= static_cast<long long>(alphabet.size())) {
        schema_error("encoding: row index " + std::to_string(value) + " out of range");
      }
      set.add(static_cast<std::size_t>(value));
    }
    parsed.push_back(std::move(set));
  }
  return MultiHotEncoding(alphabet, static_cast<std::size_t>(capacity), std::move(parsed));
}

json one_hot_to_json(const OneHotEncoding& encoding) {
  json classes = json::array();
  for (std::size_t m = 0; m < encoding.capacity(); ++m) {
    classes.push_back(char_class_name(encoding.class_at(m)));
  }
  return json{{"classes", classes}};
}

OneHotEncoding one_hot_from_json(const json& j, const Alphabet& alphabet) {
  if (!j.is_object()) schema_error("encoding: root must be an object");
  const json& classes = require_array(j, "classes", "encoding");
  std::vector<CharClass> active;
  bool padding_seen = false;
  for (const json& name : classes) {
    if (!name.is_string()) schema_error("encoding: class entries must be strings");
    const auto cls = char_class_from_name(name.get<std::string>());
    if (!cls) schema_error("encoding: unknown class '" + name.get<std::string>() + "'");
    if (*cls == CharClass::kPadding) {
      padding_seen = true;
      continue;
    }
    if (padding_seen) schema_error("encoding: non-padding class after padding");
    active.push_back(*cls);
  }
  return OneHotEncoding(alphabet, classes.size(), std::move(active));
}

json report_to_json(const MetricsReport& report, bool include_by_category) {
  json by_category = json::object();
  if (include_by_category) {
    for (const auto& [category, metrics] : report.by_category) {
      by_category[category] = category_metrics_to_json(metrics);
    }
  }
  return json{{"overall", category_metrics_to_json(report.overall)},
              {"by_category", by_category},
              {"counts", json{{"images", report.images},
                              {"categories", report.by_category.size()},
                              {"predictions", report.overall.counts.predictions},
                              {"ground_truth", report.overall.counts.ground_truth}}}};
}

std::map<std::string, std::vector<ImageEval>> group_by_category(const DetectionsFile& gt,
                                                                const DetectionsFile& preds) {
  std::map<std::string, const DetectionImage*> gt_by_id;
  for (const DetectionImage& image : gt.images) gt_by_id.emplace(image.image_id, &image);
  std::map<std::string, const DetectionImage*> preds_by_id;
  for (const DetectionImage& image : preds.images) preds_by_id.emplace(image.image_id, &image);

  std::set<std::string> ids;
  for (const auto& [id, image] : gt_by_id) ids.insert(id);
  for (const auto& [id, image] : preds_by_id) ids.insert(id);

  std::map<std::string, std::vector<ImageEval>> grouped;
  for (const std::string& id : ids) {
    ImageEval eval;
    std::string category;
    if (const auto it = gt_by_id.find(id); it != gt_by_id.end()) {
      eval.gts = it->second->instances;
      category = it->second->category;
    }
    if (const auto it = preds_by_id.find(id); it != preds_by_id.end()) {
      eval.preds = it->second->instances;
    }
    grouped[category].push_back(std::move(eval));
  }
  return grouped;
}

}  // namespace stspot
