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

#include "stspot/dataset.hpp"

#include <random>

#include "stspot/instance.hpp"

namespace stspot {
namespace {

void validate_word(const Word& word, const std::string& image_id) {
  if (word.text.empty()) {
    throw Error(ErrorCode::kMalformedHierarchy, "empty word text in image " + image_id);
  }
  if (word.text.find(' ') != std::string::npos) {
    throw Error(ErrorCode::kMalformedHierarchy,
                "word-level text contains a space in image " + image_id);
  }
}

// Uniform 53-bit double in [0, 1); mt19937_64 keeps this reproducible
// across standard libraries, unlike the distribution classes.
double canonical53(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

const char* origin_name(Origin origin) {
  switch (origin) {
    case Origin::kSingle: return "single";
    case Origin::kLeftMerge: return "left-merge";
    case Origin::kRightMerge: return "right-merge";
  }
  return "unknown";
}

bool has_non_alphabetical(std::string_view text) {
  for (char c : text) {
    const bool alpha = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
    if (!alpha) return true;
  }
  return false;
}

std::vector<StructuredImage> build_structured(const HierAnnotation& annotation) {
  std::vector<StructuredImage> out;
  out.reserve(annotation.images.size());
  for (const ImageAnnotation& image : annotation.images) {
    StructuredImage structured{image.image_id, {}};
    int next_id = 0;
    for (const Paragraph& paragraph : image.paragraphs) {
      for (const Line& line : paragraph.lines) {
        if (line.words.empty()) {
          throw Error(ErrorCode::kMalformedHierarchy, "empty line in image " + image.image_id);
        }
        for (const Word& word : line.words) validate_word(word, image.image_id);
        for (std::size_t w = 0; w < line.words.size(); ++w) {
          const Word& word = line.words[w];
          if (!has_non_alphabetical(word.text)) continue;
          structured.instances.push_back(
              {next_id++, word.polygon, word.text, Origin::kSingle});
          if (w > 0) {
            const Word& left = line.words[w - 1];
            structured.instances.push_back({next_id++,
                                            merge_polygons(left.polygon, word.polygon),
                                            left.text + " " + word.text, Origin::kLeftMerge});
          }
          if (w + 1 < line.words.size()) {
            const Word& right = line.words[w + 1];
            structured.instances.push_back({next_id++,
                                            merge_polygons(word.polygon, right.polygon),
                                            word.text + " " + right.text, Origin::kRightMerge});
          }
        }
      }
    }
    out.push_back(std::move(structured));
  }
  return out;
}

SampledQuery sample_query(const StructuredInstance& seed_instance,
                          const std::vector<StructuredInstance>& image_instances,
                          double p_exact, std::uint64_t seed, const Alphabet& alphabet,
                          std::size_t capacity) {
  if (p_exact < 0.0 || p_exact > 1.0) {
    throw Error(ErrorCode::kSchemaViolation, "p_exact must lie in [0, 1]");
  }
  const std::string& text = seed_instance.text;
  if (text.size() > capacity) {
    throw Error(ErrorCode::kCapacityExceeded,
                "instance text length " + std::to_string(text.size()) +
                    " exceeds capacity " + std::to_string(capacity));
  }

  std::mt19937_64 rng(seed);
  QueryPattern pattern{alphabet, {}, ""};
  pattern.positions.reserve(text.size());
  for (char c : text) {
    const CharClass cls = class_of(c, alphabet);
    const bool exact = canonical53(rng) < p_exact;
    if (exact || cls == CharClass::kSpecial || cls == CharClass::kSpace) {
      pattern.positions.push_back(singleton(c, alphabet));
    } else {
      pattern.positions.push_back(class_set(cls, alphabet));
    }
  }
  pattern.source = canonical_pattern(pattern);

  SampledQuery query{pattern.source, encode_multi_hot(pattern, capacity), {}, seed, p_exact};
  for (const StructuredInstance& inst : image_instances) {
    if (query.encoding.matches_lenient(inst.text)) query.positive_ids.push_back(inst.id);
  }
  return query;
}

}  // namespace stspot
