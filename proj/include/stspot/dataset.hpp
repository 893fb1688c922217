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
#include <string>
#include <string_view>
#include <vector>

#include "stspot/geometry.hpp"
#include "stspot/pattern.hpp"

namespace stspot {

/// Hierarchical annotation: image -> paragraphs -> lines -> words.
/// Word order within a line is reading order.
struct Word {
  Polygon polygon;
  std::string text;
};

struct Line {
  std::vector<Word> words;
};

struct Paragraph {
  std::vector<Line> lines;
};

struct ImageAnnotation {
  std::string image_id;
  std::vector<Paragraph> paragraphs;
};

struct HierAnnotation {
  std::vector<ImageAnnotation> images;
};

enum class Origin : std::uint8_t { kSingle, kLeftMerge, kRightMerge };

const char* origin_name(Origin origin);

struct StructuredInstance {
  int id = 0;
  Polygon polygon;
  std::string text;
  Origin origin = Origin::kSingle;
};

struct StructuredImage {
  std::string image_id;
  std::vector<StructuredInstance> instances;
};

/// True when text has at least one character outside A-Z/a-z.
bool has_non_alphabetical(std::string_view text);

/// Turns word-granularity annotations into structured-text instances: every
/// word with a non-alphabetical character is kept as-is and additionally
/// merged (hull polygon, space-joined text) with its left and right line
/// neighbors when they exist. Throws MalformedHierarchy on empty lines and
/// empty or space-containing word texts.
std::vector<StructuredImage> build_structured(const HierAnnotation& annotation);

/// A query sampled from one instance's transcription.
struct SampledQuery {
  std::string pattern;  // canonical string form
  MultiHotEncoding encoding;
  std::vector<int> positive_ids;
  std::uint64_t seed = 0;
  double p_exact = 0.0;
};

/// Generates a query from the seed instance: each character becomes either
/// its exact singleton (with probability p_exact) or the full set of its
/// class; special characters always stay exact singletons. Every instance of
/// the image whose text matches is listed as a positive, the seed instance
/// among them by construction. Deterministic for a given seed.
SampledQuery sample_query(const StructuredInstance& seed_instance,
                          const std::vector<StructuredInstance>& image_instances,
                          double p_exact, std::uint64_t seed,
                          const Alphabet& alphabet = Alphabet::printable_ascii(),
                          std::size_t capacity = kDefaultCapacity);

}  // namespace stspot
