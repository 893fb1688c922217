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

#include "stspot/alphabet.hpp"

#include <fstream>
#include <sstream>

#include "stspot/error.hpp"

namespace stspot {

const Alphabet& Alphabet::printable_ascii() {
  static const Alphabet instance = [] {
    std::string chars;
    for (char c = ' '; c <= '~'; ++c) chars.push_back(c);
    return from_chars(chars, std::string(kPrintableAsciiId));
  }();
  return instance;
}

Alphabet Alphabet::from_chars(std::string_view chars, std::string id) {
  if (chars.empty()) {
    throw Error(ErrorCode::kSchemaViolation, "alphabet must not be empty");
  }
  if (chars.size() > 256) {
    throw Error(ErrorCode::kSchemaViolation, "alphabet holds at most 256 characters");
  }
  Alphabet alphabet;
  alphabet.chars_.assign(chars);
  alphabet.id_ = std::move(id);
  for (std::size_t k = 0; k < chars.size(); ++k) {
    const auto byte = static_cast<unsigned char>(chars[k]);
    if (alphabet.index_[byte] >= 0) {
      throw Error(ErrorCode::kSchemaViolation,
                  "alphabet characters must be distinct (duplicate at index " +
                      std::to_string(k) + ")");
    }
    alphabet.index_[byte] = static_cast<std::int16_t>(k);
  }
  if (!alphabet.contains(' ')) {
    throw Error(ErrorCode::kSchemaViolation,
                "alphabet must contain the space character");
  }
  return alphabet;
}

Alphabet Alphabet::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kSchemaViolation,
                "cannot read alphabet file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  std::string chars = buffer.str();
  // Strip exactly one trailing newline so editors can keep one.
  if (!chars.empty() && chars.back() == '\n') chars.pop_back();
  if (!chars.empty() && chars.back() == '\r') chars.pop_back();
  return from_chars(chars, "file:" + path.stem().string());
}

}  // namespace stspot
