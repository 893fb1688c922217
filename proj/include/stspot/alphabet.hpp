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

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace stspot {

inline constexpr std::string_view kPrintableAsciiId = "ascii-printable-95";

/// Ordered character inventory indexing the columns of an encoding.
/// Characters are distinct and the space character is always a member,
/// so spaced queries stay encodable under any configured alphabet.
class Alphabet {
 public:
  /// The 95 printable ASCII characters, space through '~'.
  static const Alphabet& printable_ascii();

  /// Builds an alphabet from an explicit character sequence.
  /// Throws SchemaViolation on duplicates or a missing space character.
  static Alphabet from_chars(std::string_view chars, std::string id);

  /// Reads the ordered character set from a file (raw bytes, one trailing
  /// newline stripped). The alphabet id becomes "file:<stem>".
  static Alphabet from_file(const std::filesystem::path& path);

  /// Index of c, or -1 when c is not a member.
  int index(char c) const { return index_[static_cast<unsigned char>(c)]; }
  bool contains(char c) const { return index(c) >= 0; }
  char at(std::size_t k) const { return chars_.at(k); }
  std::size_t size() const { return chars_.size(); }
  const std::string& chars() const { return chars_; }
  const std::string& id() const { return id_; }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Alphabet() { index_.fill(-1); }

  std::string chars_;
  std::string id_;
  std::array<std::int16_t, 256> index_{};
};

}  // namespace stspot
