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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "stspot/alphabet.hpp"
#include "stspot/error.hpp"

namespace stspot {

/// Default maximum recognition length (pattern capacity).
inline constexpr std::size_t kDefaultCapacity = 25;

/// Six-way character partition used by the one-hot encoding:
/// space = {' '}, number = 0-9, letter = A-Z/a-z, separator = {',','-','_'},
/// special = everything else, padding = positions past the active length.
enum class CharClass : std::uint8_t {
  kSpace,
  kNumber,
  kLetter,
  kSeparator,
  kSpecial,
  kPadding,
};

const char* char_class_name(CharClass cls);
std::optional<CharClass> char_class_from_name(std::string_view name);

/// Class of a character, ignoring alphabet membership.
CharClass intrinsic_char_class(char c);

/// Class of an alphabet member; throws UnknownCharacter otherwise.
CharClass class_of(char c, const Alphabet& alphabet);

/// Set of alphabet indices admitted at one expanded pattern position.
class CharSet {
 public:
  CharSet() = default;
  explicit CharSet(std::size_t alphabet_size) : bits_(alphabet_size, false) {}

  void add(std::size_t k) { bits_.at(k) = true; }
  bool contains(std::size_t k) const { return k < bits_.size() && bits_[k]; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::size_t universe_size() const { return bits_.size(); }
  /// Flips every bit (complement within the alphabet).
  void complement();
  /// Ascending list of set indices.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const CharSet&, const CharSet&) = default;

 private:
  std::vector<bool> bits_;
};

/// All alphabet members.
CharSet full_set(const Alphabet& alphabet);
/// Alphabet members belonging to cls (empty for kPadding).
CharSet class_set(CharClass cls, const Alphabet& alphabet);
/// {c}; throws UnknownCharacter when c is not an alphabet member.
CharSet singleton(char c, const Alphabet& alphabet);

/// A parsed fixed-length pattern: one character set per expanded position.
/// Repetitions are fully expanded, so position m of the pattern lines up
/// with character m of any matching string.
struct QueryPattern {
  Alphabet alphabet;
  std::vector<CharSet> positions;
  std::string source;

  std::size_t length() const { return positions.size(); }
};

/// Parses the supported pattern grammar:
///   - literal characters (including space, ':', '}' and ']' outside classes)
///   - escapes: \d (digits), \s (space), \b (ignored; matching is anchored),
///     and literal \\ \. \{ \[ \$ \- \] \} \^
///   - '.' matches any alphabet character
///   - classes [...] with literals and byte-value ranges; [^...] complements
///     within the alphabet
///   - fixed repetition {n}, n >= 1, applied to the preceding token
/// Rejected with UnsupportedOperand: + * ? | ( ) and anchors ^ $ outside
/// classes, and variable repetitions {n,m} / {n-m}. When max_length is set,
/// expansion past it raises LengthOverflow.
QueryPattern parse_pattern(std::string_view src,
                           const Alphabet& alphabet = Alphabet::printable_ascii(),
                           std::optional<std::size_t> max_length = std::nullopt);

/// Renders a pattern string that reparses to exactly the same position sets.
/// Equal consecutive positions collapse to a {n} repetition.
std::string canonical_pattern(const QueryPattern& pattern);

enum class MatchVerdict { kMatch, kNoMatch, kUnknownCharacter };

/// Binary matrix H: row m marks every alphabet character admitted at string
/// position m. Rows past the active length are implicit all-zero padding.
class MultiHotEncoding {
 public:
  MultiHotEncoding(Alphabet alphabet, std::size_t capacity,
                   std::vector<CharSet> active_rows);

  std::size_t capacity() const { return capacity_; }
  std::size_t active_length() const { return rows_.size(); }
  const std::vector<CharSet>& active_rows() const { return rows_; }
  /// Row m; all-zero beyond the active length.
  CharSet row(std::size_t m) const;
  const Alphabet& alphabet() const { return alphabet_; }

  /// Anchored fixed-length match: the candidate must have exactly
  /// active_length() characters, each admitted by its row.
  MatchVerdict verdict(std::string_view candidate) const noexcept;
  /// Throws UnknownCharacter when the candidate leaves the alphabet.
  bool matches(std::string_view candidate) const;
  /// Out-of-alphabet candidates count as non-matches.
  bool matches_lenient(std::string_view candidate) const noexcept;

 private:
  Alphabet alphabet_;
  std::size_t capacity_ = 0;
  std::vector<CharSet> rows_;
};

/// The coarse 6-class alternative. Lossy: per-position character identity is
/// reduced to its class, so e.g. a position pinned to 'A' accepts any letter.
class OneHotEncoding {
 public:
  OneHotEncoding(Alphabet alphabet, std::size_t capacity,
                 std::vector<CharClass> active_classes);

  std::size_t capacity() const { return capacity_; }
  std::size_t active_length() const { return classes_.size(); }
  const std::vector<CharClass>& active_classes() const { return classes_; }
  /// Class at position m; kPadding beyond the active length.
  CharClass class_at(std::size_t m) const;
  const Alphabet& alphabet() const { return alphabet_; }

  MatchVerdict verdict(std::string_view candidate) const noexcept;
  bool matches(std::string_view candidate) const;
  bool matches_lenient(std::string_view candidate) const noexcept;

 private:
  Alphabet alphabet_;
  std::size_t capacity_ = 0;
  std::vector<CharClass> classes_;
};

/// Throws LengthOverflow when the pattern is longer than capacity.
MultiHotEncoding encode_multi_hot(const QueryPattern& pattern,
                                  std::size_t capacity = kDefaultCapacity);

/// Throws NotRepresentable when any position spans two or more classes.
OneHotEncoding encode_one_hot(const QueryPattern& pattern,
                              std::size_t capacity = kDefaultCapacity);

}  // namespace stspot
