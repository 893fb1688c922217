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

#include "stspot/pattern.hpp"

#include <algorithm>
#include <cctype>

namespace stspot {
namespace {

// Hard cap on expansion when no explicit max_length is given.
constexpr std::size_t kMaxExpandedLength = 1'000'000;

constexpr std::string_view kLiteralEscapes = "\\.{[$-]}^";
constexpr std::string_view kUnsupportedOperands = "+*?|()";

std::string char_repr(char c) {
  if (std::isprint(static_cast<unsigned char>(c))) return std::string("'") + c + "'";
  return "byte 0x" + std::to_string(static_cast<unsigned>(static_cast<unsigned char>(c)));
}

struct Escape {
  enum Kind { kLiteral, kDigits, kSpaceClass, kWordBoundary } kind = kLiteral;
  char ch = '\0';
  std::size_t next = 0;  // index just past the escape
};

Escape parse_escape(std::string_view src, std::size_t backslash_pos) {
  if (backslash_pos + 1 >= src.size()) {
    throw Error(ErrorCode::kSyntaxError, "dangling escape at end of pattern");
  }
  const char c = src[backslash_pos + 1];
  Escape e;
  e.next = backslash_pos + 2;
  switch (c) {
    case 'd': e.kind = Escape::kDigits; return e;
    case 's': e.kind = Escape::kSpaceClass; return e;
    case 'b': e.kind = Escape::kWordBoundary; return e;
    default: break;
  }
  if (kLiteralEscapes.find(c) != std::string_view::npos) {
    e.kind = Escape::kLiteral;
    e.ch = c;
    return e;
  }
  throw Error(ErrorCode::kSyntaxError, "unsupported escape '\\" + std::string(1, c) + "'");
}

void add_literal(CharSet& set, char c, const Alphabet& alphabet) {
  const int k = alphabet.index(c);
  if (k < 0) {
    throw Error(ErrorCode::kUnknownCharacter,
                "pattern character " + char_repr(c) + " is not in the alphabet");
  }
  set.add(static_cast<std::size_t>(k));
}

// Ranges and the \d / \s shorthands intersect with the alphabet instead of
// requiring every covered character to be a member.
void add_byte_range(CharSet& set, char lo, char hi, const Alphabet& alphabet) {
  const auto lo_b = static_cast<unsigned char>(lo);
  const auto hi_b = static_cast<unsigned char>(hi);
  if (lo_b > hi_b) {
    throw Error(ErrorCode::kSyntaxError,
                "invalid range " + char_repr(lo) + "-" + char_repr(hi));
  }
  for (unsigned v = lo_b; v <= hi_b; ++v) {
    const int k = alphabet.index(static_cast<char>(v));
    if (k >= 0) set.add(static_cast<std::size_t>(k));
  }
}

void add_class(CharSet& set, CharClass cls, const Alphabet& alphabet) {
  const CharSet members = class_set(cls, alphabet);
  for (std::size_t k : members.indices()) set.add(k);
}

// Parses a bracket class starting just past '['. Returns the index past ']'.
std::size_t parse_bracket_class(std::string_view src, std::size_t start, const Alphabet& alphabet,
                                CharSet& out) {
  std::size_t i = start;
  bool negated = false;
  if (i < src.size() && src[i] == '^') {
    negated = true;
    ++i;
  }
  CharSet members(alphabet.size());
  bool any_item = false;
  // A completed single character that may yet become a range endpoint;
  // negative means none.
  int pending = -1;
  auto flush_pending = [&] {
    if (pending >= 0) {
      add_literal(members, static_cast<char>(pending), alphabet);
      pending = -1;
    }
  };
  while (true) {
    if (i >= src.size()) {
      throw Error(ErrorCode::kSyntaxError, "unterminated character class");
    }
    const char c = src[i];
    if (c == ']') {
      flush_pending();
      ++i;
      break;
    }
    if (c == '-') {
      // Range operator only between a pending character and a following
      // item; leading or trailing '-' is a literal member.
      if (pending >= 0 && i + 1 < src.size() && src[i + 1] != ']') {
        const char lo = static_cast<char>(pending);
        pending = -1;
        ++i;
        char hi;
        if (src[i] == '\\') {
          const Escape e = parse_escape(src, i);
          if (e.kind != Escape::kLiteral) {
            throw Error(ErrorCode::kSyntaxError, "range endpoint must be a single character");
          }
          hi = e.ch;
          i = e.next;
        } else {
          hi = src[i];
          ++i;
        }
        add_byte_range(members, lo, hi, alphabet);
        continue;
      }
      flush_pending();
      pending = static_cast<unsigned char>('-');
      ++i;
      continue;
    }
    if (c == '\\') {
      const Escape e = parse_escape(src, i);
      switch (e.kind) {
        case Escape::kDigits:
          flush_pending();
          add_class(members, CharClass::kNumber, alphabet);
          break;
        case Escape::kSpaceClass:
          flush_pending();
          add_class(members, CharClass::kSpace, alphabet);
          break;
        case Escape::kWordBoundary:
          throw Error(ErrorCode::kSyntaxError, "'\\b' is not allowed inside a character class");
        case Escape::kLiteral:
          flush_pending();
          pending = static_cast<unsigned char>(e.ch);
          break;
      }
      i = e.next;
      any_item = true;
      continue;
    }
    flush_pending();
    pending = static_cast<unsigned char>(c);
    ++i;
    any_item = true;
  }
  if (!negated && members.empty()) {
    if (!any_item) throw Error(ErrorCode::kEmptyClass, "empty character class");
    throw Error(ErrorCode::kEmptyClass, "character class has no members in the alphabet");
  }
  if (negated) {
    members.complement();
    if (members.empty()) {
      throw Error(ErrorCode::kEmptyClass, "negated class covers the whole alphabet");
    }
  }
  out = std::move(members);
  return i;
}

// Parses "{...}" starting just past '{'. Returns {count, index past '}'}.
std::pair<std::size_t, std::size_t> parse_repetition(std::string_view src, std::size_t start) {
  const std::size_t close = src.find('}', start);
  if (close == std::string_view::npos) {
    throw Error(ErrorCode::kSyntaxError, "unterminated repetition");
  }
  const std::string_view body = src.substr(start, close - start);
  if (body.find(',') != std::string_view::npos || body.find('-') != std::string_view::npos) {
    throw Error(ErrorCode::kUnsupportedOperand,
                "variable-length repetition '{" + std::string(body) + "}' is not supported");
  }
  if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw Error(ErrorCode::kSyntaxError, "malformed repetition '{" + std::string(body) + "}'");
  }
  if (body.size() > 9) {
    throw Error(ErrorCode::kLengthOverflow, "repetition count '{" + std::string(body) + "}' is too large");
  }
  const std::size_t n = std::stoull(std::string(body));
  if (n == 0) {
    throw Error(ErrorCode::kSyntaxError, "repetition count must be at least 1");
  }
  return {n, close + 1};
}

}  // namespace

const char* char_class_name(CharClass cls) {
  switch (cls) {
    case CharClass::kSpace: return "space";
    case CharClass::kNumber: return "number";
    case CharClass::kLetter: return "letter";
    case CharClass::kSeparator: return "separator";
    case CharClass::kSpecial: return "special";
    case CharClass::kPadding: return "padding";
  }
  return "unknown";
}

std::optional<CharClass> char_class_from_name(std::string_view name) {
  for (CharClass cls : {CharClass::kSpace, CharClass::kNumber, CharClass::kLetter,
                        CharClass::kSeparator, CharClass::kSpecial, CharClass::kPadding}) {
    if (name == char_class_name(cls)) return cls;
  }
  return std::nullopt;
}

CharClass intrinsic_char_class(char c) {
  if (c == ' ') return CharClass::kSpace;
  if (c >= '0' && c <= '9') return CharClass::kNumber;
  if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z')) return CharClass::kLetter;
  if (c == ',' || c == '-' || c == '_') return CharClass::kSeparator;
  return CharClass::kSpecial;
}

CharClass class_of(char c, const Alphabet& alphabet) {
  if (!alphabet.contains(c)) {
    throw Error(ErrorCode::kUnknownCharacter,
                "character " + char_repr(c) + " is not in the alphabet");
  }
  return intrinsic_char_class(c);
}

std::size_t CharSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

void CharSet::complement() { bits_.flip(); }

std::vector<std::size_t> CharSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    if (bits_[k]) out.push_back(k);
  }
  return out;
}

CharSet full_set(const Alphabet& alphabet) {
  CharSet set(alphabet.size());
  for (std::size_t k = 0; k < alphabet.size(); ++k) set.add(k);
  return set;
}

CharSet class_set(CharClass cls, const Alphabet& alphabet) {
  CharSet set(alphabet.size());
  if (cls == CharClass::kPadding) return set;
  for (std::size_t k = 0; k < alphabet.size(); ++k) {
    if (intrinsic_char_class(alphabet.at(k)) == cls) set.add(k);
  }
  return set;
}

CharSet singleton(char c, const Alphabet& alphabet) {
  CharSet set(alphabet.size());
  add_literal(set, c, alphabet);
  return set;
}

QueryPattern parse_pattern(std::string_view src, const Alphabet& alphabet,
                           std::optional<std::size_t> max_length) {
  if (src.empty()) {
    throw Error(ErrorCode::kSyntaxError, "empty pattern");
  }
  const std::size_t limit = max_length.value_or(kMaxExpandedLength);
  QueryPattern pattern{alphabet, {}, std::string(src)};

  auto append = [&](CharSet set) {
    if (set.empty()) {
      throw Error(ErrorCode::kEmptyClass, "position admits no alphabet character");
    }
    if (pattern.positions.size() >= limit) {
      throw Error(ErrorCode::kLengthOverflow,
                  "pattern expands past the maximum length of " + std::to_string(limit));
    }
    pattern.positions.push_back(std::move(set));
  };

  // Whether '{n}' may apply to what was just parsed.
  bool repeatable = false;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (kUnsupportedOperands.find(c) != std::string_view::npos) {
      throw Error(ErrorCode::kUnsupportedOperand,
                  std::string("operator '") + c + "' is not supported (fixed-length patterns only)");
    }
    if (c == '^' || c == '$') {
      throw Error(ErrorCode::kUnsupportedOperand,
                  std::string("anchor '") + c + "' is not supported (matching is whole-string)");
    }
    if (c == '.') {
      append(full_set(alphabet));
      repeatable = true;
      ++i;
      continue;
    }
    if (c == '[') {
      CharSet set;
      i = parse_bracket_class(src, i + 1, alphabet, set);
      append(std::move(set));
      repeatable = true;
      continue;
    }
    if (c == '{') {
      if (!repeatable) {
        throw Error(ErrorCode::kSyntaxError, "'{n}' must follow a matchable token");
      }
      auto [n, next] = parse_repetition(src, i + 1);
      const CharSet last = pattern.positions.back();
      for (std::size_t r = 1; r < n; ++r) append(last);
      repeatable = false;
      i = next;
      continue;
    }
    if (c == '\\') {
      const Escape e = parse_escape(src, i);
      switch (e.kind) {
        case Escape::kDigits: {
          CharSet set(alphabet.size());
          add_class(set, CharClass::kNumber, alphabet);
          append(std::move(set));
          repeatable = true;
          break;
        }
        case Escape::kSpaceClass:
          append(singleton(' ', alphabet));
          repeatable = true;
          break;
        case Escape::kWordBoundary:
          // Accepted and discarded: matching is whole-string anchored.
          repeatable = false;
          break;
        case Escape::kLiteral:
          append(singleton(e.ch, alphabet));
          repeatable = true;
          break;
      }
      i = e.next;
      continue;
    }
    // Everything else, including ' ', '}', ']' and '-', is a literal.
    append(singleton(c, alphabet));
    repeatable = true;
    ++i;
  }
  if (pattern.positions.empty()) {
    throw Error(ErrorCode::kSyntaxError, "pattern contains no matchable position");
  }
  return pattern;
}

namespace {

std::string escape_in_class(char c) {
  if (c == '\\' || c == ']' || c == '-' || c == '^') return std::string("\\") + c;
  return std::string(1, c);
}

std::string render_class_members(const CharSet& set, const Alphabet& alphabet) {
  // Members sorted by byte value; byte-consecutive runs of 3+ render as ranges.
  std::vector<char> members;
  for (std::size_t k : set.indices()) members.push_back(alphabet.at(k));
  std::sort(members.begin(), members.end(), [](char a, char b) {
    return static_cast<unsigned char>(a) < static_cast<unsigned char>(b);
  });
  std::string out;
  std::size_t i = 0;
  while (i < members.size()) {
    std::size_t j = i;
    while (j + 1 < members.size() &&
           static_cast<unsigned char>(members[j + 1]) ==
               static_cast<unsigned char>(members[j]) + 1) {
      ++j;
    }
    if (j - i >= 2) {
      out += escape_in_class(members[i]) + "-" + escape_in_class(members[j]);
    } else {
      for (std::size_t m = i; m <= j; ++m) out += escape_in_class(members[m]);
    }
    i = j + 1;
  }
  return out;
}

std::string literal_token(char c) {
  if (c == ' ') return "\\s";
  if (kLiteralEscapes.find(c) != std::string_view::npos) return std::string("\\") + c;
  // No escape exists for these operators; a one-member class reads them
  // literally.
  if (kUnsupportedOperands.find(c) != std::string_view::npos ||
      c == '^' || c == '$') {
    return std::string("[") + escape_in_class(c) + "]";
  }
  return std::string(1, c);
}

std::string token_for(const CharSet& set, const Alphabet& alphabet) {
  if (set == full_set(alphabet)) return ".";
  if (set == class_set(CharClass::kSpace, alphabet)) return "\\s";
  if (!set.empty() && set == class_set(CharClass::kNumber, alphabet)) return "\\d";
  if (!set.empty() && set == class_set(CharClass::kLetter, alphabet)) {
    // Reparses via alphabet intersection even when some letters are absent.
    return "[A-Za-z]";
  }
  if (set.count() == 1) return literal_token(alphabet.at(set.indices().front()));
  CharSet complement = set;
  complement.complement();
  if (complement.count() < set.count()) {
    return "[^" + render_class_members(complement, alphabet) + "]";
  }
  return "[" + render_class_members(set, alphabet) + "]";
}

}  // namespace

std::string canonical_pattern(const QueryPattern& pattern) {
  std::string out;
  std::size_t i = 0;
  while (i < pattern.positions.size()) {
    std::size_t run = 1;
    while (i + run < pattern.positions.size() &&
           pattern.positions[i + run] == pattern.positions[i]) {
      ++run;
    }
    out += token_for(pattern.positions[i], pattern.alphabet);
    if (run > 1) out += "{" + std::to_string(run) + "}";
    i += run;
  }
  return out;
}

MultiHotEncoding::MultiHotEncoding(Alphabet alphabet, std::size_t capacity,
                                   std::vector<CharSet> active_rows)
    : alphabet_(std::move(alphabet)), capacity_(capacity), rows_(std::move(active_rows)) {
  if (rows_.size() > capacity_) {
    throw Error(ErrorCode::kLengthOverflow,
                "pattern length " + std::to_string(rows_.size()) +
                    " exceeds capacity " + std::to_string(capacity_));
  }
  for (const CharSet& row : rows_) {
    if (row.universe_size() != alphabet_.size()) {
      throw Error(ErrorCode::kSchemaViolation, "encoding row width differs from alphabet size");
    }
    if (row.empty()) {
      throw Error(ErrorCode::kEmptyClass, "active encoding row has no set element");
    }
  }
}

CharSet MultiHotEncoding::row(std::size_t m) const {
  if (m < rows_.size()) return rows_[m];
  return CharSet(alphabet_.size());
}

MatchVerdict MultiHotEncoding::verdict(std::string_view candidate) const noexcept {
  bool unknown = false;
  for (char c : candidate) {
    if (alphabet_.index(c) < 0) {
      unknown = true;
      break;
    }
  }
  if (unknown) return MatchVerdict::kUnknownCharacter;
  if (candidate.size() != rows_.size()) return MatchVerdict::kNoMatch;
  for (std::size_t m = 0; m < candidate.size(); ++m) {
    const int k = alphabet_.index(candidate[m]);
    if (!rows_[m].contains(static_cast<std::size_t>(k))) return MatchVerdict::kNoMatch;
  }
  return MatchVerdict::kMatch;
}

bool MultiHotEncoding::matches(std::string_view candidate) const {
  switch (verdict(candidate)) {
    case MatchVerdict::kMatch: return true;
    case MatchVerdict::kNoMatch: return false;
    case MatchVerdict::kUnknownCharacter:
      throw Error(ErrorCode::kUnknownCharacter,
                  "candidate contains a character outside the alphabet");
  }
  return false;
}

bool MultiHotEncoding::matches_lenient(std::string_view candidate) const noexcept {
  return verdict(candidate) == MatchVerdict::kMatch;
}

OneHotEncoding::OneHotEncoding(Alphabet alphabet, std::size_t capacity,
                               std::vector<CharClass> active_classes)
    : alphabet_(std::move(alphabet)), capacity_(capacity), classes_(std::move(active_classes)) {
  if (classes_.size() > capacity_) {
    throw Error(ErrorCode::kLengthOverflow,
                "pattern length " + std::to_string(classes_.size()) +
                    " exceeds capacity " + std::to_string(capacity_));
  }
  for (CharClass cls : classes_) {
    if (cls == CharClass::kPadding) {
      throw Error(ErrorCode::kSchemaViolation, "padding inside the active class sequence");
    }
  }
}

CharClass OneHotEncoding::class_at(std::size_t m) const {
  if (m < classes_.size()) return classes_[m];
  return CharClass::kPadding;
}

MatchVerdict OneHotEncoding::verdict(std::string_view candidate) const noexcept {
  bool unknown = false;
  for (char c : candidate) {
    if (alphabet_.index(c) < 0) {
      unknown = true;
      break;
    }
  }
  if (unknown) return MatchVerdict::kUnknownCharacter;
  if (candidate.size() != classes_.size()) return MatchVerdict::kNoMatch;
  for (std::size_t m = 0; m < candidate.size(); ++m) {
    if (intrinsic_char_class(candidate[m]) != classes_[m]) return MatchVerdict::kNoMatch;
  }
  return MatchVerdict::kMatch;
}

bool OneHotEncoding::matches(std::string_view candidate) const {
  switch (verdict(candidate)) {
    case MatchVerdict::kMatch: return true;
    case MatchVerdict::kNoMatch: return false;
    case MatchVerdict::kUnknownCharacter:
      throw Error(ErrorCode::kUnknownCharacter,
                  "candidate contains a character outside the alphabet");
  }
  return false;
}

bool OneHotEncoding::matches_lenient(std::string_view candidate) const noexcept {
  return verdict(candidate) == MatchVerdict::kMatch;
}

MultiHotEncoding encode_multi_hot(const QueryPattern& pattern, std::size_t capacity) {
  return MultiHotEncoding(pattern.alphabet, capacity, pattern.positions);
}

OneHotEncoding encode_one_hot(const QueryPattern& pattern, std::size_t capacity) {
  std::vector<CharClass> classes;
  classes.reserve(pattern.positions.size());
  for (std::size_t m = 0; m < pattern.positions.size(); ++m) {
    const CharSet& set = pattern.positions[m];
    std::optional<CharClass> cls;
    for (std::size_t k : set.indices()) {
      const CharClass c = intrinsic_char_class(pattern.alphabet.at(k));
      if (!cls) {
        cls = c;
      } else if (*cls != c) {
        throw Error(ErrorCode::kNotRepresentable,
                    "position " + std::to_string(m + 1) +
                        " spans multiple character classes");
      }
    }
    classes.push_back(*cls);
  }
  return OneHotEncoding(pattern.alphabet, capacity, std::move(classes));
}

}  // namespace stspot
