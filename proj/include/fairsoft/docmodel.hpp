// Copyright 2026 The fairsoft Authors
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

namespace fairsoft::docmodel {

inline constexpr std::string_view kTeiNamespace = "http://www.tei-c.org/ns/1.0";

// Half-open byte range into Document::body.
struct Span {
  std::size_t start_byte = 0;
  std::size_t end_byte = 0;

  std::size_t size() const { return end_byte - start_byte; }
  bool contains(const Span& o) const { return start_byte <= o.start_byte && o.end_byte <= end_byte; }
  friend bool operator==(const Span&, const Span&) = default;
  friend auto operator<=>(const Span&, const Span&) = default;
};

struct Reference {
  std::string ref_id;
  std::string raw_text;
  std::optional<std::string> target_url;
};

struct Document {
  std::string doc_id;
  std::string body;
  std::vector<Span> paragraphs;
  std::vector<Span> sentences;
  std::vector<Reference> references;

  std::string_view slice(const Span& s) const {
    return std::string_view(body).substr(s.start_byte, s.size());
  }
  // Index of the sentence containing `s`, if any.
  std::optional<std::size_t> sentence_of(const Span& s) const;
};

/// TEI P5 subset. Paragraph text is whitespace-collapsed and paragraphs are
/// joined with a single newline. Throws ParseError or EmptyDocument.
Document from_tei(std::string_view xml_bytes, std::string doc_id);

/// Paragraphs are separated by blank lines. Throws ParseError on invalid
/// UTF-8 and EmptyDocument on blank input.
Document from_plaintext(std::string_view text, std::string doc_id);

/// Splits after '.', '!' or '?' when followed by whitespace and then an
/// uppercase ASCII letter or a digit, except after a fixed abbreviation list.
/// Spans are trimmed and relative to `text`.
std::vector<Span> segment_sentences(std::string_view text);

// Dispatch on media type (application/tei+xml, text/xml, text/plain).
Document parse_fulltext(std::string_view bytes, std::string_view media_type, std::string doc_id);

}  // namespace fairsoft::docmodel
