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

#include "fairsoft/docmodel.hpp"

#include <array>
#include <regex>

#include "fairsoft/error.hpp"
#include "fairsoft/text.hpp"
#include "fairsoft/xml.hpp"

namespace fairsoft::docmodel {
namespace {

constexpr std::array<std::string_view, 5> kAbbreviations = {"e.g.", "i.e.", "et al.", "Fig.", "vs."};

bool ends_with_abbreviation(std::string_view text, std::size_t end) {
  auto head = text.substr(0, end);
  for (auto abbr : kAbbreviations) {
    if (head.size() < abbr.size()) continue;
    if (head.substr(head.size() - abbr.size()) != abbr) continue;
    auto before = head.size() - abbr.size();
    if (before == 0 || !text::is_alnum(head[before - 1])) return true;
  }
  return false;
}

void push_trimmed(std::string_view text, std::size_t b, std::size_t e, std::vector<Span>& out) {
  while (b < e && text::is_space(text[b])) ++b;
  while (e > b && text::is_space(text[e - 1])) --e;
  if (b < e) out.push_back({b, e});
}

// Appends paragraph `p` to the document and segments it.
void add_paragraph(Document& doc, std::size_t start, std::size_t end) {
  doc.paragraphs.push_back({start, end});
  for (auto s : segment_sentences(std::string_view(doc.body).substr(start, end - start)))
    doc.sentences.push_back({s.start_byte + start, s.end_byte + start});
}

std::optional<std::string> first_url(std::string_view s) {
  static const std::regex kUrl(R"(https?://[^\s<>"]+)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(s.begin(), s.end(), m, kUrl)) return std::nullopt;
  std::string url = m.str();
  while (!url.empty() && std::string_view(".,;:)]").find(url.back()) != std::string_view::npos)
    url.pop_back();
  return url;
}

}  // namespace

std::optional<std::size_t> Document::sentence_of(const Span& s) const {
  for (std::size_t i = 0; i < sentences.size(); ++i)
    if (sentences[i].contains(s)) return i;
  return std::nullopt;
}

std::vector<Span> segment_sentences(std::string_view text) {
  std::vector<Span> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t j = i + 1;
    if (j >= text.size() || !text::is_space(text[j])) continue;
    while (j < text.size() && text::is_space(text[j])) ++j;
    if (j >= text.size()) continue;
    if (!text::is_upper(text[j]) && !text::is_digit(text[j])) continue;
    if (c == '.' && ends_with_abbreviation(text, i + 1)) continue;
    push_trimmed(text, start, i + 1, out);
    start = j;
    i = j - 1;
  }
  push_trimmed(text, start, text.size(), out);
  return out;
}

Document from_plaintext(std::string_view input, std::string doc_id) {
  if (!text::is_valid_utf8(input)) throw Error(ErrorCode::ParseError, "text is not valid UTF-8");
  Document doc;
  doc.doc_id = std::move(doc_id);
  doc.body = std::string(input);
  std::string_view body(doc.body);

  // Paragraph boundaries: runs of lines that contain only whitespace.
  std::size_t para_start = 0;
  std::size_t pos = 0;
  auto flush = [&](std::size_t end) {
    std::size_t b = para_start, e = end;
    while (b < e && text::is_space(body[b])) ++b;
    while (e > b && text::is_space(body[e - 1])) --e;
    if (b < e) add_paragraph(doc, b, e);
  };
  while (pos < body.size()) {
    auto nl = body.find('\n', pos);
    if (nl == std::string_view::npos) break;
    // Is the following line blank?
    std::size_t k = nl + 1;
    while (k < body.size() && body[k] != '\n' && text::is_space(body[k])) ++k;
    if (k < body.size() && body[k] == '\n') {
      flush(nl);
      while (k < body.size() && text::is_space(body[k])) ++k;
      para_start = k;
      pos = k;
    } else {
      pos = nl + 1;
    }
  }
  flush(body.size());
  if (doc.paragraphs.empty()) throw Error(ErrorCode::EmptyDocument, "document '" + doc.doc_id + "' is empty");
  return doc;
}

Document from_tei(std::string_view xml_bytes, std::string doc_id) {
  auto root = xml::parse(xml_bytes);
  if (!root.is(kTeiNamespace, "TEI"))
    throw Error(ErrorCode::ParseError, "not a TEI document (root '" + root.name + "')");
  Document doc;
  doc.doc_id = std::move(doc_id);

  std::vector<std::string> paragraphs;
  if (const auto* text_el = root.first_child(kTeiNamespace, "text")) {
    if (const auto* body_el = text_el->first_child(kTeiNamespace, "body")) {
      for (const auto* p : body_el->descendants(kTeiNamespace, "p")) {
        auto t = text::collapse_whitespace(p->text_content());
        if (!t.empty()) paragraphs.push_back(std::move(t));
      }
    }
  }
  if (paragraphs.empty()) throw Error(ErrorCode::EmptyDocument, "TEI document '" + doc.doc_id + "' has no paragraphs");
  if (!text::is_valid_utf8(text::join(paragraphs, "")))
    throw Error(ErrorCode::ParseError, "paragraph text is not valid UTF-8");

  for (const auto& p : paragraphs) {
    if (!doc.body.empty()) doc.body.push_back('\n');
    auto start = doc.body.size();
    doc.body += p;
    add_paragraph(doc, start, doc.body.size());
  }

  std::size_t ordinal = 0;
  auto add_reference = [&](const xml::Node& n) {
    Reference ref;
    ref.ref_id = n.attribute("id").value_or("ref" + std::to_string(ordinal));
    ++ordinal;
    ref.raw_text = text::collapse_whitespace(n.text_content());
    for (const auto* ptr : n.descendants(kTeiNamespace, "ptr")) {
      if (auto target = ptr->attribute("target"); target && text::is_http_url(*target)) {
        ref.target_url = *target;
        break;
      }
    }
    if (!ref.target_url) ref.target_url = first_url(ref.raw_text);
    doc.references.push_back(std::move(ref));
  };
  for (const auto* list : root.descendants(kTeiNamespace, "listBibl")) {
    for (const auto& child : list->children) {
      if (child.is(kTeiNamespace, "biblStruct") || child.is(kTeiNamespace, "bibl")) add_reference(child);
    }
  }
  return doc;
}

Document parse_fulltext(std::string_view bytes, std::string_view media_type, std::string doc_id) {
  if (media_type == "application/tei+xml" || media_type == "text/xml") return from_tei(bytes, std::move(doc_id));
  if (media_type == "text/plain") return from_plaintext(bytes, std::move(doc_id));
  throw Error(ErrorCode::UnsupportedFormat, "unsupported media type '" + std::string(media_type) + "'");
}

}  // namespace fairsoft::docmodel
