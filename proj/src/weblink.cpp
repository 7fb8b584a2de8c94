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

#include "fairsoft/weblink.hpp"

#include "fairsoft/error.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::weblink {

namespace {

bool is_tchar(char c) {
  static constexpr std::string_view kExtra = "!#$%&'*+-.^_`|~";
  return text::is_alnum(c) || kExtra.find(c) != std::string_view::npos;
}

bool is_ows(char c) { return c == ' ' || c == '\t'; }

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  std::vector<Link> parse() {
    std::vector<Link> out;
    skip_ows();
    while (pos_ < s_.size()) {
      if (peek() == ',') {  // empty list elements are allowed
        ++pos_;
        skip_ows();
        continue;
      }
      out.push_back(link_value());
      skip_ows();
      if (pos_ < s_.size()) {
        expect(',');
        skip_ows();
      }
    }
    return out;
  }

 private:
  Link link_value() {
    Link l;
    expect('<');
    auto close = s_.find('>', pos_);
    if (close == std::string_view::npos) fail("unterminated URI reference");
    l.target = std::string(s_.substr(pos_, close - pos_));
    for (char c : l.target) {
      if (static_cast<unsigned char>(c) <= 0x20 || c == '<' || c == '"') fail("bad character in URI reference");
    }
    pos_ = close + 1;
    skip_ows();
    while (pos_ < s_.size() && peek() == ';') {
      ++pos_;
      skip_ows();
      std::string name = token();
      skip_ows();
      std::string value;
      if (pos_ < s_.size() && peek() == '=') {
        ++pos_;
        skip_ows();
        value = pos_ < s_.size() && peek() == '"' ? quoted() : token();
      }
      l.params.emplace_back(text::to_lower(name), std::move(value));
      skip_ows();
    }
    return l;
  }

  std::string token() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && is_tchar(s_[pos_])) ++pos_;
    if (pos_ == start) fail("expected token");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string quoted() {
    expect('"');
    std::string out;
    while (pos_ < s_.size()) {
      char c = s_[pos_++];
      if (c == '"') return out;
      if (c == '\\') {
        if (pos_ >= s_.size()) break;
        c = s_[pos_++];
      }
      out += c;
    }
    fail("unterminated quoted string");
  }

  char peek() const { return s_[pos_]; }
  void skip_ows() {
    while (pos_ < s_.size() && is_ows(s_[pos_])) ++pos_;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::ParseError, "Link header: " + what + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<std::string> Link::param(std::string_view name) const {
  for (const auto& [k, v] : params) {
    if (text::iequals(k, name)) return v;
  }
  return std::nullopt;
}

std::string format_link(const Link& link) {
  std::string out = "<" + link.target + ">";
  for (const auto& [k, v] : link.params) {
    out += "; " + k + "=\"";
    for (char c : v) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    out += '"';
  }
  return out;
}

std::vector<Link> parse_link_header(std::string_view header) { return Parser(header).parse(); }

}  // namespace fairsoft::weblink
