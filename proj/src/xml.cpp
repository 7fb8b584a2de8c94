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

#include "fairsoft/xml.hpp"

#include <expat.h>

#include <memory>

#include "fairsoft/error.hpp"

namespace fairsoft::xml {
namespace {

constexpr char kNsSeparator = '\x1f';

std::pair<std::string, std::string> split_qualified(const char* raw) {
  std::string_view q(raw);
  auto pos = q.find(kNsSeparator);
  if (pos == std::string_view::npos) return {std::string(), std::string(q)};
  return {std::string(q.substr(0, pos)), std::string(q.substr(pos + 1))};
}

struct Builder {
  Node root;
  std::vector<Node*> stack;
  bool have_root = false;
};

void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto* b = static_cast<Builder*>(user);
  Node node;
  auto [ns, local] = split_qualified(name);
  node.ns = std::move(ns);
  node.name = std::move(local);
  for (int i = 0; attrs[i]; i += 2) {
    node.attributes.emplace_back(split_qualified(attrs[i]).second, attrs[i + 1]);
  }
  if (b->stack.empty()) {
    b->root = std::move(node);
    b->have_root = true;
    b->stack.push_back(&b->root);
  } else {
    auto& kids = b->stack.back()->children;
    kids.push_back(std::move(node));
    b->stack.push_back(&kids.back());
  }
}

void on_end(void* user, const XML_Char*) {
  static_cast<Builder*>(user)->stack.pop_back();
}

void on_text(void* user, const XML_Char* s, int len) {
  auto* b = static_cast<Builder*>(user);
  if (b->stack.empty()) return;
  auto& kids = b->stack.back()->children;
  if (!kids.empty() && kids.back().kind == Node::Kind::Text) {
    kids.back().text.append(s, static_cast<std::size_t>(len));
    return;
  }
  Node t;
  t.kind = Node::Kind::Text;
  t.text.assign(s, static_cast<std::size_t>(len));
  kids.push_back(std::move(t));
}

void collect(const Node& n, std::string_view ns, std::string_view local,
             std::vector<const Node*>& out) {
  for (const auto& c : n.children) {
    if (c.kind != Node::Kind::Element) continue;
    if (c.name == local && c.ns == ns) out.push_back(&c);
    collect(c, ns, local, out);
  }
}

void gather_text(const Node& n, std::string& out) {
  for (const auto& c : n.children) {
    if (c.kind == Node::Kind::Text)
      out += c.text;
    else
      gather_text(c, out);
  }
}

}  // namespace

std::optional<std::string> Node::attribute(std::string_view local) const {
  for (const auto& [k, v] : attributes)
    if (k == local) return v;
  return std::nullopt;
}

const Node* Node::first_child(std::string_view ns_uri, std::string_view local) const {
  for (const auto& c : children)
    if (c.is(ns_uri, local)) return &c;
  return nullptr;
}

std::vector<const Node*> Node::children_named(std::string_view ns_uri,
                                              std::string_view local) const {
  std::vector<const Node*> out;
  for (const auto& c : children)
    if (c.is(ns_uri, local)) out.push_back(&c);
  return out;
}

std::vector<const Node*> Node::descendants(std::string_view ns_uri,
                                           std::string_view local) const {
  std::vector<const Node*> out;
  collect(*this, ns_uri, local, out);
  return out;
}

std::string Node::text_content() const {
  if (kind == Kind::Text) return text;
  std::string out;
  gather_text(*this, out);
  return out;
}

Node parse(std::string_view bytes) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreateNS("UTF-8", kNsSeparator), &XML_ParserFree);
  if (!parser) throw Error(ErrorCode::ParseError, "cannot allocate XML parser");
  Builder builder;
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()),
                XML_TRUE) == XML_STATUS_ERROR) {
    throw Error(ErrorCode::ParseError,
                std::string("malformed XML at line ") +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                    XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!builder.have_root) throw Error(ErrorCode::ParseError, "no root element");
  return std::move(builder.root);
}

std::string escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_attribute(std::string_view s) {
  std::string out;
  for (char c : escape(s)) {
    if (c == '"')
      out += "&quot;";
    else
      out.push_back(c);
  }
  return out;
}

}  // namespace fairsoft::xml
