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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Minimal namespace-aware DOM over expat. Only what the OAI-PMH and TEI
// readers need: element tree, attributes, mixed text content.
namespace fairsoft::xml {

struct Node {
  enum class Kind { Element, Text };

  Kind kind = Kind::Element;
  std::string ns;    // namespace URI, empty when unqualified
  std::string name;  // local name
  std::string text;  // Text nodes only
  std::vector<std::pair<std::string, std::string>> attributes;  // local name -> value
  std::vector<Node> children;

  bool is(std::string_view ns_uri, std::string_view local) const {
    return kind == Kind::Element && name == local && ns == ns_uri;
  }

  // Attribute by local name ("xml:id" is stored as "id").
  std::optional<std::string> attribute(std::string_view local) const;

  const Node* first_child(std::string_view ns_uri, std::string_view local) const;
  std::vector<const Node*> children_named(std::string_view ns_uri,
                                          std::string_view local) const;
  // Depth-first, document order.
  std::vector<const Node*> descendants(std::string_view ns_uri,
                                       std::string_view local) const;

  // Concatenated text of all descendant text nodes.
  std::string text_content() const;
};

// Throws Error{ParseError} on malformed input.
Node parse(std::string_view bytes);

std::string escape(std::string_view s);
std::string escape_attribute(std::string_view s);

}  // namespace fairsoft::xml
