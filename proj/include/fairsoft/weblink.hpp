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

// HTTP Link header values (web linking).
namespace fairsoft::weblink {

struct Link {
  std::string target;  // URI-reference, without the angle brackets
  std::vector<std::pair<std::string, std::string>> params;  // names lowercased on parse

  std::optional<std::string> param(std::string_view name) const;
  friend bool operator==(const Link&, const Link&) = default;
};

// <target>; name="value"; ...  Values are always quoted.
std::string format_link(const Link& link);
// Comma-separated list of link-values. Throws ParseError.
std::vector<Link> parse_link_header(std::string_view header);

}  // namespace fairsoft::weblink
