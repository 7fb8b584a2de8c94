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
#include <set>
#include <string>
#include <vector>

#include "fairsoft/codemeta.hpp"
#include "fairsoft/swhid.hpp"
#include "fairsoft/text.hpp"
#include "gen.hpp"

// Generators for domain values shared by the property tests and the
// acceptance binary.
namespace fairsoft::testing {

inline swhid::Swhid random_swhid(Gen& g, swhid::ObjectType type) {
  swhid::Swhid id;
  id.object_type = type;
  for (auto& b : id.digest) b = static_cast<std::uint8_t>(g.range(0, 255));
  return id;
}

inline std::string random_core_swhid(Gen& g) {
  return random_swhid(g, static_cast<swhid::ObjectType>(g.range(0, 4))).core();
}

// Qualified identifier; `with_all` forces every qualifier key.
inline swhid::Swhid random_qualified_swhid(Gen& g, swhid::ObjectType type, bool with_all) {
  auto id = random_swhid(g, type);
  for (auto key : swhid::kQualifierKeys) {
    if (!with_all && !g.chance(0.5)) continue;
    std::string value;
    if (key == "origin") {
      value = "https://github.com/" + g.lower_word() + "/" + g.lower_word();
    } else if (key == "visit") {
      value = random_swhid(g, swhid::ObjectType::Snapshot).core();
    } else if (key == "anchor") {
      value = random_swhid(g, g.chance(0.5) ? swhid::ObjectType::Revision : swhid::ObjectType::Release).core();
    } else if (key == "path") {
      value = "/" + g.lower_word() + "/" + g.lower_word() + (g.chance(0.3) ? "%3B" : "") + ".c";
    } else {
      auto a = g.range(1, 500);
      value = std::to_string(a) + (g.chance(0.5) ? "-" + std::to_string(a + g.range(0, 40)) : "");
    }
    id.qualifiers.emplace_back(std::string(key), value);
  }
  return id;
}

inline std::string random_entry_name(Gen& g) {
  std::string name = g.string_from("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._- ", 1, 12);
  if (name == "." || name == ".." || name == ".git") name += "x";
  return name;
}

// Trees of depth <= max_depth with at most 5 entries per level, mixing
// regular files, executables, symlinks and subdirectories.
inline swhid::DirectoryTree random_tree(Gen& g, int max_depth = 3) {
  swhid::DirectoryTree t;
  std::set<std::string> used;
  auto n = g.range(max_depth == 3 ? 1 : 0, 5);
  for (std::int64_t i = 0; i < n; ++i) {
    auto name = random_entry_name(g);
    if (!used.insert(name).second) continue;
    double r = g.unit();
    if (r < 0.45) {
      t.add_file(name, g.chance(0.2) ? std::string() : g.bytes(static_cast<std::size_t>(g.range(1, 300))));
    } else if (r < 0.6) {
      t.add_file(name, "#!/bin/sh\necho " + g.lower_word() + "\n", true);
    } else if (r < 0.75) {
      t.add_symlink(name, "../" + g.lower_word());
    } else if (max_depth > 1) {
      t.add_directory(name, random_tree(g, max_depth - 1));
    } else {
      t.add_file(name, g.lower_word());
    }
  }
  return t;
}

inline std::optional<std::string> maybe_text(Gen& g, std::size_t max_len = 40) {
  if (g.chance(0.3)) return std::nullopt;
  return g.text(0, max_len);
}

inline codemeta::CodeMetaRecord random_codemeta(Gen& g) {
  codemeta::CodeMetaRecord r;
  r.name = g.text(1, 30);
  if (g.chance(0.7)) r.code_repository = "https://github.com/" + g.lower_word() + "/" + g.lower_word();
  if (g.chance(0.7)) r.version = std::to_string(g.range(0, 9)) + "." + std::to_string(g.range(0, 20));
  r.publisher = maybe_text(g, 20);
  r.description = maybe_text(g, 120);
  if (g.chance(0.6)) r.license = g.pick(std::vector<std::string>{"MIT", "Apache-2.0", "GPL-3.0-or-later", "BSD-3-Clause"});
  if (g.chance(0.6)) {
    r.identifier = format_swhid(g.chance(0.5) ? random_swhid(g, swhid::ObjectType::Directory)
                                              : random_qualified_swhid(g, swhid::ObjectType::Directory, false));
  }
  for (std::int64_t i = 0, n = g.range(0, 3); i < n; ++i) r.reference_publication.push_back("oai:repo:" + g.hex(6));
  for (std::int64_t i = 0, n = g.range(0, 4); i < n; ++i) r.keywords.push_back(g.text(1, 15));
  return r;
}

}  // namespace fairsoft::testing
