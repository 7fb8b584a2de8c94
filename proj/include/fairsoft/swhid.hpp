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

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairsoft/hash.hpp"

namespace fairsoft::swhid {

enum class ObjectType { Content, Directory, Revision, Release, Snapshot };

std::string_view type_tag(ObjectType t);  // "cnt", "dir", ...

// Qualifier keys in their canonical order.
inline constexpr std::string_view kQualifierKeys[] = {"origin", "visit", "anchor",
                                                      "path", "lines"};

/// Software Heritage persistent identifier: swh:1:<type>:<sha1>[;key=value]*
struct Swhid {
  ObjectType object_type = ObjectType::Content;
  hash::Sha1Digest digest{};
  std::vector<std::pair<std::string, std::string>> qualifiers;

  std::string digest_hex() const;
  // Core identifier without qualifiers.
  std::string core() const;

  friend bool operator==(const Swhid&, const Swhid&) = default;
};

/// Parses the textual form. Qualifier keys must be known, unique and appear
/// in canonical order; the digest must be 40 lowercase hex characters.
/// Throws UnsupportedVersion for a scheme version other than 1 and
/// MalformedSwhid for anything else that does not fit the grammar.
Swhid parse_swhid(std::string_view text);
std::string format_swhid(const Swhid& id);

// git blob hashing: sha1("blob " + len + "\0" + bytes)
Swhid content_swhid(std::string_view bytes);

enum class EntryMode { File, Executable, Symlink, Directory };

std::string_view git_mode(EntryMode m);  // "100644", "100755", "120000", "40000"

struct DirectoryTree;

struct TreeEntry {
  std::string name;
  EntryMode mode = EntryMode::File;
  std::string content;  // file bytes or symlink target
  std::shared_ptr<const DirectoryTree> subtree;  // Directory entries only
};

struct DirectoryTree {
  std::vector<TreeEntry> entries;

  DirectoryTree& add_file(std::string name, std::string content, bool executable = false);
  DirectoryTree& add_symlink(std::string name, std::string target);
  DirectoryTree& add_directory(std::string name, DirectoryTree subtree);
};

/// git tree hashing, recursively. Entry order in the input does not matter.
/// Throws InvalidEntryName for empty names, names containing '/' or NUL,
/// and duplicate names.
Swhid directory_swhid(const DirectoryTree& tree);

// Raw tree object digest, exposed for callers building larger objects.
hash::Sha1Digest tree_digest(const DirectoryTree& tree);

// Reads a directory from disk: regular files (executable bit honoured),
// symlinks (target not followed) and subdirectories.
DirectoryTree load_directory_tree(const std::filesystem::path& root);

}  // namespace fairsoft::swhid
