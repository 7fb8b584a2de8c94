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

#include "fairsoft/swhid.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fairsoft/error.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::swhid {
namespace {

std::optional<ObjectType> type_from_tag(std::string_view tag) {
  if (tag == "cnt") return ObjectType::Content;
  if (tag == "dir") return ObjectType::Directory;
  if (tag == "rev") return ObjectType::Revision;
  if (tag == "rel") return ObjectType::Release;
  if (tag == "snp") return ObjectType::Snapshot;
  return std::nullopt;
}

int qualifier_rank(std::string_view key) {
  for (int i = 0; i < 5; ++i)
    if (kQualifierKeys[i] == key) return i;
  return -1;
}

[[noreturn]] void malformed(std::string_view text, std::string_view why) {
  throw Error(ErrorCode::MalformedSwhid, std::string(why) + ": '" + std::string(text) + "'");
}

// git orders tree entries bytewise, with directory names compared as if
// they had a trailing '/'.
std::string sort_key(const TreeEntry& e) {
  return e.mode == EntryMode::Directory ? e.name + "/" : e.name;
}

}  // namespace

std::string_view type_tag(ObjectType t) {
  switch (t) {
    case ObjectType::Content: return "cnt";
    case ObjectType::Directory: return "dir";
    case ObjectType::Revision: return "rev";
    case ObjectType::Release: return "rel";
    case ObjectType::Snapshot: return "snp";
  }
  return "cnt";
}

std::string Swhid::digest_hex() const { return text::to_hex(digest); }

std::string Swhid::core() const {
  return "swh:1:" + std::string(type_tag(object_type)) + ":" + digest_hex();
}

Swhid parse_swhid(std::string_view input) {
  auto parts = text::split(input, ';');
  auto core = text::split(parts.front(), ':');
  if (core.size() != 4 || core[0] != "swh") malformed(input, "expected swh:<v>:<type>:<digest>");
  if (core[1] != "1") {
    if (!core[1].empty() && std::all_of(core[1].begin(), core[1].end(), text::is_digit))
      throw Error(ErrorCode::UnsupportedVersion,
                  "scheme version " + core[1] + " in '" + std::string(input) + "'");
    malformed(input, "bad scheme version");
  }
  auto type = type_from_tag(core[2]);
  if (!type) malformed(input, "unknown object type");
  const auto& hex = core[3];
  if (hex.size() != 40 ||
      !std::all_of(hex.begin(), hex.end(),
                   [](char c) { return text::is_digit(c) || (c >= 'a' && c <= 'f'); }))
    malformed(input, "digest must be 40 lowercase hex characters");

  Swhid id;
  id.object_type = *type;
  auto bytes = text::from_hex(hex);
  std::copy(bytes->begin(), bytes->end(), id.digest.begin());

  int last_rank = -1;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto& q = parts[i];
    auto eq = q.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == q.size())
      malformed(input, "qualifier must be key=value");
    std::string key = q.substr(0, eq);
    int rank = qualifier_rank(key);
    if (rank < 0) malformed(input, "unknown qualifier '" + key + "'");
    if (rank <= last_rank) malformed(input, "qualifiers out of order or repeated");
    last_rank = rank;
    id.qualifiers.emplace_back(std::move(key), q.substr(eq + 1));
  }
  return id;
}

std::string format_swhid(const Swhid& id) {
  std::string out = id.core();
  for (const auto& [k, v] : id.qualifiers) {
    out += ';';
    out += k;
    out += '=';
    out += v;
  }
  return out;
}

Swhid content_swhid(std::string_view bytes) {
  Swhid id;
  id.object_type = ObjectType::Content;
  id.digest = hash::Sha1()
                  .update("blob " + std::to_string(bytes.size()))
                  .update(std::string_view("\0", 1))
                  .update(bytes)
                  .finish();
  return id;
}

std::string_view git_mode(EntryMode m) {
  switch (m) {
    case EntryMode::File: return "100644";
    case EntryMode::Executable: return "100755";
    case EntryMode::Symlink: return "120000";
    case EntryMode::Directory: return "40000";
  }
  return "100644";
}

DirectoryTree& DirectoryTree::add_file(std::string name, std::string content, bool executable) {
  entries.push_back({std::move(name), executable ? EntryMode::Executable : EntryMode::File,
                     std::move(content), nullptr});
  return *this;
}

DirectoryTree& DirectoryTree::add_symlink(std::string name, std::string target) {
  entries.push_back({std::move(name), EntryMode::Symlink, std::move(target), nullptr});
  return *this;
}

DirectoryTree& DirectoryTree::add_directory(std::string name, DirectoryTree subtree) {
  entries.push_back({std::move(name), EntryMode::Directory, {},
                     std::make_shared<const DirectoryTree>(std::move(subtree))});
  return *this;
}

hash::Sha1Digest tree_digest(const DirectoryTree& tree) {
  std::vector<const TreeEntry*> sorted;
  std::set<std::string_view> seen;
  for (const auto& e : tree.entries) {
    if (e.name.empty() || e.name.find('/') != std::string::npos ||
        e.name.find('\0') != std::string::npos)
      throw Error(ErrorCode::InvalidEntryName, "invalid tree entry name '" + e.name + "'");
    if (!seen.insert(e.name).second)
      throw Error(ErrorCode::InvalidEntryName, "duplicate tree entry name '" + e.name + "'");
    sorted.push_back(&e);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const TreeEntry* a, const TreeEntry* b) { return sort_key(*a) < sort_key(*b); });

  std::string body;
  for (const auto* e : sorted) {
    hash::Sha1Digest child{};
    if (e->mode == EntryMode::Directory)
      child = tree_digest(e->subtree ? *e->subtree : DirectoryTree{});
    else
      child = content_swhid(e->content).digest;
    body += git_mode(e->mode);
    body += ' ';
    body += e->name;
    body.push_back('\0');
    body.append(reinterpret_cast<const char*>(child.data()), child.size());
  }
  return hash::Sha1()
      .update("tree " + std::to_string(body.size()))
      .update(std::string_view("\0", 1))
      .update(body)
      .finish();
}

Swhid directory_swhid(const DirectoryTree& tree) {
  Swhid id;
  id.object_type = ObjectType::Directory;
  id.digest = tree_digest(tree);
  return id;
}

DirectoryTree load_directory_tree(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  DirectoryTree tree;
  for (const auto& entry : fs::directory_iterator(root)) {
    auto name = entry.path().filename().string();
    auto status = entry.symlink_status();
    if (fs::is_symlink(status)) {
      tree.add_symlink(name, fs::read_symlink(entry.path()).string());
    } else if (fs::is_directory(status)) {
      tree.add_directory(name, load_directory_tree(entry.path()));
    } else if (fs::is_regular_file(status)) {
      std::ifstream in(entry.path(), std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      bool exec = (status.permissions() & fs::perms::owner_exec) != fs::perms::none;
      tree.add_file(name, buf.str(), exec);
    }
  }
  return tree;
}

}  // namespace fairsoft::swhid
