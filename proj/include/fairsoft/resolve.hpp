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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fairsoft/extract.hpp"

namespace fairsoft::resolve {

/// Lowercase, punctuation-free, version-free form of a software name.
class CanonicalKey {
 public:
  const std::string& value() const { return value_; }
  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;

 private:
  friend CanonicalKey normalize_name(std::string_view surface);
  explicit CanonicalKey(std::string v) : value_(std::move(v)) {}
  std::string value_;
};

/// Throws NotNormalizable when nothing survives normalization.
CanonicalKey normalize_name(std::string_view surface);

struct CatalogEntry {
  std::string name;
  std::string url;
  std::optional<std::string> publisher;
};

struct CatalogMatch {
  CatalogEntry entry;
  double score = 0.0;
};

struct AssetCandidate {
  std::string candidate_id;
  std::string canonical_name;
  std::set<std::string> aliases;
  std::set<std::string> urls;
  std::set<std::string> publishers;
  std::set<std::string> versions;
  std::set<std::string> member_groups;
  std::optional<CatalogMatch> catalog_match;
};

// What similarity sees of a group, candidate or catalog entry: its key and
// the attribute nodes (url / publisher) it links to in the entity-attribute
// graph. Versions are not part of it.
struct EntityProfile {
  CanonicalKey key;
  std::set<std::string> urls;
  std::set<std::string> publishers;
};

std::optional<EntityProfile> profile_of(const extract::MentionGroup& g);
EntityProfile profile_of(const AssetCandidate& c);
EntityProfile profile_of(const CatalogEntry& e);

struct SimilarityWeights {
  double name = 0.6;
  double attributes = 0.4;
};

std::size_t levenshtein(std::string_view a, std::string_view b);

/// weights.name * (1 - lev/maxlen) + weights.attributes * Jaccard(attribute
/// nodes); pure name similarity when both sides have no attributes.
double similarity(const EntityProfile& a, const EntityProfile& b, const SimilarityWeights& w = {});

struct ClusterConfig {
  double threshold = 0.75;
  SimilarityWeights weights;
};

/// Single-linkage clustering (union-find over every pair scoring at or
/// above the threshold). Groups whose name cannot be normalized are skipped.
/// Candidates are sorted by canonical_name, then candidate_id.
std::vector<AssetCandidate> cluster(std::span<const extract::MentionGroup> groups,
                                    const ClusterConfig& cfg = {});

struct Catalog {
  std::vector<CatalogEntry> entries;

  // TSV: name, url, publisher. Throws ConfigError on duplicate urls.
  static Catalog from_tsv(std::string_view tsv);
  static Catalog load(const std::filesystem::path& path);
};

/// Best entry by similarity, ties broken by smallest url; accepted iff the
/// score reaches `min_score`.
std::optional<CatalogMatch> align_to_catalog(const AssetCandidate& candidate, const Catalog& catalog,
                                             double min_score = 0.8, const SimilarityWeights& w = {});

nlohmann::ordered_json to_json(const AssetCandidate& c);
AssetCandidate candidate_from_json(const nlohmann::json& j);

}  // namespace fairsoft::resolve
