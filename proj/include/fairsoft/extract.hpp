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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fairsoft/docmodel.hpp"

namespace fairsoft::extract {

using docmodel::Document;
using docmodel::Span;

enum class Component { SoftwareName, Version, Publisher, Url };
enum class MentionStyle { Informal, FormalWithReference };

std::string_view to_string(Component c);
Component component_from_string(std::string_view s);  // throws ParseError
std::string_view to_string(MentionStyle s);

struct GazetteerEntry {
  std::string name;
  std::set<std::string> aliases;
  std::optional<std::string> canonical_url;
  std::optional<std::string> publisher;
};

/// Curated dictionary of software names. Every surface form (the canonical
/// name and each alias) belongs to exactly one entry.
class Gazetteer {
 public:
  // Throws ConfigError on an empty name or a surface already owned by
  // another entry, ignoring case and spacing. Re-adding an entry with the
  // same name merges aliases.
  void add(GazetteerEntry entry);

  // TSV: name, pipe-separated aliases, canonical_url, publisher. Empty cells
  // are allowed; '#' starts a comment line; an optional "name" header row is
  // skipped.
  static Gazetteer from_tsv(std::string_view tsv);
  static Gazetteer load(const std::filesystem::path& path);

  const std::map<std::string, GazetteerEntry>& entries() const { return entries_; }
  const GazetteerEntry* find(std::string_view canonical) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, GazetteerEntry> entries_;
  std::map<std::string, std::string> surface_owner_;
};

struct SoftwareMention {
  std::string mention_id;
  std::string doc_id;
  Component component = Component::SoftwareName;
  Span span;
  std::string surface;
  std::size_t sentence_index = 0;
  double confidence = 0.0;
  // Gazetteer entry behind a SoftwareName mention; empty otherwise.
  std::string canonical;
};

struct MentionGroup {
  std::string group_id;
  std::string doc_id;
  std::size_t sentence_index = 0;
  SoftwareMention name;
  std::optional<SoftwareMention> version;
  std::optional<SoftwareMention> publisher;
  std::optional<SoftwareMention> url;
  MentionStyle style = MentionStyle::Informal;
};

struct ExtractConfig {
  double min_confidence = 0.5;
  std::size_t version_window = 10;  // tokens after a name
};

/// Gazetteer + rules recognizer. Output is sorted by span start and fully
/// determined by (doc, gazetteer, cfg).
std::vector<SoftwareMention> extract_mentions(const Document& doc, const Gazetteer& gaz,
                                              const ExtractConfig& cfg = {});

/// Groups attributes with the nearest preceding SoftwareName in the same
/// sentence (nearest following when none precedes); orphans are dropped.
std::vector<MentionGroup> attach_attributes(std::span<const SoftwareMention> mentions,
                                            const Document& doc);

/// FormalWithReference iff the sentence carries a citation marker that
/// resolves to a reference: "[n]" (n-th reference, 1-based) or
/// "(Author, year)" (a reference whose text has both).
MentionStyle classify_style(std::string_view sentence, std::span<const docmodel::Reference> references);
MentionStyle classify_style(const MentionGroup& group, const Document& doc);

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;

  double precision() const;
  double recall() const;
  double f1() const;
};

struct EvaluationReport {
  std::map<Component, Counts> per_component;
  Counts micro;
  std::size_t docs_total = 0;
  std::size_t docs_zero_mention = 0;
};

/// Exact span + component matching, one-to-one. `doc_ids` lists the
/// evaluated documents so documents without any mention still count.
EvaluationReport evaluate(std::span<const SoftwareMention> predicted,
                          std::span<const SoftwareMention> gold,
                          std::span<const std::string> doc_ids = {});

nlohmann::ordered_json to_json(const SoftwareMention& m);
nlohmann::ordered_json to_json(const MentionGroup& g);
nlohmann::ordered_json to_json(const EvaluationReport& r);
MentionGroup group_from_json(const nlohmann::json& j);
SoftwareMention mention_from_json(const nlohmann::json& j);

// Gold annotations: one {doc_id, component, start_byte, end_byte, surface}
// object per line.
std::vector<SoftwareMention> read_gold_jsonl(std::string_view jsonl);
std::string write_gold_jsonl(std::span<const SoftwareMention> mentions);

}  // namespace fairsoft::extract
