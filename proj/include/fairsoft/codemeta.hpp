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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairsoft/resolve.hpp"

namespace fairsoft::codemeta {

inline constexpr std::string_view kContext = "https://doi.org/10.5063/schema/codemeta-2.0";
inline constexpr std::string_view kType = "SoftwareSourceCode";

struct CodeMetaRecord {
  std::string name;
  std::optional<std::string> code_repository;
  std::optional<std::string> version;
  std::optional<std::string> publisher;
  std::optional<std::string> description;
  std::optional<std::string> license;     // SPDX id
  std::optional<std::string> identifier;  // SWHID text
  std::vector<std::string> reference_publication;
  std::vector<std::string> keywords;

  friend bool operator==(const CodeMetaRecord&, const CodeMetaRecord&) = default;
};

// Numeric-dotted ordering ("2.10" > "2.9"); a leading 'v' is ignored.
int compare_versions(std::string_view a, std::string_view b);

CodeMetaRecord build_codemeta(const resolve::AssetCandidate& candidate, const std::string& paper_id);

// Flat metadata read from a repository file: description, license, version,
// authors, code_repository.
using RepoMetadata = std::map<std::string, std::string>;

/// Reads codemeta.json (JSON) or CITATION.cff ("key: value" lines). Throws
/// EnrichmentSkipped when the bytes cannot be understood.
RepoMetadata parse_repo_metadata(std::string_view bytes);

/// Extracted fields win, except description and license which the
/// repository always provides when it has them.
CodeMetaRecord enrich_from_repo(const CodeMetaRecord& record, const RepoMetadata& repo);

struct Enrichment {
  CodeMetaRecord record;
  bool skipped = false;
  std::string reason;
};

// Parses `repo_doc` and enriches; unparseable input leaves the record as is.
Enrichment enrich_from_repo(const CodeMetaRecord& record, std::string_view repo_doc);

/// JSON-LD with keys @context, @type, then alphabetical; empty fields are
/// omitted. Output is byte-stable.
std::string serialize_jsonld(const CodeMetaRecord& record);
// Throws SchemaError.
CodeMetaRecord parse_jsonld(std::string_view bytes);

}  // namespace fairsoft::codemeta
