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

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fairsoft/lifecycle.hpp"

namespace fairsoft::expose {

inline constexpr std::string_view kMetadataPrefix = "sofair_links";
inline constexpr std::string_view kLinksNamespace = "http://fairsoft.example.org/schema/sofair_links/1.0";
inline constexpr std::string_view kLinksSchema = "http://fairsoft.example.org/schema/sofair_links/1.0/links.xsd";
inline constexpr std::string_view kDataciteNamespace = "http://datacite.org/schema/kernel-4";

struct RelatedAsset {
  std::string swhid;
  std::string relation_type = "References";
  std::string software_name;
  std::string codemeta_ref;  // URL path of the CodeMeta document

  friend bool operator==(const RelatedAsset&, const RelatedAsset&) = default;
};

struct LinkRecord {
  std::string paper_id;
  std::string paper_title;
  std::vector<RelatedAsset> related;  // sorted by swhid, unique

  friend bool operator==(const LinkRecord&, const LinkRecord&) = default;
};

std::string codemeta_path(std::string_view record_id);

/// One entry per distinct SWHID. Every input must be Archived or Exposed
/// (IllegalTransition otherwise); no inputs gives NoLinks.
LinkRecord build_link_record(const std::string& paper_id, const std::string& paper_title,
                             std::span<const lifecycle::LifecycleRecord> archived,
                             const std::string& relation_type = "References");

// The <metadata> payload for the sofair_links format, and its reader.
std::string link_record_xml(const LinkRecord& record);
LinkRecord parse_link_record_xml(std::string_view xml_bytes);

struct ProviderConfig {
  std::string repository_name = "fairsoft link provider";
  std::string base_url = "http://localhost:8080/oai";
  std::string admin_email = "admin@example.org";
  std::string relation_type = "References";
  std::string resolver_base = "https://archive.softwareheritage.org/";
  std::string public_base_url = "http://localhost:8080";
};

using QueryParams = std::vector<std::pair<std::string, std::string>>;

/// Read-only view of the lifecycle store: only Exposed records are published.
class LinkService {
 public:
  LinkService(const lifecycle::Engine& engine, ProviderConfig config)
      : engine_(engine), config_(std::move(config)) {}

  // NotFound when the paper has no lifecycle records, NoLinks when none are exposed.
  LinkRecord links_for(const std::string& paper_id) const;
  std::vector<LinkRecord> all_links() const;

  // OAI-PMH 2.0 response document. Protocol errors are part of the response.
  std::string handle_oai(const QueryParams& params) const;

  // cite-as per SWHID and describedby per CodeMeta document.
  std::vector<std::string> signposting_headers(const std::string& paper_id) const;

  const ProviderConfig& config() const { return config_; }

 private:
  const lifecycle::Engine& engine_;
  ProviderConfig config_;
};

}  // namespace fairsoft::expose
