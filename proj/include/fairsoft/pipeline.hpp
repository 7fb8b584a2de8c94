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

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fairsoft/archival.hpp"
#include "fairsoft/codemeta.hpp"
#include "fairsoft/config.hpp"
#include "fairsoft/extract.hpp"
#include "fairsoft/harvest.hpp"
#include "fairsoft/lifecycle.hpp"
#include "fairsoft/resolve.hpp"

namespace fairsoft::pipeline {

// Base URL under which a fixture directory is served.
inline constexpr std::string_view kFixtureBaseUrl = "http://fixture.invalid/oai";

harvest::RepositoryEndpoint endpoint_of(const config::PipelineConfig& c);
std::unique_ptr<harvest::HttpFetcher> make_fetcher(const config::PipelineConfig& c);
std::unique_ptr<swhid::ArchivalClient> make_archival_client(const config::PipelineConfig& c);

// Creates the state directory; validation links point at <public base>/validate/<token>.
lifecycle::EngineOptions engine_options(const config::PipelineConfig& c);

// "Name <address>" creator entries carry the corresponding author's address.
std::string author_email_of(const harvest::HarvestRecord& record);

struct ProcessedDocument {
  harvest::HarvestRecord source;
  docmodel::Document doc;
  std::vector<extract::SoftwareMention> mentions;
  std::vector<extract::MentionGroup> groups;
};

struct PipelineReport {
  std::size_t records_harvested = 0;
  std::size_t deleted_records = 0;
  std::size_t documents_processed = 0;
  std::size_t documents_skipped = 0;
  std::size_t mentions = 0;
  std::size_t groups = 0;
  std::size_t candidates = 0;
  std::size_t records_created = 0;
  std::size_t records_existing = 0;
  harvest::HarvestStats harvest;
  std::vector<std::pair<std::string, std::string>> skipped;  // (oai identifier, reason)
};

nlohmann::ordered_json to_json(const PipelineReport& r);

/// Fetches, parses and annotates each harvested record. Records without a
/// usable full text are skipped and listed in `report`.
std::vector<ProcessedDocument> process_documents(std::span<const harvest::HarvestRecord> records,
                                                 harvest::HttpFetcher& http, const extract::Gazetteer& gazetteer,
                                                 const extract::ExtractConfig& cfg, PipelineReport& report);

std::string record_id_for(const std::string& paper_id, const std::string& candidate_id);

/// Lifecycle seeds, one per (paper, candidate) pair.
std::vector<std::pair<std::string, lifecycle::CreatedPayload>> lifecycle_seeds(
    std::span<const ProcessedDocument> docs, std::span<const resolve::AssetCandidate> candidates);

/// harvest -> parse -> extract -> resolve -> lifecycle records. The config is
/// validated and local inputs loaded before the first request. A fatal
/// error is rethrown with the stage name as detail and message prefix.
PipelineReport run_pipeline(const config::PipelineConfig& cfg, lifecycle::Engine& engine, harvest::HttpFetcher& http,
                            harvest::RetryPolicy retry = {});

/// CodeMeta for a lifecycle record, enriched from the origin's repository
/// metadata (codemeta.json, then CITATION.cff) when the config points at one.
codemeta::CodeMetaRecord asset_codemeta(const lifecycle::LifecycleRecord& record, const config::PipelineConfig& cfg);

}  // namespace fairsoft::pipeline
