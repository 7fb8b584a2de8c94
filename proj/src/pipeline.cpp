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

#include "fairsoft/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "fairsoft/api.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/hash.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::pipeline {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& ex) {
    throw Error(ex.code(), std::string(name) + ": " + ex.what(), name);
  }
}

std::optional<fs::path> origin_dir(const config::PipelineConfig& c, const std::string& url) {
  if (!c.repo_metadata_dir) return std::nullopt;
  fs::path dir = *c.repo_metadata_dir / config::origin_dir_name(url);
  if (!fs::is_directory(dir)) return std::nullopt;
  return dir;
}

std::optional<std::string> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

harvest::RepositoryEndpoint endpoint_of(const config::PipelineConfig& c) {
  harvest::RepositoryEndpoint e;
  e.base_url = c.fixture_dir ? std::string(kFixtureBaseUrl) : c.base_url;
  e.metadata_prefix = c.metadata_prefix;
  e.set_spec = c.set_spec;
  return e;
}

std::unique_ptr<harvest::HttpFetcher> make_fetcher(const config::PipelineConfig& c) {
  if (c.fixture_dir) return std::make_unique<harvest::DirectoryFetcher>(*c.fixture_dir, std::string(kFixtureBaseUrl));
  return std::make_unique<harvest::HttplibFetcher>();
}

std::unique_ptr<swhid::ArchivalClient> make_archival_client(const config::PipelineConfig& c) {
  if (c.archival_mode == config::ArchivalMode::Http) {
    return std::make_unique<swhid::HttpArchivalClient>(swhid::HttpArchivalConfig{c.archival_url});
  }
  auto mock = std::make_unique<swhid::MockArchivalClient>(c.polls_until_done);
  mock->set_origin_resolver([c](const std::string& url) -> std::optional<swhid::DirectoryTree> {
    auto dir = origin_dir(c, url);
    if (!dir) return std::nullopt;
    return swhid::load_directory_tree(*dir);
  });
  return mock;
}

lifecycle::EngineOptions engine_options(const config::PipelineConfig& c) {
  std::error_code ec;
  for (const auto& p : {c.state_dir, c.event_log.parent_path(), c.outbox.parent_path()}) {
    if (!p.empty()) fs::create_directories(p, ec);
    if (ec) throw Error(ErrorCode::ConfigError, "cannot create " + p.string() + ": " + ec.message());
  }
  lifecycle::EngineOptions o;
  o.event_log = c.event_log;
  o.outbox = c.outbox;
  o.validation_base_url = api::public_base_url(c) + "/validate/";
  return o;
}

std::string author_email_of(const harvest::HarvestRecord& record) {
  for (const auto& c : record.creators) {
    auto open = c.find('<');
    auto close = c.find('>', open == std::string::npos ? 0 : open);
    if (open != std::string::npos && close != std::string::npos && close > open + 1) {
      std::string addr = c.substr(open + 1, close - open - 1);
      if (addr.find('@') != std::string::npos) return addr;
    }
  }
  return {};
}

ordered_json to_json(const PipelineReport& r) {
  ordered_json j;
  j["records_harvested"] = r.records_harvested;
  j["deleted_records"] = r.deleted_records;
  j["documents_processed"] = r.documents_processed;
  j["documents_skipped"] = r.documents_skipped;
  j["mentions"] = r.mentions;
  j["groups"] = r.groups;
  j["candidates"] = r.candidates;
  j["records_created"] = r.records_created;
  j["records_existing"] = r.records_existing;
  j["harvest"] = {{"pages", r.harvest.pages},
                  {"requests", r.harvest.requests},
                  {"duplicates_skipped", r.harvest.duplicates_skipped}};
  ordered_json skipped = ordered_json::array();
  for (const auto& [id, reason] : r.skipped) skipped.push_back({{"identifier", id}, {"reason", reason}});
  j["skipped"] = std::move(skipped);
  return j;
}

std::vector<ProcessedDocument> process_documents(std::span<const harvest::HarvestRecord> records,
                                                 harvest::HttpFetcher& http, const extract::Gazetteer& gazetteer,
                                                 const extract::ExtractConfig& cfg, PipelineReport& report) {
  std::vector<ProcessedDocument> out;
  for (const auto& rec : records) {
    if (rec.deleted) {
      ++report.deleted_records;
      continue;
    }
    ProcessedDocument pd;
    pd.source = rec;
    try {
      auto ft = harvest::fetch_fulltext(rec, http);
      pd.doc = docmodel::parse_fulltext(ft.bytes, ft.media_type, rec.oai_identifier);
    } catch (const Error& ex) {
      switch (ex.code()) {
        case ErrorCode::NoFulltext:
        case ErrorCode::UnsupportedFormat:
        case ErrorCode::TransportError:
        case ErrorCode::EmptyDocument:
        case ErrorCode::ParseError:
          ++report.documents_skipped;
          report.skipped.emplace_back(rec.oai_identifier, ex.what());
          continue;
        default:
          throw;
      }
    }
    pd.mentions = extract::extract_mentions(pd.doc, gazetteer, cfg);
    pd.groups = extract::attach_attributes(pd.mentions, pd.doc);
    report.mentions += pd.mentions.size();
    report.groups += pd.groups.size();
    ++report.documents_processed;
    out.push_back(std::move(pd));
  }
  return out;
}

std::string record_id_for(const std::string& paper_id, const std::string& candidate_id) {
  return "rec-" + hash::sha1_hex(paper_id + "\n" + candidate_id).substr(0, 16);
}

std::vector<std::pair<std::string, lifecycle::CreatedPayload>> lifecycle_seeds(
    std::span<const ProcessedDocument> docs, std::span<const resolve::AssetCandidate> candidates) {
  std::map<std::string, const extract::MentionGroup*> group_by_id;
  std::map<std::string, const ProcessedDocument*> doc_by_id;
  for (const auto& d : docs) {
    doc_by_id[d.doc.doc_id] = &d;
    for (const auto& g : d.groups) group_by_id[g.group_id] = &g;
  }

  std::vector<std::pair<std::string, lifecycle::CreatedPayload>> out;
  for (const auto& cand : candidates) {
    // Member groups per paper, in document order.
    std::map<std::string, std::vector<const extract::MentionGroup*>> per_paper;
    for (const auto& gid : cand.member_groups) {
      auto it = group_by_id.find(gid);
      if (it != group_by_id.end()) per_paper[it->second->doc_id].push_back(it->second);
    }
    for (auto& [paper, groups] : per_paper) {
      std::sort(groups.begin(), groups.end(),
                [](const auto* a, const auto* b) { return a->name.span < b->name.span; });
      const ProcessedDocument& pd = *doc_by_id.at(paper);

      lifecycle::CreatedPayload p;
      p.paper_id = paper;
      p.paper_title = pd.source.title;
      p.author_email = author_email_of(pd.source);
      p.candidate_id = cand.candidate_id;
      p.candidate.name = cand.canonical_name;
      p.candidate.aliases.assign(cand.aliases.begin(), cand.aliases.end());
      for (const auto* g : groups) {
        if (g->url && !p.candidate.url) p.candidate.url = g->url->surface;
        if (g->publisher && !p.candidate.publisher) p.candidate.publisher = g->publisher->surface;
        if (g->version &&
            (!p.candidate.version || codemeta::compare_versions(g->version->surface, *p.candidate.version) > 0)) {
          p.candidate.version = g->version->surface;
        }
      }
      if (!p.candidate.url && !cand.urls.empty()) p.candidate.url = *cand.urls.begin();
      if (!p.candidate.url && cand.catalog_match) p.candidate.url = cand.catalog_match->entry.url;
      if (!p.candidate.publisher && cand.publishers.size() == 1) p.candidate.publisher = *cand.publishers.begin();
      if (!p.candidate.publisher && cand.catalog_match) p.candidate.publisher = cand.catalog_match->entry.publisher;

      const extract::MentionGroup& first = *groups.front();
      const docmodel::Span sentence = pd.doc.sentences.at(first.sentence_index);
      p.context.sentence = std::string(pd.doc.slice(sentence));
      p.context.sentence_start_byte = sentence.start_byte;
      std::vector<const extract::SoftwareMention*> parts = {&first.name};
      for (const auto& m : {&first.version, &first.publisher, &first.url}) {
        if (*m) parts.push_back(&**m);
      }
      std::sort(parts.begin(), parts.end(), [](const auto* a, const auto* b) { return a->span < b->span; });
      for (const auto* m : parts) {
        p.context.mentions.push_back(
            {std::string(extract::to_string(m->component)), m->span.start_byte, m->span.end_byte, m->surface});
      }
      out.emplace_back(record_id_for(paper, cand.candidate_id), std::move(p));
    }
  }
  return out;
}

PipelineReport run_pipeline(const config::PipelineConfig& cfg, lifecycle::Engine& engine, harvest::HttpFetcher& http,
                            harvest::RetryPolicy retry) {
  stage("config", [&] { cfg.validate(); });
  auto gazetteer = stage("extract", [&] { return extract::Gazetteer::load(cfg.gazetteer); });
  std::optional<resolve::Catalog> catalog;
  if (cfg.catalog) catalog = stage("resolve", [&] { return resolve::Catalog::load(*cfg.catalog); });

  PipelineReport report;
  std::vector<harvest::HarvestRecord> records;
  report.harvest = stage("harvest", [&] {
    return harvest::harvest_all(endpoint_of(cfg), http, [&](const harvest::HarvestRecord& r) { records.push_back(r); },
                                retry);
  });
  report.records_harvested = records.size();

  extract::ExtractConfig ecfg{cfg.min_confidence, cfg.version_window};
  auto docs = stage("extract", [&] { return process_documents(records, http, gazetteer, ecfg, report); });

  auto candidates = stage("resolve", [&] {
    std::vector<extract::MentionGroup> groups;
    for (const auto& d : docs) groups.insert(groups.end(), d.groups.begin(), d.groups.end());
    resolve::ClusterConfig ccfg;
    ccfg.threshold = cfg.threshold;
    auto out = resolve::cluster(groups, ccfg);
    if (catalog) {
      for (auto& c : out) c.catalog_match = resolve::align_to_catalog(c, *catalog, cfg.catalog_min_score);
    }
    return out;
  });
  report.candidates = candidates.size();

  stage("lifecycle", [&] {
    for (const auto& [id, payload] : lifecycle_seeds(docs, candidates)) {
      auto res = engine.create_record(id, payload);
      ++(res.created ? report.records_created : report.records_existing);
    }
  });
  return report;
}

codemeta::CodeMetaRecord asset_codemeta(const lifecycle::LifecycleRecord& record, const config::PipelineConfig& cfg) {
  codemeta::CodeMetaRecord base = lifecycle::codemeta_of(record);
  if (!record.candidate.url) return base;
  auto dir = origin_dir(cfg, *record.candidate.url);
  if (!dir) return base;
  for (const char* name : {"codemeta.json", "CITATION.cff"}) {
    if (auto doc = read_file(*dir / name)) {
      auto e = codemeta::enrich_from_repo(base, *doc);
      if (!e.skipped) return e.record;
    }
  }
  return base;
}

}  // namespace fairsoft::pipeline
