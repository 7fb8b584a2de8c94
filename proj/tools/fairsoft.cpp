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

#include <atomic>
#include <condition_variable>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairsoft/api.hpp"
#include "fairsoft/config.hpp"
#include "fairsoft/demo.hpp"
#include "fairsoft/docmodel.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/extract.hpp"
#include "fairsoft/lifecycle.hpp"
#include "fairsoft/pipeline.hpp"
#include "fairsoft/resolve.hpp"
#include "fairsoft/server.hpp"

namespace fs = std::filesystem;
using namespace fairsoft;
using nlohmann::json;

namespace {

struct GlobalOptions {
  std::string config;
  std::optional<double> threshold;
  std::optional<double> min_confidence;
  bool mock_archival = false;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

config::PipelineConfig load_config(const GlobalOptions& g, const std::string& fallback = {}) {
  std::string path = g.config.empty() ? fallback : g.config;
  if (path.empty()) throw Error(ErrorCode::ConfigError, "--config is required");
  config::PipelineConfig c = config::load(path);
  if (g.threshold) c.threshold = *g.threshold;
  if (g.min_confidence) c.min_confidence = *g.min_confidence;
  if (g.mock_archival) c.archival_mode = config::ArchivalMode::Mock;
  c.validate();
  return c;
}

std::vector<harvest::HarvestRecord> harvest_records(const config::PipelineConfig& c, harvest::HttpFetcher& http,
                                                    harvest::HarvestStats* stats = nullptr) {
  std::vector<harvest::HarvestRecord> out;
  auto s = harvest::harvest_all(pipeline::endpoint_of(c), http, [&](const auto& r) { out.push_back(r); });
  if (stats) *stats = s;
  return out;
}

json record_json(const harvest::HarvestRecord& r) {
  json j = {{"identifier", r.oai_identifier}, {"datestamp", r.datestamp}, {"deleted", r.deleted},
            {"title", r.title},               {"creators", r.creators}};
  if (r.fulltext_link) j["fulltext_link"] = *r.fulltext_link;
  return j;
}

int cmd_harvest(const GlobalOptions& g) {
  auto c = load_config(g);
  auto http = pipeline::make_fetcher(c);
  harvest::HarvestStats stats;
  for (const auto& r : harvest_records(c, *http, &stats)) std::cout << record_json(r).dump() << "\n";
  std::cerr << "harvested " << stats.pages << " pages in " << stats.requests << " requests\n";
  return 0;
}

docmodel::Document load_document(const fs::path& p) {
  std::string bytes = read_file(p);
  std::string ext = p.extension().string();
  std::string media = ext == ".txt" ? "text/plain" : ext == ".xml" ? "application/tei+xml" : "";
  if (media.empty()) throw Error(ErrorCode::UnsupportedFormat, "unknown file type " + p.string());
  return docmodel::parse_fulltext(bytes, media, p.stem().string());
}

int cmd_extract(const GlobalOptions& g, const std::string& input, const std::string& gazetteer_path,
                const std::string& groups_out) {
  std::vector<extract::SoftwareMention> mentions;
  std::vector<extract::MentionGroup> groups;
  if (!input.empty()) {
    std::string gz = gazetteer_path;
    double min_conf = g.min_confidence.value_or(0.5);
    if (gz.empty()) {
      auto c = load_config(g);
      gz = c.gazetteer.string();
      min_conf = c.min_confidence;
    }
    auto gazetteer = extract::Gazetteer::load(gz);
    auto doc = load_document(input);
    mentions = extract::extract_mentions(doc, gazetteer, {min_conf, 10});
    groups = extract::attach_attributes(mentions, doc);
  } else {
    auto c = load_config(g);
    auto gazetteer = extract::Gazetteer::load(c.gazetteer);
    auto http = pipeline::make_fetcher(c);
    auto records = harvest_records(c, *http);
    pipeline::PipelineReport report;
    for (auto& d : pipeline::process_documents(records, *http, gazetteer, {c.min_confidence, c.version_window},
                                               report)) {
      mentions.insert(mentions.end(), d.mentions.begin(), d.mentions.end());
      groups.insert(groups.end(), d.groups.begin(), d.groups.end());
    }
    std::cerr << report.documents_processed << " documents, " << report.documents_skipped << " skipped\n";
  }
  for (const auto& m : mentions) std::cout << extract::to_json(m).dump() << "\n";
  if (!groups_out.empty()) {
    std::ofstream out(groups_out, std::ios::binary);
    for (const auto& gr : groups) out << extract::to_json(gr).dump() << "\n";
  }
  return 0;
}

int cmd_resolve(const GlobalOptions& g, const std::string& groups_in) {
  std::vector<extract::MentionGroup> groups;
  std::optional<resolve::Catalog> catalog;
  resolve::ClusterConfig ccfg;
  double catalog_min = 0.8;
  if (!groups_in.empty()) {
    std::istringstream in(read_file(groups_in));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) groups.push_back(extract::group_from_json(json::parse(line)));
    }
    if (!g.config.empty()) {
      auto c = load_config(g);
      ccfg.threshold = c.threshold;
      catalog_min = c.catalog_min_score;
      if (c.catalog) catalog = resolve::Catalog::load(*c.catalog);
    }
    if (g.threshold) ccfg.threshold = *g.threshold;
  } else {
    auto c = load_config(g);
    ccfg.threshold = c.threshold;
    catalog_min = c.catalog_min_score;
    if (c.catalog) catalog = resolve::Catalog::load(*c.catalog);
    auto gazetteer = extract::Gazetteer::load(c.gazetteer);
    auto http = pipeline::make_fetcher(c);
    auto records = harvest_records(c, *http);
    pipeline::PipelineReport report;
    for (auto& d : pipeline::process_documents(records, *http, gazetteer, {c.min_confidence, c.version_window},
                                               report)) {
      groups.insert(groups.end(), d.groups.begin(), d.groups.end());
    }
  }
  auto candidates = resolve::cluster(groups, ccfg);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& cand : candidates) {
    if (catalog) cand.catalog_match = resolve::align_to_catalog(cand, *catalog, catalog_min);
    arr.push_back(resolve::to_json(cand));
  }
  std::cout << arr.dump(2) << "\n";
  return 0;
}

int cmd_run_pipeline(const GlobalOptions& g) {
  auto c = load_config(g);
  lifecycle::Engine engine(pipeline::engine_options(c));
  auto http = pipeline::make_fetcher(c);
  auto report = pipeline::run_pipeline(c, engine, *http);
  std::cout << pipeline::to_json(report).dump(2) << "\n";
  return 0;
}

int cmd_eval(const GlobalOptions& g, const std::string& corpus_dir, std::string gazetteer_path, std::string gold_path) {
  fs::path corpus = corpus_dir.empty() ? fs::path(FAIRSOFT_FIXTURES_DIR) / "eval" : fs::path(corpus_dir);
  if (gazetteer_path.empty()) gazetteer_path = (corpus / "gazetteer.tsv").string();
  if (gold_path.empty()) gold_path = (corpus / "gold.jsonl").string();
  auto gazetteer = extract::Gazetteer::load(gazetteer_path);
  auto gold = extract::read_gold_jsonl(read_file(gold_path));
  extract::ExtractConfig cfg;
  if (g.min_confidence) cfg.min_confidence = *g.min_confidence;

  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(corpus / "docs")) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<extract::SoftwareMention> predicted;
  std::vector<std::string> doc_ids;
  for (const auto& f : files) {
    auto doc = load_document(f);
    doc_ids.push_back(doc.doc_id);
    auto m = extract::extract_mentions(doc, gazetteer, cfg);
    predicted.insert(predicted.end(), m.begin(), m.end());
  }
  auto report = extract::evaluate(predicted, gold, doc_ids);
  std::cout << extract::to_json(report).dump(2) << "\n";
  return 0;
}

int cmd_serve(const GlobalOptions& g) {
  auto c = load_config(g);
  // SIGINT/SIGTERM are consumed by the waiter thread below.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  lifecycle::Engine engine(pipeline::engine_options(c));
  api::Api api(engine, c);
  server::Server srv(c.static_dir);
  int port = srv.bind(c.listen_host, c.listen_port);
  srv.set_api(api);
  std::cerr << "listening on " << c.listen_host << ":" << port << " (" << engine.list().size() << " records)\n";

  std::atomic<bool> stopping{false};
  std::mutex mu;
  std::condition_variable cv;
  std::thread registrar([&] {
    auto client = pipeline::make_archival_client(c);
    lifecycle::ArchiveOptions opts{c.max_polls, c.poll_interval};
    std::unique_lock lock(mu);
    while (!stopping) {
      lock.unlock();
      try {
        if (auto n = engine.advance_registrations(*client, opts)) std::cerr << "exposed " << n << " records\n";
      } catch (const std::exception& ex) {
        std::cerr << "registration: " << ex.what() << "\n";
      }
      lock.lock();
      cv.wait_for(lock, c.registration_interval, [&] { return stopping.load(); });
    }
  });
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "shutting down\n";
    {
      std::lock_guard lock(mu);
      stopping = true;
    }
    cv.notify_all();
    srv.stop();
  });
  srv.run();
  waiter.join();
  registrar.join();
  return 0;
}

int cmd_demo(const GlobalOptions& g, std::string state_dir) {
  fs::path default_cfg = fs::path(FAIRSOFT_FIXTURES_DIR) / "demo" / "config.toml";
  auto c = load_config(g, default_cfg.string());
  if (state_dir.empty()) {
    std::string tmpl = (fs::temp_directory_path() / "fairsoft-demo-XXXXXX").string();
    if (!mkdtemp(tmpl.data())) throw Error(ErrorCode::ConfigError, "cannot create a temporary state directory");
    state_dir = tmpl;
  }
  c.state_dir = state_dir;
  c.event_log = c.state_dir / "events.jsonl";
  c.outbox = c.state_dir / "outbox.jsonl";
  std::cerr << "state directory: " << c.state_dir.string() << "\n";

  auto result = demo::run_demo(c, std::cerr);
  for (const auto& p : result.papers) {
    std::cout << "paper " << p.paper_id << "\n";
    for (const auto& s : p.swhids) std::cout << "  swhid " << s << "\n";
    std::cout << "  Link: " << p.link_header << "\n";
  }
  if (!result.papers.empty()) {
    std::cout << "\nGetRecord " << result.papers.front().paper_id << ":\n" << result.papers.front().get_record_xml;
  }
  for (const auto& f : result.failures) std::cout << "FAILURE: " << f << "\n";
  std::cout << "demo " << (result.ok() ? "succeeded" : "failed") << " in " << result.elapsed.count() << " ms\n";
  return result.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairsoft: research software mention pipeline and link provider"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--config", g.config, "Configuration file (TOML-style)");
  app.add_option("--threshold", g.threshold, "Clustering threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--min-confidence", g.min_confidence, "Minimum mention confidence")->check(CLI::Range(0.0, 1.0));
  app.add_flag("--mock-archival", g.mock_archival, "Use the in-process archive");

  auto* harvest = app.add_subcommand("harvest", "Harvest records and print them as JSON Lines");

  std::string input, gazetteer, groups_out;
  auto* extract = app.add_subcommand("extract", "Extract software mentions");
  extract->add_option("--input", input, "Single TEI (.xml) or text (.txt) file instead of harvesting");
  extract->add_option("--gazetteer", gazetteer, "Gazetteer TSV (with --input)");
  extract->add_option("--groups-out", groups_out, "Write mention groups as JSON Lines");

  std::string groups_in;
  auto* resolve = app.add_subcommand("resolve", "Cluster mention groups into asset candidates");
  resolve->add_option("--groups", groups_in, "Mention groups JSON Lines (from extract --groups-out)");

  auto* run = app.add_subcommand("run-pipeline", "Harvest, extract, resolve and create lifecycle records");

  std::string corpus, gold;
  auto* eval = app.add_subcommand("eval", "Evaluate extraction against a gold corpus");
  eval->add_option("--corpus", corpus, "Corpus directory with docs/, gold.jsonl and gazetteer.tsv");
  eval->add_option("--gazetteer", gazetteer, "Gazetteer override");
  eval->add_option("--gold", gold, "Gold JSON Lines override");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API, OAI-PMH provider and dashboard");

  std::string state_dir;
  auto* demo = app.add_subcommand("demo", "Run the end-to-end demo on the bundled fixture repository");
  demo->add_option("--state-dir", state_dir, "Keep the event log and outbox here");

  CLI11_PARSE(app, argc, argv);
  try {
    if (harvest->parsed()) return cmd_harvest(g);
    if (extract->parsed()) return cmd_extract(g, input, gazetteer, groups_out);
    if (resolve->parsed()) return cmd_resolve(g, groups_in);
    if (run->parsed()) return cmd_run_pipeline(g);
    if (eval->parsed()) return cmd_eval(g, corpus, gazetteer, gold);
    if (serve->parsed()) return cmd_serve(g);
    if (demo->parsed()) return cmd_demo(g, state_dir);
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return ex.code() == ErrorCode::ConfigError ? 2 : 1;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
