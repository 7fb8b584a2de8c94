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

#include "fairsoft/demo.hpp"

#include <fstream>
#include <regex>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "fairsoft/api.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/lifecycle.hpp"
#include "fairsoft/server.hpp"
#include "fairsoft/weblink.hpp"

namespace fairsoft::demo {

using nlohmann::json;

namespace {

// record id -> token, from the most recent outbox message per record.
std::map<std::string, std::string> tokens_from_outbox(const std::filesystem::path& outbox) {
  static const std::regex kUrl(R"(/validate/([A-Za-z0-9_-]+))");
  std::map<std::string, std::string> out;
  std::ifstream in(outbox);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json m = json::parse(line);
    std::string body = m.at("body").get<std::string>();
    std::smatch match;
    if (std::regex_search(body, match, kUrl)) out[m.at("record_id").get<std::string>()] = match[1];
  }
  return out;
}

}  // namespace

DemoResult run_demo(const config::PipelineConfig& cfg_in, std::ostream& log) {
  const auto t0 = std::chrono::steady_clock::now();
  DemoResult result;
  config::PipelineConfig cfg = cfg_in;
  cfg.validate();

  // Validation links and Signposting targets use the bound port.
  server::Server srv(cfg.static_dir, false);
  cfg.listen_host = "127.0.0.1";
  cfg.listen_port = srv.bind(cfg.listen_host, 0);
  cfg.public_base_url = "http://127.0.0.1:" + std::to_string(cfg.listen_port);
  lifecycle::Engine engine(pipeline::engine_options(cfg));
  api::Api api(engine, cfg);
  srv.set_api(api);
  std::thread server_thread([&] { srv.run(); });
  struct Join {
    server::Server& s;
    std::thread& t;
    ~Join() {
      s.stop();
      if (t.joinable()) t.join();
    }
  } join{srv, server_thread};

  auto fetcher = pipeline::make_fetcher(cfg);
  harvest::RetryPolicy retry;
  retry.initial_backoff = std::chrono::milliseconds(10);
  result.report = pipeline::run_pipeline(cfg, engine, *fetcher, retry);
  log << "pipeline: " << result.report.documents_processed << " documents, " << result.report.mentions
      << " mentions, " << result.report.candidates << " candidates, " << result.report.records_created
      << " records created\n";

  httplib::Client client(cfg.listen_host, cfg.listen_port);
  client.set_read_timeout(30, 0);
  for (int i = 0; i < 100 && !client.Get("/api/health"); ++i) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }

  auto pending = client.Get("/api/pending");
  if (!pending || pending->status != 200) {
    result.failures.push_back("GET /api/pending failed");
    return result;
  }
  const json queue = json::parse(pending->body);
  for (const auto& rec : queue.at("records")) {
    std::string id = rec.at("record_id").get<std::string>();
    auto res = client.Post("/api/records/" + id + "/manager-approve", "", "application/json");
    if (res && res->status == 200) {
      ++result.approved;
    } else {
      result.failures.push_back("manager-approve " + id + " -> " + (res ? std::to_string(res->status) : "no response"));
    }
  }
  log << "manager approved " << result.approved << " records\n";

  for (const auto& [record_id, token] : tokens_from_outbox(cfg.outbox)) {
    auto view = client.Get("/api/validate/" + token);
    if (!view || view->status != 200) continue;  // superseded or already decided
    auto res = client.Post("/api/validate/" + token, R"({"decision":"confirm"})", "application/json");
    if (res && res->status == 200) {
      ++result.confirmed;
    } else {
      result.failures.push_back("confirm " + record_id + " -> " + (res ? std::to_string(res->status) : "no response"));
    }
  }
  log << "authors confirmed " << result.confirmed << " records\n";

  auto archive = pipeline::make_archival_client(cfg);
  lifecycle::ArchiveOptions aopts{cfg.max_polls, cfg.poll_interval};
  result.exposed = engine.advance_registrations(*archive, aopts);
  log << "archived and exposed " << result.exposed << " records\n";

  std::map<std::string, std::vector<std::string>> by_paper;
  for (const auto& r : engine.in_state(lifecycle::State::Exposed)) {
    by_paper[r->paper_id].push_back(swhid::format_swhid(*r->swhid));
  }
  for (const auto& [paper, swhids] : by_paper) {
    PaperLinks pl{paper, swhids, {}, {}};
    httplib::Params q = {{"verb", "GetRecord"}, {"identifier", paper}, {"metadataPrefix", "sofair_links"}};
    auto rec = client.Get("/oai", q, httplib::Headers{});
    if (!rec || rec->status != 200) {
      result.failures.push_back("GetRecord " + paper + " failed");
      continue;
    }
    pl.get_record_xml = rec->body;
    for (const auto& s : swhids) {
      if (rec->body.find(s) == std::string::npos) result.failures.push_back("GetRecord " + paper + " lacks " + s);
    }
    auto links = client.Get("/api/papers/" + httplib::detail::encode_url(paper) + "/links");
    if (!links || links->status != 200 || !links->has_header("Link")) {
      result.failures.push_back("links " + paper + " failed");
      continue;
    }
    pl.link_header = links->get_header_value("Link");
    try {
      auto parsed = weblink::parse_link_header(pl.link_header);
      std::size_t cite = 0;
      for (const auto& l : parsed) cite += l.param("rel") == std::optional<std::string>("cite-as");
      if (cite != std::set<std::string>(swhids.begin(), swhids.end()).size()) {
        result.failures.push_back("links " + paper + ": cite-as count mismatch");
      }
    } catch (const Error& ex) {
      result.failures.push_back("links " + paper + ": " + ex.what());
    }
    result.papers.push_back(std::move(pl));
  }
  if (result.papers.empty()) result.failures.push_back("no paper was exposed");

  result.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  return result;
}

}  // namespace fairsoft::demo
