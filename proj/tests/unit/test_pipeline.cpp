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

#include <doctest.h>

#include <set>

#include "corpus.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/pipeline.hpp"
#include "scratch.hpp"

using namespace fairsoft;
using namespace fairsoft::pipeline;
using testing::ScratchDir;

namespace {

config::PipelineConfig demo_config(const ScratchDir& dir) {
  auto c = config::load(testing::fixtures() / "demo" / "config.toml");
  c.state_dir = dir.path();
  c.event_log = dir.path() / "events.jsonl";
  c.outbox = dir.path() / "outbox.jsonl";
  return c;
}

harvest::RetryPolicy fast_retry() {
  harvest::RetryPolicy p;
  p.sleep = [](std::chrono::milliseconds) {};
  return p;
}

// Counts requests; fails every request to the configured host.
class CountingFetcher : public harvest::HttpFetcher {
 public:
  int requests = 0;
  harvest::HttpResponse get(const std::string&) override {
    ++requests;
    throw Error(ErrorCode::TransportError, "no network in tests");
  }
};

}  // namespace

TEST_CASE("author email from creators") {
  harvest::HarvestRecord r;
  r.creators = {"Nowak, Piotr", "Müller, Ana <ana@example.org>"};
  CHECK(author_email_of(r) == "ana@example.org");
  r.creators = {"No Mail <>", "Bad <not-an-address>"};
  CHECK(author_email_of(r).empty());
}

TEST_CASE("record ids are stable") {
  CHECK(record_id_for("p", "c") == record_id_for("p", "c"));
  CHECK(record_id_for("p", "c") != record_id_for("p", "d"));
  CHECK(record_id_for("p", "c").size() == 20);
}

TEST_CASE("demo repository through the pipeline") {
  ScratchDir dir("pipe");
  auto cfg = demo_config(dir);
  lifecycle::Engine engine(engine_options(cfg));
  auto fetcher = make_fetcher(cfg);
  auto report = run_pipeline(cfg, engine, *fetcher, fast_retry());

  auto manifest = nlohmann::json::parse(testing::slurp(testing::fixtures() / "demo" / "manifest.json"));
  CHECK(report.records_harvested == manifest["records"].get<std::size_t>());
  CHECK(report.deleted_records == manifest["deleted"].get<std::size_t>());
  CHECK(report.documents_processed == manifest["documents"].get<std::size_t>());
  CHECK(report.documents_skipped == manifest["unsupported"].get<std::size_t>());
  CHECK(report.harvest.pages == manifest["pages"].get<std::size_t>());
  CHECK(report.mentions == manifest["gold_mentions"].get<std::size_t>());
  CHECK(report.records_created > 0);
  CHECK(report.records_existing == 0);
  CHECK(report.candidates > 0);

  auto records = engine.list();
  CHECK(records.size() == report.records_created);
  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& r : records) {
    CHECK(r->state == lifecycle::State::PendingManagerApproval);
    CHECK(pairs.insert({r->paper_id, r->candidate_id}).second);
    CHECK(!r->author_email.empty());
    CHECK(!r->context.sentence.empty());
    REQUIRE(!r->context.mentions.empty());
    for (const auto& m : r->context.mentions) {
      CHECK(m.start_byte >= r->context.sentence_start_byte);
      CHECK(r->context.sentence.substr(m.start_byte - r->context.sentence_start_byte, m.end_byte - m.start_byte) ==
            m.surface);
    }
  }

  // Running again creates nothing new.
  auto again = run_pipeline(cfg, engine, *fetcher, fast_retry());
  CHECK(again.records_created == 0);
  CHECK(again.records_existing == report.records_created);
}

TEST_CASE("grobid record carries its URL and enriches from the fixture repository") {
  ScratchDir dir("pipe");
  auto cfg = demo_config(dir);
  lifecycle::Engine engine(engine_options(cfg));
  auto fetcher = make_fetcher(cfg);
  run_pipeline(cfg, engine, *fetcher, fast_retry());
  bool found = false;
  for (const auto& r : engine.list()) {
    if (r->candidate.url != std::optional<std::string>("https://github.com/kermitt2/grobid")) continue;
    found = true;
    auto cm = asset_codemeta(*r, cfg);
    CHECK(cm.license.value() == "Apache-2.0");
    CHECK(cm.description.has_value());
    CHECK(cm.reference_publication == std::vector<std::string>{r->paper_id});
  }
  CHECK(found);
}

TEST_CASE("empty repository yields an all-zero report") {
  ScratchDir dir("pipe");
  auto cfg = config::load(testing::fixtures() / "configs" / "empty_repository.toml");
  cfg.state_dir = dir.path();
  cfg.event_log = dir.path() / "e.jsonl";
  cfg.outbox = dir.path() / "o.jsonl";
  lifecycle::Engine engine(engine_options(cfg));
  auto fetcher = make_fetcher(cfg);
  auto r = run_pipeline(cfg, engine, *fetcher, fast_retry());
  CHECK(r.records_harvested == 0);
  CHECK(r.documents_processed == 0);
  CHECK(r.mentions == 0);
  CHECK(r.candidates == 0);
  CHECK(r.records_created == 0);
  CHECK(engine.event_count() == 0);
}

TEST_CASE("missing gazetteer fails before any request") {
  ScratchDir dir("pipe");
  auto cfg = config::load(testing::fixtures() / "configs" / "missing_gazetteer.toml");
  cfg.state_dir = dir.path();
  cfg.event_log = dir.path() / "e.jsonl";
  cfg.outbox = dir.path() / "o.jsonl";
  lifecycle::Engine engine(engine_options(cfg));
  CountingFetcher fetcher;
  try {
    run_pipeline(cfg, engine, fetcher, fast_retry());
    FAIL("pipeline ran without a gazetteer");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
    CHECK(e.detail() == "config");
  }
  CHECK(fetcher.requests == 0);
}

TEST_CASE("harvest failures carry the stage name") {
  ScratchDir dir("pipe");
  auto cfg = demo_config(dir);
  cfg.fixture_dir.reset();
  cfg.base_url = "http://127.0.0.1:9/oai";
  lifecycle::Engine engine(engine_options(cfg));
  CountingFetcher fetcher;
  try {
    run_pipeline(cfg, engine, fetcher, fast_retry());
    FAIL("harvest succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TransportError);
    CHECK(e.detail() == "harvest");
    CHECK(std::string(e.what()).find("harvest: ") != std::string::npos);
  }
  CHECK(fetcher.requests == 3);
}

TEST_CASE("mock archival resolves origins from fixture repositories") {
  auto cfg = config::load(testing::fixtures() / "demo" / "config.toml");
  auto client = make_archival_client(cfg);
  auto r = client->request_archival(swhid::OriginRequest{"https://github.com/kermitt2/grobid"});
  for (int i = 0; i < 5 && r.status == swhid::ArchivalStatus::Pending; ++i) r = client->poll_archival(r);
  REQUIRE(r.swhid);
  auto tree = swhid::load_directory_tree(testing::fixtures() / "demo" / "repos" / "github.com_kermitt2_grobid");
  CHECK(*r.swhid == swhid::directory_swhid(tree));
}
