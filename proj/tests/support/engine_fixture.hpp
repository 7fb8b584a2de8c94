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

#include <atomic>
#include <chrono>
#include <memory>
#include <string>

#include "fairsoft/lifecycle.hpp"
#include "scratch.hpp"

namespace fairsoft::testing {

// Settable clock shared by an engine and its test.
struct ManualClock {
  std::shared_ptr<std::atomic<std::int64_t>> seconds =
      std::make_shared<std::atomic<std::int64_t>>(1'790'000'000);  // 2026-09-21

  lifecycle::Timestamp now() const { return lifecycle::Timestamp(std::chrono::seconds(seconds->load())); }
  void advance(std::chrono::seconds d) { *seconds += d.count(); }
  std::function<lifecycle::Timestamp()> fn() const {
    auto s = seconds;
    return [s] { return lifecycle::Timestamp(std::chrono::seconds(s->load())); };
  }
};

inline lifecycle::EngineOptions engine_options_in(const ScratchDir& dir, const ManualClock& clock) {
  lifecycle::EngineOptions o;
  o.event_log = dir.path() / "events.jsonl";
  o.outbox = dir.path() / "outbox.jsonl";
  o.validation_base_url = "http://localhost:8080/validate/";
  o.clock = clock.fn();
  return o;
}

inline lifecycle::CreatedPayload sample_payload(const std::string& paper = "oai:x:1", const std::string& name = "GROBID",
                                                std::optional<std::string> url = std::string("https://github.com/kermitt2/grobid")) {
  lifecycle::CreatedPayload p;
  p.paper_id = paper;
  p.paper_title = "Mining full texts";
  p.author_email = "ana@example.org";
  p.candidate_id = "cand-" + name;
  p.candidate.name = name;
  p.candidate.url = std::move(url);
  p.candidate.version = "0.7.2";
  p.candidate.aliases = {name};
  p.context.sentence = "We used " + name + " 0.7.2 for parsing.";
  p.context.sentence_start_byte = 100;
  p.context.mentions = {{"SoftwareName", 108, 108 + name.size(), name}};
  return p;
}

// Drives a new record through approval, confirmation, archival and exposure.
inline lifecycle::LifecycleRecord expose_new_record(lifecycle::Engine& engine, const std::string& record_id,
                                                    const lifecycle::CreatedPayload& payload,
                                                    swhid::ArchivalClient& client) {
  engine.create_record(record_id, payload);
  auto issued = engine.manager_approve(record_id);
  engine.apply_author_decision(issued.token.token, {});
  engine.register_and_archive(record_id, client);
  return engine.expose(record_id);
}

}  // namespace fairsoft::testing
