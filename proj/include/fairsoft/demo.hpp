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

#include <chrono>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "fairsoft/config.hpp"
#include "fairsoft/pipeline.hpp"

namespace fairsoft::demo {

struct PaperLinks {
  std::string paper_id;
  std::vector<std::string> swhids;  // from the lifecycle store
  std::string get_record_xml;       // OAI-PMH GetRecord response body
  std::string link_header;          // Link header of /api/papers/{id}/links
};

struct DemoResult {
  pipeline::PipelineReport report;
  std::size_t approved = 0;
  std::size_t confirmed = 0;
  std::size_t exposed = 0;
  std::vector<PaperLinks> papers;
  std::vector<std::string> failures;  // empty on success
  std::chrono::milliseconds elapsed{0};

  bool ok() const { return failures.empty() && !papers.empty(); }
};

/// Runs the whole loop against a live local server: pipeline, manager
/// approval and author confirmation over HTTP (tokens read from the outbox),
/// archival through the configured client, then OAI-PMH GetRecord and
/// Signposting for every exposed paper.
DemoResult run_demo(const config::PipelineConfig& cfg, std::ostream& log);

}  // namespace fairsoft::demo
