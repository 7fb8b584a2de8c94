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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace fairsoft::config {

/// Flat view of a TOML-style file: "[section]" headers and key = value lines.
/// Keys are stored as "section.key". Values are strings, numbers or booleans.
using Value = std::variant<std::string, double, bool>;
std::map<std::string, Value> parse_toml(std::string_view text);  // throws ConfigError

enum class ArchivalMode { Mock, Http };

struct PipelineConfig {
  // Harvest: either an HTTP endpoint or a directory of OAI-PMH fixture files.
  std::string base_url;
  std::optional<std::filesystem::path> fixture_dir;
  std::string metadata_prefix = "oai_dc";
  std::optional<std::string> set_spec;

  std::filesystem::path gazetteer;
  std::optional<std::filesystem::path> catalog;
  double min_confidence = 0.5;
  std::size_t version_window = 10;
  double threshold = 0.75;
  double catalog_min_score = 0.8;

  ArchivalMode archival_mode = ArchivalMode::Mock;
  std::string archival_url;
  int polls_until_done = 2;
  int max_polls = 5;
  std::chrono::milliseconds poll_interval{0};
  // Per-origin repository snapshots and metadata files, one subdirectory per origin.
  std::optional<std::filesystem::path> repo_metadata_dir;

  std::filesystem::path state_dir = "state";
  std::filesystem::path event_log = "state/events.jsonl";
  std::filesystem::path outbox = "state/outbox.jsonl";

  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::string public_base_url;  // defaults to http://<listen>
  std::optional<std::filesystem::path> static_dir;
  std::chrono::milliseconds registration_interval{2000};

  std::string resolver_base = "https://archive.softwareheritage.org/";
  std::string relation_type = "References";

  // Throws ConfigError on missing files or out-of-range values.
  void validate() const;
};

/// Relative paths resolve against `base_dir`.
PipelineConfig from_toml(std::string_view text, const std::filesystem::path& base_dir);
PipelineConfig load(const std::filesystem::path& path);

// Stable directory name for an origin URL: scheme dropped, unsafe bytes as '_'.
std::string origin_dir_name(std::string_view url);

}  // namespace fairsoft::config
