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

#include "fairsoft/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fairsoft/error.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::config {

namespace {

[[noreturn]] void fail(std::size_t lineno, const std::string& what) {
  throw Error(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": " + what);
}

bool is_bare_key_char(char c) { return text::is_alnum(c) || c == '_' || c == '-'; }

// Cuts a trailing comment that is not inside a string.
std::string_view strip_comment(std::string_view line) {
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quote) {
      if (c == '\\' && quote == '"') {
        ++i;
      } else if (c == quote) {
        quote = 0;
      }
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

Value parse_value(std::string_view v, std::size_t lineno) {
  if (v.empty()) fail(lineno, "missing value");
  if (v.front() == '"') {
    if (v.size() < 2 || v.back() != '"') fail(lineno, "unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      char c = v[i];
      if (c == '"') fail(lineno, "unexpected quote in string");
      if (c != '\\') {
        out += c;
        continue;
      }
      if (i + 2 >= v.size()) fail(lineno, "dangling escape");
      switch (v[++i]) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default: fail(lineno, "unsupported escape");
      }
    }
    return out;
  }
  if (v.front() == '\'') {
    if (v.size() < 2 || v.back() != '\'') fail(lineno, "unterminated string");
    return std::string(v.substr(1, v.size() - 2));
  }
  if (v == "true") return true;
  if (v == "false") return false;
  std::string num;
  for (char c : v) {
    if (c != '_') num += c;
  }
  double d = 0;
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), d);
  if (ec != std::errc() || ptr != num.data() + num.size()) fail(lineno, "unsupported value '" + std::string(v) + "'");
  return d;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "harvest.base_url",       "harvest.fixture_dir",        "harvest.metadata_prefix",
      "harvest.set",            "extract.gazetteer",          "extract.min_confidence",
      "extract.version_window", "resolve.threshold",          "resolve.catalog",
      "resolve.catalog_min_score", "archival.mode",           "archival.base_url",
      "archival.polls_until_done", "archival.max_polls",      "archival.poll_interval_ms",
      "archival.repo_metadata_dir", "storage.state_dir",      "storage.event_log",
      "storage.outbox",         "server.listen",              "server.public_base_url",
      "server.static_dir",      "server.registration_interval_ms", "expose.resolver_base",
      "expose.relation_type",
  };
  return keys;
}

class Reader {
 public:
  Reader(std::map<std::string, Value> values, std::filesystem::path base)
      : values_(std::move(values)), base_(std::move(base)) {}

  std::optional<std::string> str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (auto s = std::get_if<std::string>(&it->second)) return *s;
    throw Error(ErrorCode::ConfigError, key + " must be a string");
  }
  std::optional<double> num(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    if (auto d = std::get_if<double>(&it->second)) return *d;
    throw Error(ErrorCode::ConfigError, key + " must be a number");
  }
  std::optional<int> integer(const std::string& key) const {
    auto d = num(key);
    if (!d) return std::nullopt;
    if (*d != static_cast<double>(static_cast<long long>(*d))) {
      throw Error(ErrorCode::ConfigError, key + " must be an integer");
    }
    return static_cast<int>(*d);
  }
  std::optional<std::filesystem::path> path(const std::string& key) const {
    auto s = str(key);
    if (!s) return std::nullopt;
    std::filesystem::path p(*s);
    return p.is_absolute() ? p : base_ / p;
  }

 private:
  std::map<std::string, Value> values_;
  std::filesystem::path base_;
};

void require_unit(double v, const char* key) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::ConfigError, std::string(key) + " must be in [0, 1]");
}

}  // namespace

std::map<std::string, Value> parse_toml(std::string_view text) {
  std::map<std::string, Value> out;
  std::string section;
  std::size_t lineno = 0;
  for (const auto& raw : text::split(text, '\n')) {
    ++lineno;
    std::string_view line = text::trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "unterminated section header");
      section = std::string(text::trim(line.substr(1, line.size() - 2)));
      if (section.empty()) fail(lineno, "empty section name");
      for (char c : section) {
        if (!is_bare_key_char(c) && c != '.') fail(lineno, "bad section name");
      }
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(lineno, "expected key = value");
    std::string key(text::trim(line.substr(0, eq)));
    if (key.empty()) fail(lineno, "empty key");
    for (char c : key) {
      if (!is_bare_key_char(c)) fail(lineno, "bad key '" + key + "'");
    }
    std::string full = section.empty() ? key : section + "." + key;
    Value v = parse_value(text::trim(line.substr(eq + 1)), lineno);
    if (!out.emplace(full, std::move(v)).second) fail(lineno, "duplicate key '" + full + "'");
  }
  return out;
}

PipelineConfig from_toml(std::string_view text, const std::filesystem::path& base_dir) {
  auto values = parse_toml(text);
  for (const auto& [k, v] : values) {
    if (!known_keys().count(k)) throw Error(ErrorCode::ConfigError, "unknown key '" + k + "'");
  }
  Reader r(std::move(values), base_dir);
  PipelineConfig c;
  c.base_url = r.str("harvest.base_url").value_or("");
  c.fixture_dir = r.path("harvest.fixture_dir");
  c.metadata_prefix = r.str("harvest.metadata_prefix").value_or(c.metadata_prefix);
  c.set_spec = r.str("harvest.set");

  c.gazetteer = r.path("extract.gazetteer").value_or("");
  c.min_confidence = r.num("extract.min_confidence").value_or(c.min_confidence);
  if (auto w = r.integer("extract.version_window")) {
    if (*w < 0) throw Error(ErrorCode::ConfigError, "extract.version_window must be >= 0");
    c.version_window = static_cast<std::size_t>(*w);
  }
  c.threshold = r.num("resolve.threshold").value_or(c.threshold);
  c.catalog = r.path("resolve.catalog");
  c.catalog_min_score = r.num("resolve.catalog_min_score").value_or(c.catalog_min_score);

  if (auto mode = r.str("archival.mode")) {
    if (*mode == "mock") {
      c.archival_mode = ArchivalMode::Mock;
    } else if (*mode == "http") {
      c.archival_mode = ArchivalMode::Http;
    } else {
      throw Error(ErrorCode::ConfigError, "archival.mode must be mock or http");
    }
  }
  c.archival_url = r.str("archival.base_url").value_or("");
  c.polls_until_done = r.integer("archival.polls_until_done").value_or(c.polls_until_done);
  c.max_polls = r.integer("archival.max_polls").value_or(c.max_polls);
  c.poll_interval = std::chrono::milliseconds(r.integer("archival.poll_interval_ms").value_or(0));
  c.repo_metadata_dir = r.path("archival.repo_metadata_dir");

  c.state_dir = r.path("storage.state_dir").value_or(base_dir / "state");
  c.event_log = r.path("storage.event_log").value_or(c.state_dir / "events.jsonl");
  c.outbox = r.path("storage.outbox").value_or(c.state_dir / "outbox.jsonl");

  if (auto listen = r.str("server.listen")) {
    auto colon = listen->rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ConfigError, "server.listen must be host:port");
    c.listen_host = listen->substr(0, colon);
    std::string port = listen->substr(colon + 1);
    auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), c.listen_port);
    if (ec != std::errc() || ptr != port.data() + port.size()) {
      throw Error(ErrorCode::ConfigError, "bad port in server.listen");
    }
  }
  c.public_base_url = r.str("server.public_base_url").value_or("");
  c.static_dir = r.path("server.static_dir");
  c.registration_interval = std::chrono::milliseconds(
      r.integer("server.registration_interval_ms").value_or(static_cast<int>(c.registration_interval.count())));
  c.resolver_base = r.str("expose.resolver_base").value_or(c.resolver_base);
  c.relation_type = r.str("expose.relation_type").value_or(c.relation_type);
  return c;
}

PipelineConfig load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_toml(ss.str(), path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

void PipelineConfig::validate() const {
  namespace fs = std::filesystem;
  if (base_url.empty() && !fixture_dir) {
    throw Error(ErrorCode::ConfigError, "one of harvest.base_url or harvest.fixture_dir is required");
  }
  if (!base_url.empty() && !text::is_http_url(base_url)) {
    throw Error(ErrorCode::ConfigError, "harvest.base_url must be an http(s) URL");
  }
  if (fixture_dir && !fs::is_directory(*fixture_dir)) {
    throw Error(ErrorCode::ConfigError, "harvest.fixture_dir not found: " + fixture_dir->string());
  }
  if (gazetteer.empty()) throw Error(ErrorCode::ConfigError, "extract.gazetteer is required");
  if (!fs::is_regular_file(gazetteer)) {
    throw Error(ErrorCode::ConfigError, "gazetteer not found: " + gazetteer.string());
  }
  if (catalog && !fs::is_regular_file(*catalog)) {
    throw Error(ErrorCode::ConfigError, "catalog not found: " + catalog->string());
  }
  if (repo_metadata_dir && !fs::is_directory(*repo_metadata_dir)) {
    throw Error(ErrorCode::ConfigError, "archival.repo_metadata_dir not found: " + repo_metadata_dir->string());
  }
  if (static_dir && !fs::is_directory(*static_dir)) {
    throw Error(ErrorCode::ConfigError, "server.static_dir not found: " + static_dir->string());
  }
  require_unit(min_confidence, "extract.min_confidence");
  require_unit(threshold, "resolve.threshold");
  require_unit(catalog_min_score, "resolve.catalog_min_score");
  if (archival_mode == ArchivalMode::Http && !text::is_http_url(archival_url)) {
    throw Error(ErrorCode::ConfigError, "archival.base_url must be an http(s) URL in http mode");
  }
  if (polls_until_done < 0 || max_polls < 0) {
    throw Error(ErrorCode::ConfigError, "archival poll counts must be >= 0");
  }
  if (listen_port < 0 || listen_port > 65535) throw Error(ErrorCode::ConfigError, "port out of range");
}

std::string origin_dir_name(std::string_view url) {
  auto scheme = url.find("://");
  if (scheme != std::string_view::npos) url.remove_prefix(scheme + 3);
  while (!url.empty() && url.back() == '/') url.remove_suffix(1);
  std::string out;
  for (char c : url) out += text::is_alnum(c) || c == '.' || c == '-' || c == '_' ? c : '_';
  return out;
}

}  // namespace fairsoft::config
