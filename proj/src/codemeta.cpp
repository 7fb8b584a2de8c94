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

#include "fairsoft/codemeta.hpp"

#include <algorithm>

#include <json.hpp>

#include "fairsoft/error.hpp"
#include "fairsoft/swhid.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::codemeta {
namespace {

std::vector<std::string> version_parts(std::string_view v) {
  if (!v.empty() && (v.front() == 'v' || v.front() == 'V')) v.remove_prefix(1);
  return text::split(v, '.');
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), text::is_digit);
}

int compare_part(const std::string& a, const std::string& b) {
  if (all_digits(a) && all_digits(b)) {
    auto strip = [](const std::string& s) {
      auto p = s.find_first_not_of('0');
      return p == std::string::npos ? std::string("0") : s.substr(p);
    };
    auto x = strip(a), y = strip(b);
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return x.compare(y) < 0 ? -1 : x.compare(y) > 0 ? 1 : 0;
  }
  if (all_digits(a) != all_digits(b)) return all_digits(a) ? 1 : -1;
  return a < b ? -1 : a > b ? 1 : 0;
}

std::string spdx_id(std::string_view license) {
  auto s = std::string(text::trim(license));
  for (std::string_view prefix : {"https://spdx.org/licenses/", "http://spdx.org/licenses/"})
    if (s.rfind(prefix, 0) == 0) s.erase(0, prefix.size());
  if (s.size() > 5 && s.ends_with(".html")) s.erase(s.size() - 5);
  return s;
}

std::string json_scalar(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  return {};
}

std::string unquote(std::string_view s) {
  s = text::trim(s);
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
    s = s.substr(1, s.size() - 2);
  return std::string(s);
}

RepoMetadata from_codemeta_json(const nlohmann::json& j) {
  RepoMetadata out;
  if (!j.is_object()) throw Error(ErrorCode::EnrichmentSkipped, "repository metadata is not an object");
  if (j.contains("description")) out["description"] = json_scalar(j["description"]);
  if (j.contains("license")) {
    const auto& l = j["license"];
    out["license"] = spdx_id(l.is_array() && !l.empty() ? json_scalar(l[0]) : json_scalar(l));
  }
  if (j.contains("version")) out["version"] = json_scalar(j["version"]);
  if (j.contains("softwareVersion") && !out.count("version")) out["version"] = json_scalar(j["softwareVersion"]);
  if (j.contains("codeRepository")) out["code_repository"] = json_scalar(j["codeRepository"]);
  if (j.contains("author")) {
    std::vector<std::string> names;
    auto collect = [&](const nlohmann::json& a) {
      if (a.is_string()) {
        names.push_back(a.get<std::string>());
      } else if (a.is_object()) {
        auto n = a.value("name", "");
        if (n.empty()) n = text::collapse_whitespace(a.value("givenName", "") + " " + a.value("familyName", ""));
        if (!n.empty()) names.push_back(n);
      }
    };
    if (j["author"].is_array())
      for (const auto& a : j["author"]) collect(a);
    else
      collect(j["author"]);
    out["authors"] = text::join(names, "; ");
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

// Top-level "key: value" pairs of a CITATION.cff; nested lists give authors.
RepoMetadata from_cff(std::string_view bytes) {
  RepoMetadata out;
  std::vector<std::string> authors;
  bool in_authors = false;
  // Fields of the author item being read.
  std::string given, family, name;
  auto flush = [&] {
    auto person = text::collapse_whitespace(given + " " + family);
    if (!person.empty()) authors.push_back(person);
    else if (!name.empty()) authors.push_back(name);
    given.clear();
    family.clear();
    name.clear();
  };
  bool any = false;
  for (const auto& raw : text::split(bytes, '\n')) {
    std::string_view line(raw);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    bool nested = text::is_space(line.front()) || line.front() == '-';
    auto colon = line.find(':');
    if (!nested) {
      if (colon == std::string_view::npos) throw Error(ErrorCode::EnrichmentSkipped, "not a key-value document");
      any = true;
      if (in_authors) flush();
      auto key = std::string(text::trim(line.substr(0, colon)));
      auto value = unquote(line.substr(colon + 1));
      in_authors = key == "authors";
      if (key == "abstract" || key == "description") out["description"] = value;
      else if (key == "license") out["license"] = spdx_id(value);
      else if (key == "version") out["version"] = value;
      else if (key == "repository-code") out["code_repository"] = value;
      continue;
    }
    if (!in_authors) continue;
    auto item = text::trim(line);
    if (item.front() == '-') {
      flush();
      item = text::trim(item.substr(1));
    }
    colon = item.find(':');
    if (colon == std::string_view::npos) continue;
    auto key = std::string(text::trim(item.substr(0, colon)));
    auto value = unquote(item.substr(colon + 1));
    if (key == "given-names") given = value;
    else if (key == "family-names") family = value;
    else if (key == "name") name = value;
  }
  if (in_authors) flush();
  if (!any) throw Error(ErrorCode::EnrichmentSkipped, "empty repository metadata");
  if (!authors.empty()) out["authors"] = text::join(authors, "; ");
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

}  // namespace

int compare_versions(std::string_view a, std::string_view b) {
  auto pa = version_parts(a), pb = version_parts(b);
  for (std::size_t i = 0; i < std::max(pa.size(), pb.size()); ++i) {
    if (i >= pa.size()) return -1;
    if (i >= pb.size()) return 1;
    if (int c = compare_part(pa[i], pb[i])) return c;
  }
  return 0;
}

CodeMetaRecord build_codemeta(const resolve::AssetCandidate& candidate, const std::string& paper_id) {
  CodeMetaRecord r;
  r.name = candidate.canonical_name;
  if (!candidate.urls.empty()) r.code_repository = *candidate.urls.begin();
  for (const auto& v : candidate.versions)
    if (!r.version || compare_versions(v, *r.version) > 0) r.version = v;
  if (candidate.publishers.size() == 1) r.publisher = *candidate.publishers.begin();
  r.reference_publication = {paper_id};
  return r;
}

RepoMetadata parse_repo_metadata(std::string_view bytes) {
  auto trimmed = text::trim(bytes);
  if (trimmed.empty()) return {};
  if (trimmed.front() == '{') {
    auto j = nlohmann::json::parse(trimmed, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::EnrichmentSkipped, "repository metadata is not valid JSON");
    return from_codemeta_json(j);
  }
  return from_cff(trimmed);
}

CodeMetaRecord enrich_from_repo(const CodeMetaRecord& record, const RepoMetadata& repo) {
  CodeMetaRecord out = record;
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = repo.find(key);
    if (it == repo.end() || it->second.empty()) return std::nullopt;
    return it->second;
  };
  if (auto d = get("description")) out.description = d;
  if (auto l = get("license")) out.license = l;
  if (!out.version) out.version = get("version");
  if (!out.code_repository) out.code_repository = get("code_repository");
  return out;
}

Enrichment enrich_from_repo(const CodeMetaRecord& record, std::string_view repo_doc) {
  try {
    return {enrich_from_repo(record, parse_repo_metadata(repo_doc)), false, {}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EnrichmentSkipped) throw;
    return {record, true, e.what()};
  }
}

std::string serialize_jsonld(const CodeMetaRecord& r) {
  // Alphabetical after @context/@type.
  nlohmann::ordered_json j;
  j["@context"] = kContext;
  j["@type"] = kType;
  if (r.code_repository) j["codeRepository"] = *r.code_repository;
  if (r.description) j["description"] = *r.description;
  if (r.identifier) j["identifier"] = *r.identifier;
  if (!r.keywords.empty()) j["keywords"] = r.keywords;
  if (r.license) j["license"] = *r.license;
  j["name"] = r.name;
  if (r.publisher) j["publisher"] = *r.publisher;
  if (!r.reference_publication.empty()) j["referencePublication"] = r.reference_publication;
  if (r.version) j["version"] = *r.version;
  return j.dump(2) + "\n";
}

CodeMetaRecord parse_jsonld(std::string_view bytes) {
  auto j = nlohmann::json::parse(bytes, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Error(ErrorCode::SchemaError, "CodeMeta document is not a JSON object");
  if (!j.contains("@context")) throw Error(ErrorCode::SchemaError, "missing @context");
  if (j["@context"] != kContext)
    throw Error(ErrorCode::SchemaError, "unsupported @context " + j["@context"].dump());
  if (j.contains("@type") && j["@type"] != kType) throw Error(ErrorCode::SchemaError, "unexpected @type " + j["@type"].dump());
  if (!j.contains("name") || !j["name"].is_string() || j["name"].get<std::string>().empty())
    throw Error(ErrorCode::SchemaError, "missing name");

  auto opt = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string()) throw Error(ErrorCode::SchemaError, std::string(key) + " must be a string");
    return j[key].get<std::string>();
  };
  auto list = [&](const char* key) {
    std::vector<std::string> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) throw Error(ErrorCode::SchemaError, std::string(key) + " must be an array");
    for (const auto& v : j[key]) {
      if (!v.is_string()) throw Error(ErrorCode::SchemaError, std::string(key) + " entries must be strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  };

  CodeMetaRecord r;
  r.name = j["name"].get<std::string>();
  r.code_repository = opt("codeRepository");
  r.version = opt("version");
  r.publisher = opt("publisher");
  r.description = opt("description");
  r.license = opt("license");
  r.identifier = opt("identifier");
  r.reference_publication = list("referencePublication");
  r.keywords = list("keywords");
  if (r.identifier) {
    try {
      swhid::parse_swhid(*r.identifier);
    } catch (const Error& e) {
      throw Error(ErrorCode::SchemaError, std::string("identifier is not a SWHID: ") + e.what());
    }
  }
  return r;
}

}  // namespace fairsoft::codemeta
