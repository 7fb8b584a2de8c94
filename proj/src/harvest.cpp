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

#include "fairsoft/harvest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "fairsoft/error.hpp"
#include "fairsoft/text.hpp"
#include "fairsoft/xml.hpp"

namespace fairsoft::harvest {
namespace {

std::optional<std::size_t> parse_count(const std::optional<std::string>& s) {
  if (!s || s->empty()) return std::nullopt;
  std::size_t v = 0;
  for (char c : *s) {
    if (!text::is_digit(c)) return std::nullopt;
    v = v * 10 + static_cast<std::size_t>(c - '0');
  }
  return v;
}

bool ends_with_icase(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && text::iequals(s.substr(s.size() - suffix.size()), suffix);
}

bool looks_like_fulltext_url(std::string_view s) {
  if (!text::is_http_url(s)) return false;
  auto path = s.substr(0, s.find_first_of("?#"));
  return ends_with_icase(path, ".xml") || ends_with_icase(path, ".txt");
}

const xml::Node* find_by_local_name(const xml::Node& n, std::string_view local) {
  for (const auto& c : n.children) {
    if (c.kind != xml::Node::Kind::Element) continue;
    if (c.name == local) return &c;
    if (const auto* hit = find_by_local_name(c, local)) return hit;
  }
  return nullptr;
}

HarvestRecord parse_record(const xml::Node& record) {
  HarvestRecord out;
  const auto* header = record.first_child(kOaiNamespace, "header");
  if (!header) throw Error(ErrorCode::ParseError, "record without header");
  if (const auto* id = header->first_child(kOaiNamespace, "identifier"))
    out.oai_identifier = std::string(text::trim(id->text_content()));
  if (out.oai_identifier.empty()) throw Error(ErrorCode::ParseError, "record without identifier");
  if (const auto* ds = header->first_child(kOaiNamespace, "datestamp"))
    out.datestamp = std::string(text::trim(ds->text_content()));
  out.deleted = header->attribute("status") == std::optional<std::string>("deleted");
  if (out.deleted) return out;

  const auto* metadata = record.first_child(kOaiNamespace, "metadata");
  if (!metadata) return out;
  for (const auto* t : metadata->descendants(kDcNamespace, "title")) {
    out.title = text::collapse_whitespace(t->text_content());
    break;
  }
  for (const auto* c : metadata->descendants(kDcNamespace, "creator"))
    out.creators.push_back(text::collapse_whitespace(c->text_content()));
  for (const auto* ident : metadata->descendants(kDcNamespace, "identifier")) {
    auto v = std::string(text::trim(ident->text_content()));
    if (looks_like_fulltext_url(v)) {
      out.fulltext_link = v;
      break;
    }
  }
  if (!out.fulltext_link) {
    if (const auto* link = find_by_local_name(*metadata, "fulltext_link")) {
      auto v = std::string(text::trim(link->text_content()));
      if (!v.empty()) out.fulltext_link = v;
    }
  }
  return out;
}

std::map<std::string, std::string> parse_query(std::string_view query) {
  std::map<std::string, std::string> params;
  for (const auto& kv : text::split(query, '&')) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos)
      params[text::url_decode(kv)] = "";
    else
      params[text::url_decode(kv.substr(0, eq))] = text::url_decode(kv.substr(eq + 1));
  }
  return params;
}

std::string media_type_for(const std::filesystem::path& p) {
  auto ext = text::to_lower(p.extension().string());
  // Full texts live under files/; everything else is an OAI-PMH response.
  if (ext == ".xml")
    return p.parent_path().filename() == "files" ? "application/tei+xml" : "text/xml";
  if (ext == ".txt") return "text/plain";
  if (ext == ".pdf") return "application/pdf";
  if (ext == ".json") return "application/json";
  return "application/octet-stream";
}

}  // namespace

void RepositoryEndpoint::validate() const {
  if (!text::is_http_url(base_url))
    throw Error(ErrorCode::ConfigError, "endpoint base_url must be absolute http(s): '" + base_url + "'");
  if (metadata_prefix.empty()) throw Error(ErrorCode::ConfigError, "metadata_prefix must not be empty");
}

ListRecordsPage parse_list_records(std::string_view xml_bytes) {
  auto root = xml::parse(xml_bytes);
  if (!root.is(kOaiNamespace, "OAI-PMH"))
    throw Error(ErrorCode::ParseError, "not an OAI-PMH response (root '" + root.name + "')");
  if (const auto* err = root.first_child(kOaiNamespace, "error")) {
    auto code = err->attribute("code").value_or("unknown");
    throw Error(ErrorCode::ProtocolError,
                "OAI-PMH error " + code + ": " + text::collapse_whitespace(err->text_content()),
                code);
  }
  const auto* list = root.first_child(kOaiNamespace, "ListRecords");
  if (!list) throw Error(ErrorCode::ParseError, "response has neither ListRecords nor error");

  ListRecordsPage page;
  for (const auto* rec : list->children_named(kOaiNamespace, "record"))
    page.records.push_back(parse_record(*rec));
  if (const auto* tok = list->first_child(kOaiNamespace, "resumptionToken")) {
    auto value = std::string(text::trim(tok->text_content()));
    if (!value.empty()) {
      page.token = ResumptionToken{value, parse_count(tok->attribute("completeListSize")),
                                   parse_count(tok->attribute("cursor"))};
    }
  }
  return page;
}

std::string list_records_url(const RepositoryEndpoint& endpoint,
                             const std::optional<std::string>& token) {
  std::string url = endpoint.base_url;
  url += url.find('?') == std::string::npos ? '?' : '&';
  url += "verb=ListRecords";
  if (token) {
    // resumptionToken is an exclusive argument.
    url += "&resumptionToken=" + text::url_encode(*token);
    return url;
  }
  url += "&metadataPrefix=" + text::url_encode(endpoint.metadata_prefix);
  if (endpoint.set_spec) url += "&set=" + text::url_encode(*endpoint.set_spec);
  return url;
}

HarvestStats harvest_all(const RepositoryEndpoint& endpoint, HttpFetcher& http,
                         const std::function<void(const HarvestRecord&)>& sink,
                         RetryPolicy policy) {
  endpoint.validate();
  if (!policy.sleep) policy.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (policy.attempts < 1) policy.attempts = 1;

  HarvestStats stats;
  std::set<std::string> seen;
  std::optional<std::string> token;
  while (true) {
    auto url = list_records_url(endpoint, token);
    HttpResponse response;
    auto backoff = policy.initial_backoff;
    for (int attempt = 1;; ++attempt) {
      std::string failure;
      try {
        ++stats.requests;
        response = http.get(url);
        if (response.status == 200) break;
        failure = "HTTP " + std::to_string(response.status) + " from " + url;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TransportError) throw;
        failure = e.what();
      }
      if (attempt >= policy.attempts)
        throw Error(ErrorCode::TransportError, "harvest aborted after " +
                                                   std::to_string(attempt) + " attempts: " + failure);
      policy.sleep(backoff);
      backoff *= 2;
    }

    ListRecordsPage page;
    try {
      page = parse_list_records(response.body);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ProtocolError && e.detail() == "noRecordsMatch") break;
      throw;
    }
    ++stats.pages;
    for (const auto& rec : page.records) {
      if (!seen.insert(rec.oai_identifier).second) {
        ++stats.duplicates_skipped;
        continue;
      }
      sink(rec);
    }
    if (!page.token) break;
    token = page.token->value;
  }
  return stats;
}

std::vector<HarvestRecord> harvest_all(const RepositoryEndpoint& endpoint, HttpFetcher& http,
                                       RetryPolicy policy) {
  std::vector<HarvestRecord> out;
  harvest_all(endpoint, http, [&](const HarvestRecord& r) { out.push_back(r); }, std::move(policy));
  return out;
}

Fulltext fetch_fulltext(const HarvestRecord& record, HttpFetcher& http) {
  if (record.deleted || !record.fulltext_link)
    throw Error(ErrorCode::NoFulltext, "record " + record.oai_identifier + " has no full text link");
  auto response = http.get(*record.fulltext_link);
  if (response.status != 200)
    throw Error(ErrorCode::TransportError,
                "HTTP " + std::to_string(response.status) + " fetching " + *record.fulltext_link);
  auto type = text::to_lower(response.content_type);
  if (type != "application/tei+xml" && type != "text/xml" && type != "text/plain")
    throw Error(ErrorCode::UnsupportedFormat,
                "unsupported media type '" + response.content_type + "' for " + record.oai_identifier);
  return {std::move(response.body), type};
}

HttpResponse DirectoryFetcher::get(const std::string& url) {
  if (url.compare(0, base_url_.size(), base_url_) != 0)
    throw Error(ErrorCode::TransportError, "no fixture route for " + url);
  std::string_view rest(url);
  rest.remove_prefix(base_url_.size());
  std::filesystem::path file;
  if (!rest.empty() && rest.front() == '?') {
    auto params = parse_query(rest.substr(1));
    auto verb = params["verb"];
    if (verb == "ListRecords") {
      auto it = params.find("resumptionToken");
      file = root_ / (it == params.end() ? std::string("ListRecords.xml") : it->second + ".xml");
    } else {
      file = root_ / (verb + ".xml");
    }
  } else {
    while (!rest.empty() && rest.front() == '/') rest.remove_prefix(1);
    if (rest.find("..") != std::string_view::npos) return {404, "text/plain", "not found"};
    file = root_ / std::string(rest);
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) return {404, "text/plain", "not found"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return {200, media_type_for(file), buf.str()};
}

}  // namespace fairsoft::harvest
