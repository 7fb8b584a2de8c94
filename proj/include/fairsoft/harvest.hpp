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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fairsoft::harvest {

inline constexpr std::string_view kOaiNamespace = "http://www.openarchives.org/OAI/2.0/";
inline constexpr std::string_view kOaiDcNamespace = "http://www.openarchives.org/OAI/2.0/oai_dc/";
inline constexpr std::string_view kDcNamespace = "http://purl.org/dc/elements/1.1/";

struct RepositoryEndpoint {
  std::string base_url;
  std::string metadata_prefix = "oai_dc";
  std::optional<std::string> set_spec;

  // Throws ConfigError unless base_url is absolute http(s) and the prefix is set.
  void validate() const;
};

struct HarvestRecord {
  std::string oai_identifier;
  std::string datestamp;
  bool deleted = false;
  std::string title;
  std::vector<std::string> creators;
  std::optional<std::string> fulltext_link;
};

struct ResumptionToken {
  std::string value;
  std::optional<std::size_t> complete_list_size;
  std::optional<std::size_t> cursor;
};

struct ListRecordsPage {
  std::vector<HarvestRecord> records;
  std::optional<ResumptionToken> token;  // absent when the list is complete
};

/// Parses one ListRecords response (Dublin Core subset). Throws ParseError
/// on malformed XML and ProtocolError (detail = OAI error code) when the
/// response carries <error>.
ListRecordsPage parse_list_records(std::string_view xml_bytes);

struct HttpResponse {
  int status = 0;
  std::string content_type;  // media type without parameters
  std::string body;
};

class HttpFetcher {
 public:
  virtual ~HttpFetcher() = default;
  // Throws TransportError when no response could be obtained.
  virtual HttpResponse get(const std::string& url) = 0;
};

// Real HTTP(S) client.
class HttplibFetcher : public HttpFetcher {
 public:
  explicit HttplibFetcher(std::chrono::seconds timeout = std::chrono::seconds(30))
      : timeout_(timeout) {}
  HttpResponse get(const std::string& url) override;

 private:
  std::chrono::seconds timeout_;
};

/// Serves a fixture repository from disk. Requests below `base_url`:
///   ?verb=ListRecords&...            -> <root>/ListRecords.xml
///   ?verb=ListRecords&resumptionToken=T -> <root>/<T>.xml
///   ?verb=Identify                   -> <root>/Identify.xml
///   /files/<name>                    -> <root>/files/<name>
/// Media types come from the file extension. Missing files yield 404.
class DirectoryFetcher : public HttpFetcher {
 public:
  DirectoryFetcher(std::filesystem::path root, std::string base_url)
      : root_(std::move(root)), base_url_(std::move(base_url)) {}
  HttpResponse get(const std::string& url) override;

 private:
  std::filesystem::path root_;
  std::string base_url_;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  // Defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
};

std::string list_records_url(const RepositoryEndpoint& endpoint,
                             const std::optional<std::string>& token);

struct HarvestStats {
  std::size_t pages = 0;
  std::size_t requests = 0;
  std::size_t duplicates_skipped = 0;
};

/// Pages through ListRecords until no resumption token is returned, handing
/// each record to `sink` exactly once (duplicate identifiers across pages are
/// dropped). A noRecordsMatch response ends the harvest with zero records;
/// other protocol errors abort. Each page is attempted up to
/// policy.attempts times with exponential backoff; exhausted retries rethrow
/// the last TransportError.
HarvestStats harvest_all(const RepositoryEndpoint& endpoint, HttpFetcher& http,
                         const std::function<void(const HarvestRecord&)>& sink,
                         RetryPolicy policy = {});

std::vector<HarvestRecord> harvest_all(const RepositoryEndpoint& endpoint, HttpFetcher& http,
                                       RetryPolicy policy = {});

struct Fulltext {
  std::string bytes;
  std::string media_type;
};

/// Accepted media types: application/tei+xml, text/xml, text/plain.
/// Throws NoFulltext, UnsupportedFormat or TransportError.
Fulltext fetch_fulltext(const HarvestRecord& record, HttpFetcher& http);

}  // namespace fairsoft::harvest
