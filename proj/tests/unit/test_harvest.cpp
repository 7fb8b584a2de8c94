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

#include <deque>
#include <filesystem>
#include <set>

#include "fairsoft/error.hpp"
#include "fairsoft/harvest.hpp"

using namespace fairsoft;
using namespace fairsoft::harvest;
namespace fs = std::filesystem;

namespace {

const std::string kBase = "http://fixture.invalid/oai";

fs::path oai_dir(const std::string& name) { return fs::path(FAIRSOFT_FIXTURES_DIR) / "oai" / name; }

RepositoryEndpoint endpoint() { return {kBase, "oai_dc", std::nullopt}; }

RetryPolicy no_sleep(std::vector<std::chrono::milliseconds>* slept = nullptr) {
  RetryPolicy p;
  p.sleep = [slept](std::chrono::milliseconds d) {
    if (slept) slept->push_back(d);
  };
  return p;
}

// Wraps a fetcher and fails scripted requests with TransportError.
class ScriptedFetcher : public HttpFetcher {
 public:
  explicit ScriptedFetcher(HttpFetcher& inner) : inner_(inner) {}
  std::deque<bool> fail_script;  // front = next request; true = fail
  std::vector<std::string> urls;

  HttpResponse get(const std::string& url) override {
    urls.push_back(url);
    if (!fail_script.empty()) {
      bool fail = fail_script.front();
      fail_script.pop_front();
      if (fail) throw Error(ErrorCode::TransportError, "scripted failure");
    }
    return inner_.get(url);
  }

 private:
  HttpFetcher& inner_;
};

ErrorCode harvest_error(const std::string& fixture, std::string* detail = nullptr) {
  DirectoryFetcher fetcher(oai_dir(fixture), kBase);
  try {
    harvest_all(endpoint(), fetcher, no_sleep());
  } catch (const Error& e) {
    if (detail) *detail = e.detail();
    return e.code();
  }
  FAIL("harvest of " << fixture << " succeeded");
  return ErrorCode::BadRequest;
}

}  // namespace

TEST_CASE("endpoint validation") {
  CHECK_NOTHROW(endpoint().validate());
  CHECK_THROWS_AS((RepositoryEndpoint{"ftp://x", "oai_dc", {}}.validate()), Error);
  CHECK_THROWS_AS((RepositoryEndpoint{"relative/path", "oai_dc", {}}.validate()), Error);
  CHECK_THROWS_AS((RepositoryEndpoint{kBase, "", {}}.validate()), Error);
}

TEST_CASE("list_records_url") {
  CHECK(list_records_url(endpoint(), std::nullopt) == kBase + "?verb=ListRecords&metadataPrefix=oai_dc");
  RepositoryEndpoint with_set{kBase, "oai_dc", "math"};
  CHECK(list_records_url(with_set, std::nullopt) == kBase + "?verb=ListRecords&metadataPrefix=oai_dc&set=math");
  // Only the token is sent on continuation requests.
  CHECK(list_records_url(with_set, "a b") == kBase + "?verb=ListRecords&resumptionToken=a%20b");
}

TEST_CASE("three pages, 25 unique records, 3 requests") {
  DirectoryFetcher dir(oai_dir("paged"), kBase);
  ScriptedFetcher fetcher(dir);
  std::vector<HarvestRecord> got;
  auto stats = harvest_all(endpoint(), fetcher, [&](const HarvestRecord& r) { got.push_back(r); }, no_sleep());
  CHECK(got.size() == 25);
  CHECK(stats.pages == 3);
  CHECK(stats.requests == 3);
  CHECK(fetcher.urls.size() == 3);
  std::set<std::string> ids;
  for (const auto& r : got) ids.insert(r.oai_identifier);
  CHECK(ids.size() == 25);
  CHECK(got.front().oai_identifier == "oai:test.repo:rec-01");
  CHECK(got.front().title == "Record 1");
  CHECK(got.front().creators == std::vector<std::string>{"Author 1"});
  CHECK(got.front().fulltext_link.value() == kBase + "/files/rec-01.txt");
}

TEST_CASE("retries with exponential backoff") {
  DirectoryFetcher dir(oai_dir("paged"), kBase);
  ScriptedFetcher fetcher(dir);
  fetcher.fail_script = {true, false, true, true, false, false};
  std::vector<std::chrono::milliseconds> slept;
  auto stats = harvest_all(endpoint(), fetcher, [](const HarvestRecord&) {}, no_sleep(&slept));
  CHECK(stats.pages == 3);
  CHECK(stats.requests == 6);
  CHECK(slept == std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(500), std::chrono::milliseconds(500),
                                                        std::chrono::milliseconds(1000)});
}

TEST_CASE("retries exhausted rethrows transport error") {
  DirectoryFetcher dir(oai_dir("paged"), kBase);
  ScriptedFetcher fetcher(dir);
  fetcher.fail_script = {false, true, true, true};
  try {
    harvest_all(endpoint(), fetcher, [](const HarvestRecord&) {}, no_sleep());
    FAIL("expected TransportError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TransportError);
  }
  CHECK(fetcher.urls.size() == 4);
}

TEST_CASE("duplicates across pages are dropped") {
  DirectoryFetcher fetcher(oai_dir("duplicates"), kBase);
  std::vector<std::string> ids;
  auto stats = harvest_all(endpoint(), fetcher, [&](const HarvestRecord& r) { ids.push_back(r.oai_identifier); },
                           no_sleep());
  CHECK(stats.duplicates_skipped == 1);
  CHECK(ids.size() == 20);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
}

TEST_CASE("empty token ends the list") {
  DirectoryFetcher fetcher(oai_dir("empty_token"), kBase);
  auto recs = harvest_all(endpoint(), fetcher, no_sleep());
  CHECK(recs.size() == 3);
}

TEST_CASE("single page") {
  DirectoryFetcher fetcher(oai_dir("single"), kBase);
  CHECK(harvest_all(endpoint(), fetcher, no_sleep()).size() == 4);
}

TEST_CASE("noRecordsMatch is an empty harvest") {
  DirectoryFetcher fetcher(oai_dir("empty"), kBase);
  CHECK(harvest_all(endpoint(), fetcher, no_sleep()).empty());
}

TEST_CASE("protocol and parse errors") {
  std::string detail;
  CHECK(harvest_error("error", &detail) == ErrorCode::ProtocolError);
  CHECK(detail == "badArgument");
  CHECK(harvest_error("malformed") == ErrorCode::ParseError);
}

TEST_CASE("http error status is a transport error") {
  DirectoryFetcher fetcher(oai_dir("does-not-exist"), kBase);
  try {
    harvest_all(endpoint(), fetcher, no_sleep());
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TransportError);
  }
}

TEST_CASE("parse deleted records and token attributes") {
  auto page = parse_list_records(R"(<?xml version="1.0"?>
<OAI-PMH xmlns="http://www.openarchives.org/OAI/2.0/"><ListRecords>
<record><header status="deleted"><identifier>oai:x:1</identifier><datestamp>2026-01-01</datestamp></header></record>
<record><header><identifier>oai:x:2</identifier><datestamp>2026-01-02</datestamp></header>
<metadata><oai_dc:dc xmlns:oai_dc="http://www.openarchives.org/OAI/2.0/oai_dc/" xmlns:dc="http://purl.org/dc/elements/1.1/">
<dc:title> T </dc:title><dc:identifier>doi:10.1/x</dc:identifier><dc:identifier>https://h.org/a.pdf</dc:identifier>
<dc:identifier>https://h.org/a.XML</dc:identifier></oai_dc:dc></metadata></record>
<resumptionToken completeListSize="9" cursor="2">tok</resumptionToken>
</ListRecords></OAI-PMH>)");
  REQUIRE(page.records.size() == 2);
  CHECK(page.records[0].deleted);
  CHECK_FALSE(page.records[0].fulltext_link);
  CHECK(page.records[1].title == "T");
  CHECK(page.records[1].fulltext_link.value() == "https://h.org/a.XML");
  REQUIRE(page.token);
  CHECK(page.token->value == "tok");
  CHECK(page.token->complete_list_size.value() == 9);
  CHECK(page.token->cursor.value() == 2);
}

TEST_CASE("fetch_fulltext media types") {
  fs::path demo = fs::path(FAIRSOFT_FIXTURES_DIR) / "demo" / "oai";
  DirectoryFetcher fetcher(demo, kBase);
  HarvestRecord r;
  r.oai_identifier = "x";
  CHECK_THROWS_AS(fetch_fulltext(r, fetcher), Error);
  r.fulltext_link = kBase + "/files/paper-001.xml";
  auto ft = fetch_fulltext(r, fetcher);
  CHECK(!ft.bytes.empty());
  CHECK((ft.media_type == "application/tei+xml" || ft.media_type == "text/xml"));
  r.fulltext_link = kBase + "/files/paper-002.txt";
  CHECK(fetch_fulltext(r, fetcher).media_type == "text/plain");
  r.fulltext_link = kBase + "/files/paper-027.pdf";
  try {
    fetch_fulltext(r, fetcher);
    FAIL("pdf accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFormat);
  }
  r.fulltext_link = kBase + "/files/missing.txt";
  try {
    fetch_fulltext(r, fetcher);
    FAIL("missing accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TransportError);
  }
}
