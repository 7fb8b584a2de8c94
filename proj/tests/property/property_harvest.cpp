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

#include <fstream>
#include <map>

#include "corpus.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/harvest.hpp"
#include "gen.hpp"
#include "scratch.hpp"

using namespace fairsoft;
using namespace fairsoft::harvest;
using testing::Gen;
namespace fs = std::filesystem;

namespace {

const std::string kBase = "http://fixture.invalid/oai";

RetryPolicy no_sleep() {
  RetryPolicy p;
  p.sleep = [](std::chrono::milliseconds) {};
  return p;
}

class FlakyFetcher : public HttpFetcher {
 public:
  FlakyFetcher(HttpFetcher& inner, Gen& g, double p) : inner_(inner), g_(g), p_(p) {}
  std::size_t failures = 0;
  std::size_t requests = 0;
  HttpResponse get(const std::string& url) override {
    ++requests;
    if (g_.chance(p_)) {
      ++failures;
      throw Error(ErrorCode::TransportError, "flaky");
    }
    return inner_.get(url);
  }

 private:
  HttpFetcher& inner_;
  Gen& g_;
  double p_;
};

std::string page_xml(const std::vector<std::string>& ids, const std::optional<std::string>& token) {
  std::string x = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<OAI-PMH xmlns=\"http://www.openarchives.org/OAI/2.0/\">\n"
                  "<responseDate>2026-03-02T10:00:00Z</responseDate>\n<request verb=\"ListRecords\">" +
                  kBase + "</request>\n<ListRecords>\n";
  for (const auto& id : ids) {
    x += "<record><header><identifier>" + id + "</identifier><datestamp>2026-01-01</datestamp></header>"
         "<metadata><oai_dc:dc xmlns:oai_dc=\"http://www.openarchives.org/OAI/2.0/oai_dc/\" "
         "xmlns:dc=\"http://purl.org/dc/elements/1.1/\"><dc:title>T " + id + "</dc:title></oai_dc:dc></metadata></record>\n";
  }
  if (token) x += "<resumptionToken>" + *token + "</resumptionToken>\n";
  x += "</ListRecords>\n</OAI-PMH>\n";
  return x;
}

struct Provider {
  std::vector<std::vector<std::string>> pages;
};

// Writes pages as ListRecords.xml, t1.xml, t2.xml ... into dir.
Provider write_provider(Gen& g, const fs::path& dir) {
  Provider p;
  auto n_pages = g.range(1, 6);
  std::int64_t next_id = 0;
  std::vector<std::string> seen;
  for (std::int64_t i = 0; i < n_pages; ++i) {
    std::vector<std::string> page;
    for (std::int64_t k = 0, n = g.range(i == n_pages - 1 ? 0 : 1, 12); k < n; ++k) {
      if (!seen.empty() && g.chance(0.1)) {
        page.push_back(g.pick(seen));
      } else {
        page.push_back("oai:gen:" + std::to_string(next_id++));
        seen.push_back(page.back());
      }
    }
    p.pages.push_back(page);
  }
  for (std::size_t i = 0; i < p.pages.size(); ++i) {
    std::optional<std::string> token;
    if (i + 1 < p.pages.size()) token = "t" + std::to_string(i + 1);
    std::string name = i == 0 ? "ListRecords.xml" : "t" + std::to_string(i) + ".xml";
    std::ofstream(dir / name) << page_xml(p.pages[i], token);
  }
  return p;
}

std::map<std::string, std::size_t> multiset(const std::vector<std::vector<std::string>>& pages) {
  std::map<std::string, std::size_t> m;
  for (const auto& page : pages)
    for (const auto& id : page) ++m[id];
  return m;
}

}  // namespace

TEST_CASE("fixture providers yield the union of their pages") {
  for (const char* name : {"paged", "duplicates", "single", "empty_token"}) {
    auto dir = testing::fixtures() / "oai" / name;
    // Follow the token chain by reading the page files directly.
    std::vector<std::vector<std::string>> pages;
    std::optional<std::string> token;
    do {
      auto file = dir / (token ? *token + ".xml" : "ListRecords.xml");
      auto page = parse_list_records(testing::slurp(file));
      pages.emplace_back();
      for (const auto& r : page.records) pages.back().push_back(r.oai_identifier);
      token.reset();
      if (page.token && !page.token->value.empty()) token = page.token->value;
    } while (token);

    DirectoryFetcher fetcher(dir, kBase);
    std::map<std::string, std::size_t> got;
    auto stats = harvest_all({kBase, "oai_dc", std::nullopt}, fetcher, [&](const HarvestRecord& r) { ++got[r.oai_identifier]; },
                             no_sleep());
    auto expected = multiset(pages);
    CHECK(stats.pages == pages.size());
    CHECK(stats.requests == pages.size());
    REQUIRE(got.size() == expected.size());
    std::size_t extra = 0;
    for (const auto& [id, n] : expected) {
      CHECK(got[id] == 1);
      extra += n - 1;
    }
    CHECK(stats.duplicates_skipped == extra);
  }
  auto manifest = nlohmann::json::parse(testing::slurp(testing::fixtures() / "oai" / "paged" / "manifest.json"));
  DirectoryFetcher paged(testing::fixtures() / "oai" / "paged", kBase);
  CHECK(harvest_all({kBase, "oai_dc", std::nullopt}, paged, no_sleep()).size() == manifest["records"].get<std::size_t>());
}

TEST_CASE("generated providers with flaky transport") {
  Gen g;
  for (int run = 0; run < 100; ++run) {
    testing::ScratchDir dir("prop-oai");
    auto provider = write_provider(g, dir.path());
    DirectoryFetcher inner(dir.path(), kBase);
    FlakyFetcher flaky(inner, g, run % 2 == 0 ? 0.0 : 0.3);
    std::map<std::string, std::size_t> got;
    try {
      auto stats = harvest_all({kBase, "oai_dc", std::nullopt}, flaky,
                               [&](const HarvestRecord& r) { ++got[r.oai_identifier]; }, no_sleep());
      auto expected = multiset(provider.pages);
      CHECK(got.size() == expected.size());
      for (const auto& [id, n] : expected) CHECK(got[id] == 1);
      CHECK(stats.pages == provider.pages.size());
      CHECK(stats.requests == flaky.requests);
      CHECK(stats.requests <= provider.pages.size() + flaky.failures);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::TransportError);
      CHECK(flaky.failures >= 3);
      CHECK(flaky.requests <= provider.pages.size() + flaky.failures);
    }
  }
}

TEST_CASE("parsing is total over the fixture corpus") {
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(testing::fixtures() / "oai")) {
    if (e.path().extension() != ".xml") continue;
    ++files;
    bool records = false, error = false;
    try {
      parse_list_records(testing::slurp(e.path()));
      records = true;
    } catch (const Error& ex) {
      error = ex.code() == ErrorCode::ParseError || ex.code() == ErrorCode::ProtocolError;
    }
    CHECK_MESSAGE(records != error, e.path().string());
  }
  CHECK(files >= 8);

  // Truncations and byte flips of a valid page also end in one of the two.
  Gen g;
  auto base = testing::slurp(testing::fixtures() / "oai" / "paged" / "ListRecords.xml");
  for (int i = 0; i < 300; ++i) {
    std::string mutated = base.substr(0, g.index(base.size() + 1));
    if (g.chance(0.5) && !mutated.empty()) mutated[g.index(mutated.size())] = static_cast<char>(g.range(0, 255));
    try {
      parse_list_records(mutated);
    } catch (const Error& ex) {
      CHECK((ex.code() == ErrorCode::ParseError || ex.code() == ErrorCode::ProtocolError));
    }
  }
}
