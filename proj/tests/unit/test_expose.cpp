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

#include "engine_fixture.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/expose.hpp"
#include "fairsoft/harvest.hpp"
#include "fairsoft/weblink.hpp"
#include "fairsoft/xml.hpp"
#include "link_grammar.hpp"

using namespace fairsoft;
using namespace fairsoft::expose;
using lifecycle::State;
using testing::ManualClock;
using testing::ScratchDir;

namespace {

const std::string kOai(harvest::kOaiNamespace);

struct Store {
  ScratchDir dir{"expose"};
  ManualClock clock;
  lifecycle::Engine engine{testing::engine_options_in(dir, clock)};
  swhid::MockArchivalClient client{1};
  ProviderConfig config;
  LinkService service{engine, config};

  Store() {
    // Two tools for paper A (one of them cited twice via two records), one for paper B,
    // one paper C record still awaiting approval.
    testing::expose_new_record(engine, "a1", testing::sample_payload("oai:r:A", "GROBID"), client);
    clock.advance(std::chrono::hours(24));
    testing::expose_new_record(engine, "a2", testing::sample_payload("oai:r:A", "Gephi", std::string("https://github.com/gephi/gephi")), client);
    testing::expose_new_record(engine, "a3", testing::sample_payload("oai:r:A", "grobid"), client);
    clock.advance(std::chrono::hours(24));
    testing::expose_new_record(engine, "b1", testing::sample_payload("oai:r:B", "Tool", std::nullopt), client);
    engine.create_record("c1", testing::sample_payload("oai:r:C", "Pending"));
  }

  std::string oai(QueryParams q) const { return service.handle_oai(q); }
};

// Structural check of an OAI-PMH response document.
const xml::Node* check_envelope(const xml::Node& root) {
  REQUIRE(root.is(kOai, "OAI-PMH"));
  REQUIRE(root.first_child(kOai, "responseDate"));
  CHECK(lifecycle::format_utc(lifecycle::parse_utc(root.first_child(kOai, "responseDate")->text_content())) ==
        root.first_child(kOai, "responseDate")->text_content());
  REQUIRE(root.first_child(kOai, "request"));
  const xml::Node* payload = nullptr;
  int elements = 0;
  for (const auto& c : root.children) {
    if (c.kind != xml::Node::Kind::Element) continue;
    ++elements;
    CHECK(c.ns == kOai);
    if (c.name != "responseDate" && c.name != "request") payload = &c;
  }
  CHECK(elements == 3);
  REQUIRE(payload);
  return payload;
}

std::string error_code(const std::string& response) {
  auto root = xml::parse(response);
  const auto* p = check_envelope(root);
  if (!p->is(kOai, "error")) return "";
  return p->attribute("code").value_or("?");
}

}  // namespace

TEST_CASE("link record building") {
  Store s;
  auto a = s.service.links_for("oai:r:A");
  CHECK(a.paper_id == "oai:r:A");
  CHECK(a.paper_title == "Mining full texts");
  // GROBID twice resolves to the same origin snapshot, so the SWHID appears once.
  REQUIRE(a.related.size() == 2);
  CHECK(a.related[0].swhid < a.related[1].swhid);
  for (const auto& r : a.related) {
    CHECK_NOTHROW(swhid::parse_swhid(r.swhid));
    CHECK(r.relation_type == "References");
    CHECK(r.codemeta_ref.rfind("/api/assets/", 0) == 0);
  }
  CHECK_THROWS_AS(s.service.links_for("oai:r:none"), Error);
  try {
    s.service.links_for("oai:r:C");
    FAIL("pending paper has links");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoLinks);
  }
  CHECK(s.service.all_links().size() == 2);

  auto pending = *s.engine.get("c1");
  std::vector<lifecycle::LifecycleRecord> bad{pending};
  CHECK_THROWS_AS(build_link_record("p", "t", bad), Error);
  std::vector<lifecycle::LifecycleRecord> none;
  CHECK_THROWS_AS(build_link_record("p", "t", none), Error);
}

TEST_CASE("link record xml round trip") {
  Store s;
  auto a = s.service.links_for("oai:r:A");
  CHECK(parse_link_record_xml(link_record_xml(a)) == a);
  LinkRecord odd{"id<&>", "Title \"quoted\" & <b>", {{"swh:1:cnt:" + std::string(40, 'f'), "IsSupplementedBy", "N&M", "/x?a=1&b=2"}}};
  CHECK(parse_link_record_xml(link_record_xml(odd)) == odd);
}

TEST_CASE("Identify and ListMetadataFormats") {
  Store s;
  auto root = xml::parse(s.oai({{"verb", "Identify"}}));
  const auto* id = check_envelope(root);
  REQUIRE(id->is(kOai, "Identify"));
  CHECK(id->first_child(kOai, "protocolVersion")->text_content() == "2.0");
  CHECK(id->first_child(kOai, "baseURL")->text_content() == s.config.base_url);
  CHECK(id->first_child(kOai, "granularity")->text_content() == "YYYY-MM-DDThh:mm:ssZ");

  auto formats = xml::parse(s.oai({{"verb", "ListMetadataFormats"}}));
  const auto* f = check_envelope(formats);
  REQUIRE(f->is(kOai, "ListMetadataFormats"));
  CHECK(f->descendants(kOai, "metadataPrefix").at(0)->text_content() == "sofair_links");
  CHECK(error_code(s.oai({{"verb", "ListMetadataFormats"}, {"identifier", "nope"}})) == "idDoesNotExist");
}

TEST_CASE("GetRecord carries every SWHID and matches the live store") {
  Store s;
  auto text = s.oai({{"verb", "GetRecord"}, {"identifier", "oai:r:A"}, {"metadataPrefix", "sofair_links"}});
  auto root = xml::parse(text);
  const auto* gr = check_envelope(root);
  REQUIRE(gr->is(kOai, "GetRecord"));
  const auto* header = gr->descendants(kOai, "header").at(0);
  CHECK(header->first_child(kOai, "identifier")->text_content() == "oai:r:A");
  auto links = s.service.links_for("oai:r:A");
  CHECK(parse_link_record_xml(text) == links);
  for (const auto& r : links.related) CHECK(text.find(r.swhid) != std::string::npos);
}

TEST_CASE("ListRecords, ListIdentifiers and date filters") {
  Store s;
  auto all = xml::parse(s.oai({{"verb", "ListRecords"}, {"metadataPrefix", "sofair_links"}}));
  const auto* lr = check_envelope(all);
  REQUIRE(lr->is(kOai, "ListRecords"));
  CHECK(lr->children_named(kOai, "record").size() == 2);

  auto ids = xml::parse(s.oai({{"verb", "ListIdentifiers"}, {"metadataPrefix", "sofair_links"}}));
  const auto* li = check_envelope(ids);
  REQUIRE(li->is(kOai, "ListIdentifiers"));
  CHECK(li->children_named(kOai, "header").size() == 2);

  // Paper A was last exposed a day before paper B.
  auto b_date = lifecycle::format_utc(s.clock.now()).substr(0, 10);
  auto only_b = xml::parse(s.oai({{"verb", "ListIdentifiers"}, {"metadataPrefix", "sofair_links"}, {"from", b_date}}));
  const auto* ob = check_envelope(only_b);
  REQUIRE(ob->children_named(kOai, "header").size() == 1);
  CHECK(ob->descendants(kOai, "identifier").at(0)->text_content() == "oai:r:B");
  CHECK(error_code(s.oai({{"verb", "ListRecords"}, {"metadataPrefix", "sofair_links"}, {"until", "2000-01-01"}})) ==
        "noRecordsMatch");
}

TEST_CASE("OAI-PMH protocol errors") {
  Store s;
  CHECK(error_code(s.oai({})) == "badVerb");
  CHECK(error_code(s.oai({{"verb", "Explode"}})) == "badVerb");
  CHECK(error_code(s.oai({{"verb", "Identify"}, {"verb", "Identify"}})) == "badArgument");
  CHECK(error_code(s.oai({{"verb", "Identify"}, {"extra", "1"}})) == "badArgument");
  CHECK(error_code(s.oai({{"verb", "ListRecords"}})) == "badArgument");
  CHECK(error_code(s.oai({{"verb", "ListRecords"}, {"metadataPrefix", "oai_dc"}})) == "cannotDisseminateFormat");
  CHECK(error_code(s.oai({{"verb", "ListRecords"}, {"resumptionToken", "x"}})) == "badResumptionToken");
  CHECK(error_code(s.oai({{"verb", "ListRecords"}, {"metadataPrefix", "sofair_links"}, {"from", "yesterday"}})) ==
        "badArgument");
  CHECK(error_code(s.oai({{"verb", "ListRecords"}, {"metadataPrefix", "sofair_links"}, {"set", "x"}})) ==
        "noSetHierarchy");
  CHECK(error_code(s.oai({{"verb", "ListSets"}})) == "noSetHierarchy");
  CHECK(error_code(s.oai({{"verb", "GetRecord"}, {"identifier", "oai:r:A"}})) == "badArgument");
  CHECK(error_code(s.oai({{"verb", "GetRecord"}, {"identifier", "oai:r:C"}, {"metadataPrefix", "sofair_links"}})) ==
        "idDoesNotExist");
  CHECK(error_code(s.oai({{"verb", "GetRecord"}, {"identifier", "oai:r:A"}, {"metadataPrefix", "x"}})) ==
        "cannotDisseminateFormat");
}

TEST_CASE("every SWHID in any response parses") {
  Store s;
  for (const auto& q : std::vector<QueryParams>{{{"verb", "ListRecords"}, {"metadataPrefix", "sofair_links"}},
                                                {{"verb", "GetRecord"}, {"identifier", "oai:r:B"}, {"metadataPrefix", "sofair_links"}}}) {
    auto text = s.oai(q);
    std::size_t found = 0;
    for (auto pos = text.find("swh:1:"); pos != std::string::npos; pos = text.find("swh:1:", pos + 1)) {
      auto end = text.find('<', pos);
      CHECK_NOTHROW(swhid::parse_swhid(text.substr(pos, end - pos)));
      ++found;
    }
    CHECK(found > 0);
  }
}

TEST_CASE("signposting headers parse under the independent grammar") {
  Store s;
  auto headers = s.service.signposting_headers("oai:r:A");
  std::string joined;
  for (const auto& h : headers) joined += (joined.empty() ? "" : ", ") + h;
  auto check = testing::check_link_header(joined);
  REQUIRE_MESSAGE(check.ok, check.error);
  std::size_t cite = 0, described = 0;
  auto links = s.service.links_for("oai:r:A");
  for (const auto& l : check.links) {
    auto rel = l.params.find("rel")->second;
    if (rel == "cite-as") {
      ++cite;
      CHECK(l.uri.rfind(s.config.resolver_base, 0) == 0);
      CHECK_NOTHROW(swhid::parse_swhid(l.uri.substr(s.config.resolver_base.size())));
    } else if (rel == "describedby") {
      ++described;
      CHECK(l.params.find("type")->second == "application/ld+json");
      CHECK(l.uri.rfind(s.config.public_base_url + "/api/assets/", 0) == 0);
    }
  }
  CHECK(cite == links.related.size());
  CHECK(described == links.related.size());
  // The library parser agrees.
  CHECK(weblink::parse_link_header(joined).size() == check.links.size());
}
