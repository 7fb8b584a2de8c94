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

#include "fairsoft/expose.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fairsoft/error.hpp"
#include "fairsoft/harvest.hpp"
#include "fairsoft/weblink.hpp"
#include "fairsoft/xml.hpp"

namespace fairsoft::expose {

namespace {

using lifecycle::LifecycleRecord;
using lifecycle::State;

struct Published {
  LinkRecord links;
  std::string datestamp;  // latest exposure among the linked records
};

// Exposed records grouped by paper.
std::map<std::string, Published> published(const lifecycle::Engine& engine, const std::string& relation_type) {
  std::map<std::string, std::vector<LifecycleRecord>> by_paper;
  for (const auto& r : engine.in_state(State::Exposed)) by_paper[r->paper_id].push_back(*r);
  std::map<std::string, Published> out;
  for (auto& [paper, records] : by_paper) {
    Published p;
    p.links = build_link_record(paper, records.front().paper_title, records, relation_type);
    for (const auto& r : records) {
      for (const auto& e : r.history) {
        if (e.kind == lifecycle::EventKind::Exposed) p.datestamp = std::max(p.datestamp, e.timestamp);
      }
    }
    out.emplace(paper, std::move(p));
  }
  return out;
}

std::string attr(std::string_view name, std::string_view value) {
  return " " + std::string(name) + "=\"" + xml::escape_attribute(value) + "\"";
}

// Accepts day or seconds granularity; `upper` completes a day to its last second.
std::optional<std::string> normalize_datestamp(const std::string& s, bool upper) {
  try {
    if (s.size() == 10) {
      std::string full = s + (upper ? "T23:59:59Z" : "T00:00:00Z");
      lifecycle::parse_utc(full);
      return full;
    }
    lifecycle::parse_utc(s);
    return s;
  } catch (const Error&) {
    return std::nullopt;
  }
}

class OaiResponse {
 public:
  OaiResponse(const ProviderConfig& config, std::string response_date)
      : config_(config), date_(std::move(response_date)) {}

  std::string error(const QueryParams& params, bool echo_params, std::string_view code, std::string_view message) {
    return envelope(params, echo_params,
                    "  <error" + attr("code", code) + ">" + xml::escape(message) + "</error>\n");
  }

  std::string envelope(const QueryParams& params, bool echo_params, const std::string& body) {
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<OAI-PMH xmlns=\"" + std::string(harvest::kOaiNamespace) +
           "\" xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\""
           " xsi:schemaLocation=\"http://www.openarchives.org/OAI/2.0/ "
           "http://www.openarchives.org/OAI/2.0/OAI-PMH.xsd\">\n";
    out += "  <responseDate>" + date_ + "</responseDate>\n";
    out += "  <request";
    if (echo_params) {
      for (const auto& [k, v] : params) out += attr(k, v);
    }
    out += ">" + xml::escape(config_.base_url) + "</request>\n";
    out += body;
    out += "</OAI-PMH>\n";
    return out;
  }

 private:
  const ProviderConfig& config_;
  std::string date_;
};

std::string header_xml(const std::string& identifier, const std::string& datestamp, const std::string& indent) {
  return indent + "<header>\n" + indent + "  <identifier>" + xml::escape(identifier) + "</identifier>\n" + indent +
         "  <datestamp>" + datestamp + "</datestamp>\n" + indent + "</header>\n";
}

std::string record_xml(const Published& p) {
  std::string out = "    <record>\n";
  out += header_xml(p.links.paper_id, p.datestamp, "      ");
  out += "      <metadata>\n";
  out += link_record_xml(p.links);
  out += "      </metadata>\n";
  out += "    </record>\n";
  return out;
}

}  // namespace

std::string codemeta_path(std::string_view record_id) {
  return "/api/assets/" + std::string(record_id) + "/codemeta.json";
}

LinkRecord build_link_record(const std::string& paper_id, const std::string& paper_title,
                             std::span<const LifecycleRecord> archived, const std::string& relation_type) {
  std::vector<const LifecycleRecord*> ordered;
  for (const auto& r : archived) {
    if ((r.state != State::Archived && r.state != State::Exposed) || !r.swhid) {
      throw Error(ErrorCode::IllegalTransition, "record " + r.record_id + " has not been archived");
    }
    ordered.push_back(&r);
  }
  if (ordered.empty()) throw Error(ErrorCode::NoLinks, "paper " + paper_id + " has no archived software");
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* a, const auto* b) { return a->record_id < b->record_id; });

  LinkRecord out{paper_id, paper_title, {}};
  std::set<std::string> seen;
  for (const auto* r : ordered) {
    std::string id = swhid::format_swhid(*r->swhid);
    if (!seen.insert(id).second) continue;
    out.related.push_back({id, relation_type, r->candidate.name, codemeta_path(r->record_id)});
  }
  std::sort(out.related.begin(), out.related.end(),
            [](const RelatedAsset& a, const RelatedAsset& b) { return a.swhid < b.swhid; });
  return out;
}

std::string link_record_xml(const LinkRecord& record) {
  std::string out = "        <links xmlns=\"" + std::string(kLinksNamespace) + "\" xmlns:datacite=\"" +
                    std::string(kDataciteNamespace) + "\">\n";
  out += "          <paper>" + xml::escape(record.paper_id) + "</paper>\n";
  out += "          <title>" + xml::escape(record.paper_title) + "</title>\n";
  for (const auto& a : record.related) {
    out += "          <asset" + attr("name", a.software_name) + attr("codemeta", a.codemeta_ref) + ">\n";
    out += "            <datacite:relatedIdentifier relatedIdentifierType=\"SWHID\"" +
           attr("relationType", a.relation_type) + ">" + xml::escape(a.swhid) + "</datacite:relatedIdentifier>\n";
    out += "          </asset>\n";
  }
  out += "        </links>\n";
  return out;
}

LinkRecord parse_link_record_xml(std::string_view xml_bytes) {
  xml::Node root = xml::parse(xml_bytes);
  std::vector<const xml::Node*> found = root.descendants(kLinksNamespace, "links");
  if (root.is(kLinksNamespace, "links")) found.insert(found.begin(), &root);
  if (found.empty()) throw Error(ErrorCode::ParseError, "no <links> element");
  const xml::Node& links = *found.front();
  LinkRecord out;
  if (const auto* p = links.first_child(kLinksNamespace, "paper")) out.paper_id = p->text_content();
  if (const auto* t = links.first_child(kLinksNamespace, "title")) out.paper_title = t->text_content();
  for (const auto* a : links.children_named(kLinksNamespace, "asset")) {
    const auto* rel = a->first_child(kDataciteNamespace, "relatedIdentifier");
    if (!rel) throw Error(ErrorCode::ParseError, "<asset> without relatedIdentifier");
    out.related.push_back({rel->text_content(), rel->attribute("relationType").value_or(""),
                           a->attribute("name").value_or(""), a->attribute("codemeta").value_or("")});
  }
  return out;
}

LinkRecord LinkService::links_for(const std::string& paper_id) const {
  auto records = engine_.for_paper(paper_id);
  if (records.empty()) throw Error(ErrorCode::NotFound, "unknown paper '" + paper_id + "'");
  std::vector<LifecycleRecord> exposed;
  for (const auto& r : records) {
    if (r->state == State::Exposed) exposed.push_back(*r);
  }
  return build_link_record(paper_id, records.front()->paper_title, exposed, config_.relation_type);
}

std::vector<LinkRecord> LinkService::all_links() const {
  std::vector<LinkRecord> out;
  for (auto& [paper, p] : published(engine_, config_.relation_type)) out.push_back(std::move(p.links));
  return out;
}

std::vector<std::string> LinkService::signposting_headers(const std::string& paper_id) const {
  LinkRecord links = links_for(paper_id);
  std::vector<std::string> out;
  for (const auto& a : links.related) {
    out.push_back(weblink::format_link({config_.resolver_base + a.swhid, {{"rel", "cite-as"}}}));
  }
  std::set<std::string> described;
  for (const auto& a : links.related) {
    if (!described.insert(a.codemeta_ref).second) continue;
    out.push_back(weblink::format_link(
        {config_.public_base_url + a.codemeta_ref, {{"rel", "describedby"}, {"type", "application/ld+json"}}}));
  }
  return out;
}

std::string LinkService::handle_oai(const QueryParams& params) const {
  OaiResponse resp(config_, lifecycle::format_utc(engine_.options().clock()));

  std::map<std::string, std::string> args;
  for (const auto& [k, v] : params) {
    if (!args.emplace(k, v).second) {
      return resp.error(params, false, "badArgument", "repeated argument '" + k + "'");
    }
  }
  auto verb_it = args.find("verb");
  if (verb_it == args.end()) return resp.error(params, false, "badVerb", "missing verb");
  const std::string verb = verb_it->second;

  static const std::map<std::string, std::set<std::string>> kAllowed = {
      {"Identify", {}},
      {"ListMetadataFormats", {"identifier"}},
      {"ListSets", {"resumptionToken"}},
      {"ListIdentifiers", {"metadataPrefix", "from", "until", "set", "resumptionToken"}},
      {"ListRecords", {"metadataPrefix", "from", "until", "set", "resumptionToken"}},
      {"GetRecord", {"identifier", "metadataPrefix"}},
  };
  auto allowed = kAllowed.find(verb);
  if (allowed == kAllowed.end()) return resp.error(params, false, "badVerb", "illegal verb '" + verb + "'");
  for (const auto& [k, v] : args) {
    if (k != "verb" && !allowed->second.count(k)) {
      return resp.error(params, false, "badArgument", "illegal argument '" + k + "' for " + verb);
    }
  }

  const auto pubs = published(engine_, config_.relation_type);
  auto has = [&](const char* k) { return args.count(k) > 0; };

  if (verb == "Identify") {
    std::string earliest = "1970-01-01T00:00:00Z";
    if (!pubs.empty()) {
      earliest = pubs.begin()->second.datestamp;
      for (const auto& [id, p] : pubs) earliest = std::min(earliest, p.datestamp);
    }
    std::string body = "  <Identify>\n";
    body += "    <repositoryName>" + xml::escape(config_.repository_name) + "</repositoryName>\n";
    body += "    <baseURL>" + xml::escape(config_.base_url) + "</baseURL>\n";
    body += "    <protocolVersion>2.0</protocolVersion>\n";
    body += "    <adminEmail>" + xml::escape(config_.admin_email) + "</adminEmail>\n";
    body += "    <earliestDatestamp>" + earliest + "</earliestDatestamp>\n";
    body += "    <deletedRecord>no</deletedRecord>\n";
    body += "    <granularity>YYYY-MM-DDThh:mm:ssZ</granularity>\n";
    body += "  </Identify>\n";
    return resp.envelope(params, true, body);
  }

  if (verb == "ListMetadataFormats") {
    if (has("identifier") && !pubs.count(args["identifier"])) {
      return resp.error(params, true, "idDoesNotExist", "unknown identifier '" + args["identifier"] + "'");
    }
    std::string body = "  <ListMetadataFormats>\n    <metadataFormat>\n";
    body += "      <metadataPrefix>" + std::string(kMetadataPrefix) + "</metadataPrefix>\n";
    body += "      <schema>" + std::string(kLinksSchema) + "</schema>\n";
    body += "      <metadataNamespace>" + std::string(kLinksNamespace) + "</metadataNamespace>\n";
    body += "    </metadataFormat>\n  </ListMetadataFormats>\n";
    return resp.envelope(params, true, body);
  }

  if (verb == "ListSets") {
    if (has("resumptionToken")) return resp.error(params, true, "badResumptionToken", "no resumption tokens issued");
    return resp.error(params, true, "noSetHierarchy", "sets are not supported");
  }

  if (verb == "GetRecord") {
    if (!has("identifier") || !has("metadataPrefix")) {
      return resp.error(params, false, "badArgument", "GetRecord requires identifier and metadataPrefix");
    }
    if (args["metadataPrefix"] != kMetadataPrefix) {
      return resp.error(params, true, "cannotDisseminateFormat", "unsupported format '" + args["metadataPrefix"] + "'");
    }
    auto it = pubs.find(args["identifier"]);
    if (it == pubs.end()) {
      return resp.error(params, true, "idDoesNotExist", "unknown identifier '" + args["identifier"] + "'");
    }
    return resp.envelope(params, true, "  <GetRecord>\n" + record_xml(it->second) + "  </GetRecord>\n");
  }

  // ListRecords / ListIdentifiers
  if (has("resumptionToken")) {
    return resp.error(params, true, "badResumptionToken", "no resumption tokens issued");
  }
  if (!has("metadataPrefix")) return resp.error(params, false, "badArgument", "metadataPrefix is required");
  if (args["metadataPrefix"] != kMetadataPrefix) {
    return resp.error(params, true, "cannotDisseminateFormat", "unsupported format '" + args["metadataPrefix"] + "'");
  }
  if (has("set")) return resp.error(params, true, "noSetHierarchy", "sets are not supported");
  std::optional<std::string> from, until;
  if (has("from") && !(from = normalize_datestamp(args["from"], false))) {
    return resp.error(params, false, "badArgument", "bad from date");
  }
  if (has("until") && !(until = normalize_datestamp(args["until"], true))) {
    return resp.error(params, false, "badArgument", "bad until date");
  }
  if (from && until && args["from"].size() != args["until"].size()) {
    return resp.error(params, false, "badArgument", "from and until granularities differ");
  }

  std::string items;
  for (const auto& [id, p] : pubs) {
    if (from && p.datestamp < *from) continue;
    if (until && p.datestamp > *until) continue;
    items += verb == "ListRecords" ? record_xml(p) : header_xml(id, p.datestamp, "    ");
  }
  if (items.empty()) return resp.error(params, true, "noRecordsMatch", "no exposed records match");
  return resp.envelope(params, true, "  <" + verb + ">\n" + items + "  </" + verb + ">\n");
}

}  // namespace fairsoft::expose
