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

#include "fairsoft/api.hpp"

#include <json.hpp>

#include "fairsoft/pipeline.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::api {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

Response json_response(const ordered_json& j, int status = 200) {
  Response r;
  r.status = status;
  r.body = j.dump(2) + "\n";
  return r;
}

ordered_json summary(const lifecycle::LifecycleRecord& r) {
  ordered_json full = lifecycle::to_json(r);
  full.erase("history");
  return full;
}

ordered_json summaries(const std::vector<std::shared_ptr<const lifecycle::LifecycleRecord>>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : records) arr.push_back(summary(*r));
  return {{"records", arr}};
}

json parse_body(const std::string& body, bool required) {
  if (text::trim(body).empty()) {
    if (required) throw Error(ErrorCode::BadRequest, "request body required");
    return json::object();
  }
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::BadRequest, std::string("malformed JSON: ") + ex.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::BadRequest, "body must be a JSON object");
  return j;
}

std::optional<std::string> opt_str(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorCode::BadRequest, std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

lifecycle::AuthorDecision decision_from(const json& body) {
  for (const auto& [k, v] : body.items()) {
    if (k != "decision" && k != "amendments" && k != "reason") {
      throw Error(ErrorCode::BadRequest, "unknown field '" + k + "'");
    }
  }
  auto kind = opt_str(body, "decision");
  if (!kind) throw Error(ErrorCode::BadRequest, "'decision' is required");
  lifecycle::AuthorDecision d;
  d.reason = opt_str(body, "reason").value_or("");
  if (*kind == "confirm") {
    d.kind = lifecycle::AuthorDecision::Kind::Confirm;
  } else if (*kind == "reject") {
    d.kind = lifecycle::AuthorDecision::Kind::Reject;
  } else if (*kind == "amend") {
    d.kind = lifecycle::AuthorDecision::Kind::Amend;
    auto it = body.find("amendments");
    if (it == body.end() || !it->is_object()) throw Error(ErrorCode::BadRequest, "'amendments' object required");
    for (const auto& [k, v] : it->items()) {
      if (k != "name" && k != "url" && k != "version") {
        throw Error(ErrorCode::BadRequest, "cannot amend field '" + k + "'");
      }
    }
    d.amendments.name = opt_str(*it, "name");
    d.amendments.url = opt_str(*it, "url");
    d.amendments.version = opt_str(*it, "version");
    if (!d.amendments.name && !d.amendments.url && !d.amendments.version) {
      throw Error(ErrorCode::BadRequest, "'amendments' is empty");
    }
  } else {
    throw Error(ErrorCode::BadRequest, "decision must be confirm, amend or reject");
  }
  if (d.kind != lifecycle::AuthorDecision::Kind::Amend && body.contains("amendments")) {
    throw Error(ErrorCode::BadRequest, "'amendments' only allowed with decision amend");
  }
  return d;
}

ordered_json validation_view(const lifecycle::LifecycleRecord& r) {
  ordered_json j;
  j["record_id"] = r.record_id;
  j["paper_id"] = r.paper_id;
  j["paper_title"] = r.paper_title;
  j["state"] = lifecycle::to_string(r.state);
  if (r.token_expiry) j["expires_at"] = *r.token_expiry;
  j["sentence"] = r.context.sentence;
  j["sentence_start_byte"] = r.context.sentence_start_byte;
  ordered_json mentions = ordered_json::array();
  for (const auto& m : r.context.mentions) {
    mentions.push_back({{"component", m.component},
                        {"start_byte", m.start_byte},
                        {"end_byte", m.end_byte},
                        {"sentence_start", m.start_byte - r.context.sentence_start_byte},
                        {"sentence_end", m.end_byte - r.context.sentence_start_byte},
                        {"surface", m.surface}});
  }
  j["mentions"] = std::move(mentions);
  ordered_json cand;
  cand["name"] = r.candidate.name;
  cand["url"] = r.candidate.url ? ordered_json(*r.candidate.url) : ordered_json(nullptr);
  cand["version"] = r.candidate.version ? ordered_json(*r.candidate.version) : ordered_json(nullptr);
  cand["publisher"] = r.candidate.publisher ? ordered_json(*r.candidate.publisher) : ordered_json(nullptr);
  cand["aliases"] = r.candidate.aliases;
  j["candidate"] = std::move(cand);
  return j;
}

ordered_json to_json(const expose::LinkRecord& l) {
  ordered_json related = ordered_json::array();
  for (const auto& a : l.related) {
    related.push_back({{"swhid", a.swhid},
                       {"relation_type", a.relation_type},
                       {"software_name", a.software_name},
                       {"codemeta_ref", a.codemeta_ref}});
  }
  ordered_json j;
  j["paper_id"] = l.paper_id;
  j["paper_title"] = l.paper_title;
  j["related"] = std::move(related);
  return j;
}

std::vector<std::string> segments(const std::string& path) {
  std::vector<std::string> out;
  for (auto& s : text::split(path, '/')) {
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadRequest:
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::MalformedSwhid:
      return 400;
    case ErrorCode::NotFound:
    case ErrorCode::NoLinks:
      return 404;
    case ErrorCode::IllegalTransition:
    case ErrorCode::Conflict:
    case ErrorCode::SequenceError:
      return 409;
    case ErrorCode::InvalidToken:
      return 410;
    case ErrorCode::RetryableError:
    case ErrorCode::TransportError:
      return 503;
    default:
      return 500;
  }
}

std::string error_code_name(ErrorCode code) {
  std::string out;
  for (char c : to_string(code)) {
    if (text::is_upper(c)) {
      if (!out.empty()) out += '_';
      out += text::to_lower(c);
    } else {
      out += c;
    }
  }
  return out;
}

Response error_response(const Error& error) {
  ordered_json j;
  j["error"] = {{"code", error_code_name(error.code())}, {"message", error.what()}};
  return json_response(j, http_status(error.code()));
}

std::string public_base_url(const config::PipelineConfig& cfg) {
  if (!cfg.public_base_url.empty()) {
    std::string s = cfg.public_base_url;
    while (!s.empty() && s.back() == '/') s.pop_back();
    return s;
  }
  return "http://" + cfg.listen_host + ":" + std::to_string(cfg.listen_port);
}

expose::ProviderConfig provider_config(const config::PipelineConfig& cfg) {
  expose::ProviderConfig p;
  p.public_base_url = public_base_url(cfg);
  p.base_url = p.public_base_url + "/oai";
  p.resolver_base = cfg.resolver_base;
  p.relation_type = cfg.relation_type;
  return p;
}

Api::Api(lifecycle::Engine& engine, config::PipelineConfig cfg)
    : engine_(engine), cfg_(std::move(cfg)), links_(engine, provider_config(cfg_)) {}

bool Api::handles(const std::string& path) {
  return path == "/oai" || path == "/api" || path.rfind("/api/", 0) == 0;
}

Response Api::handle(const Request& request) {
  try {
    return route(request);
  } catch (const Error& ex) {
    return error_response(ex);
  } catch (const std::exception& ex) {
    return error_response(Error(ErrorCode::ConfigError, std::string("internal error: ") + ex.what()));
  }
}

Response Api::route(const Request& req) {
  const auto seg = segments(req.path);
  const bool get = req.method == "GET" || req.method == "HEAD";
  const bool post = req.method == "POST";
  auto not_allowed = [&] {
    Response r = error_response(Error(ErrorCode::BadRequest, req.method + " not allowed on " + req.path));
    r.status = 405;
    r.body = ordered_json({{"error", {{"code", "method_not_allowed"}, {"message", req.method + " not allowed"}}}})
                 .dump(2) + "\n";
    return r;
  };

  if (seg.size() == 1 && seg[0] == "oai") {
    if (!get && !post) return not_allowed();
    Response r;
    r.content_type = "text/xml";
    r.body = links_.handle_oai(req.query);
    return r;
  }
  if (seg.empty() || seg[0] != "api") throw Error(ErrorCode::NotFound, "no route for " + req.path);

  if (seg.size() == 2 && seg[1] == "health") {
    return json_response({{"status", "ok"}, {"events", engine_.event_count()}});
  }
  if (seg.size() == 2 && seg[1] == "pending") {
    if (!get) return not_allowed();
    return json_response(summaries(engine_.in_state(lifecycle::State::PendingManagerApproval)));
  }
  if (seg.size() >= 2 && seg[1] == "records") {
    if (seg.size() == 2) {
      if (!get) return not_allowed();
      return json_response(summaries(engine_.list()));
    }
    if (seg.size() == 3) {
      if (!get) return not_allowed();
      return json_response(lifecycle::to_json(*engine_.get(seg[2])));
    }
    if (seg.size() == 4 && seg[3] == "manager-approve") {
      if (!post) return not_allowed();
      parse_body(req.body, false);
      auto issued = engine_.manager_approve(seg[2]);
      return json_response(summary(issued.record));
    }
    if (seg.size() == 4 && seg[3] == "manager-reject") {
      if (!post) return not_allowed();
      json body = parse_body(req.body, false);
      return json_response(summary(engine_.manager_reject(seg[2], opt_str(body, "reason").value_or(""))));
    }
  }
  if (seg.size() == 3 && seg[1] == "validate") {
    if (get) return json_response(validation_view(*engine_.resolve_token(seg[2])));
    if (!post) return not_allowed();
    auto decision = decision_from(parse_body(req.body, true));
    return json_response(summary(engine_.apply_author_decision(seg[2], decision)));
  }
  if (seg.size() == 4 && seg[1] == "assets" && seg[3] == "codemeta.json") {
    if (!get) return not_allowed();
    Response r;
    r.content_type = "application/ld+json";
    r.body = codemeta::serialize_jsonld(pipeline::asset_codemeta(*engine_.get(seg[2]), cfg_));
    return r;
  }
  if (seg.size() == 4 && seg[1] == "papers" && seg[3] == "links") {
    if (!get) return not_allowed();
    Response r = json_response(to_json(links_.links_for(seg[2])));
    auto values = links_.signposting_headers(seg[2]);
    r.headers.emplace_back("Link", text::join(values, ", "));
    return r;
  }
  throw Error(ErrorCode::NotFound, "no route for " + req.path);
}

}  // namespace fairsoft::api
