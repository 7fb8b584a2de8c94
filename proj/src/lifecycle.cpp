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

#include "fairsoft/lifecycle.hpp"

#include <algorithm>
#include <array>
#include <ctime>
#include <iomanip>
#include <fstream>
#include <sstream>
#include <thread>
#include <utility>

#include "fairsoft/error.hpp"
#include "fairsoft/hash.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::lifecycle {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<std::string_view, 8> kStateNames = {
    "Extracted", "PendingManagerApproval", "PendingAuthorValidation", "Validated",
    "Rejected",  "RegistrationRequested",  "Archived",                "Exposed",
};
constexpr std::array<std::string_view, 3> kActorNames = {"system", "manager", "author"};
constexpr std::array<std::string_view, 12> kKindNames = {
    "created",          "routed_to_manager",  "manager_approved",         "manager_rejected",
    "validation_issued", "author_confirmed",  "author_amended_confirmed", "author_rejected",
    "registration_sent", "archival_failed",   "archival_completed",       "exposed",
};

template <typename E, std::size_t N>
E lookup(const std::array<std::string_view, N>& names, std::string_view s, const char* what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  throw Error(ErrorCode::ParseError, std::string("unknown ") + what + " '" + std::string(s) + "'");
}

struct Rule {
  State from;
  EventKind kind;
  Actor actor;
  State to;
};

constexpr Rule kRules[] = {
    {State::Extracted, EventKind::RoutedToManager, Actor::System, State::PendingManagerApproval},
    {State::PendingManagerApproval, EventKind::ManagerApproved, Actor::Manager, State::PendingAuthorValidation},
    {State::PendingManagerApproval, EventKind::ManagerRejected, Actor::Manager, State::Rejected},
    {State::PendingAuthorValidation, EventKind::ValidationIssued, Actor::System, State::PendingAuthorValidation},
    {State::PendingAuthorValidation, EventKind::AuthorConfirmed, Actor::Author, State::Validated},
    {State::PendingAuthorValidation, EventKind::AuthorAmendedConfirmed, Actor::Author, State::Validated},
    {State::PendingAuthorValidation, EventKind::AuthorRejected, Actor::Author, State::Rejected},
    {State::Validated, EventKind::RegistrationSent, Actor::System, State::RegistrationRequested},
    {State::RegistrationRequested, EventKind::ArchivalFailed, Actor::System, State::RegistrationRequested},
    {State::RegistrationRequested, EventKind::ArchivalCompleted, Actor::System, State::Archived},
    {State::Archived, EventKind::Exposed, Actor::System, State::Exposed},
};

[[noreturn]] void illegal(const LifecycleRecord& r, const Event& e, const std::string& why) {
  throw Error(ErrorCode::IllegalTransition,
              std::string(to_string(e.kind)) + " by " + std::string(to_string(e.actor)) + " in state " +
                  std::string(to_string(r.state)) + (why.empty() ? "" : ": " + why));
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::string req_string(const json& j, const char* key) {
  auto v = opt_string(j, key);
  if (!v) throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return *v;
}

json to_json(const CandidateSnapshot& c) {
  json j = json::object();
  j["name"] = c.name;
  if (c.url) j["url"] = *c.url;
  if (c.version) j["version"] = *c.version;
  if (c.publisher) j["publisher"] = *c.publisher;
  j["aliases"] = c.aliases;
  return j;
}

CandidateSnapshot candidate_from(const json& j) {
  CandidateSnapshot c;
  c.name = req_string(j, "name");
  c.url = opt_string(j, "url");
  c.version = opt_string(j, "version");
  c.publisher = opt_string(j, "publisher");
  if (auto it = j.find("aliases"); it != j.end()) c.aliases = it->get<std::vector<std::string>>();
  return c;
}

json to_json(const MentionContext& m) {
  json mentions = json::array();
  for (const auto& x : m.mentions) {
    mentions.push_back({{"component", x.component},
                        {"start_byte", x.start_byte},
                        {"end_byte", x.end_byte},
                        {"surface", x.surface}});
  }
  return {{"sentence", m.sentence}, {"sentence_start_byte", m.sentence_start_byte}, {"mentions", mentions}};
}

MentionContext context_from(const json& j) {
  MentionContext m;
  m.sentence = req_string(j, "sentence");
  m.sentence_start_byte = j.at("sentence_start_byte").get<std::size_t>();
  for (const auto& x : j.at("mentions")) {
    m.mentions.push_back({req_string(x, "component"), x.at("start_byte").get<std::size_t>(),
                          x.at("end_byte").get<std::size_t>(), req_string(x, "surface")});
  }
  return m;
}

void apply_payload(LifecycleRecord& r, const Event& e) {
  const json& p = e.payload;
  switch (e.kind) {
    case EventKind::Created:
      r.paper_id = req_string(p, "paper_id");
      r.paper_title = opt_string(p, "paper_title").value_or("");
      r.author_email = opt_string(p, "author_email").value_or("");
      r.candidate_id = req_string(p, "candidate_id");
      r.candidate = candidate_from(p.at("candidate"));
      r.context = context_from(p.at("context"));
      break;
    case EventKind::ValidationIssued:
      r.validation_token = req_string(p, "token_sha256");
      r.token_expiry = req_string(p, "expires_at");
      break;
    case EventKind::AuthorAmendedConfirmed: {
      const json& a = p.at("amendments");
      if (auto v = opt_string(a, "name")) r.candidate.name = *v;
      if (auto v = opt_string(a, "url")) r.candidate.url = *v;
      if (auto v = opt_string(a, "version")) r.candidate.version = *v;
      r.validation_token.reset();
      r.token_expiry.reset();
      break;
    }
    case EventKind::AuthorConfirmed:
    case EventKind::AuthorRejected:
      r.validation_token.reset();
      r.token_expiry.reset();
      break;
    case EventKind::ArchivalFailed:
      r.last_failure = req_string(p, "reason");
      break;
    case EventKind::ArchivalCompleted:
      r.swhid = swhid::parse_swhid(req_string(p, "swhid"));
      r.last_failure.reset();
      break;
    default:
      break;
  }
}

std::string digest_of(const std::string& token) { return hash::sha256_hex(token); }

std::string fresh_token() {
  std::string raw = hash::random_bytes(16);
  return text::base64url(std::span(reinterpret_cast<const std::uint8_t*>(raw.data()), raw.size()));
}

}  // namespace

std::string_view to_string(State s) { return kStateNames[static_cast<std::size_t>(s)]; }
std::string_view to_string(Actor a) { return kActorNames[static_cast<std::size_t>(a)]; }
std::string_view to_string(EventKind k) { return kKindNames[static_cast<std::size_t>(k)]; }
State state_from_string(std::string_view s) { return lookup<State>(kStateNames, s, "state"); }
Actor actor_from_string(std::string_view s) { return lookup<Actor>(kActorNames, s, "actor"); }
EventKind kind_from_string(std::string_view s) { return lookup<EventKind>(kKindNames, s, "event kind"); }
bool is_terminal(State s) { return s == State::Rejected || s == State::Exposed; }

std::string format_utc(Timestamp t) {
  std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Timestamp parse_utc(std::string_view s) {
  std::tm tm{};
  std::string str(s);
  std::istringstream in(str);
  in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  if (in.fail() || str.size() != 20 || str.back() != 'Z') {
    throw Error(ErrorCode::ParseError, "bad UTC timestamp '" + str + "'");
  }
  return std::chrono::system_clock::from_time_t(timegm(&tm));
}

std::string to_json_line(const Event& e) {
  ordered_json j;
  j["record_id"] = e.record_id;
  j["seq"] = e.seq;
  j["timestamp"] = e.timestamp;
  j["actor"] = to_string(e.actor);
  j["kind"] = to_string(e.kind);
  j["payload"] = ordered_json::parse(e.payload.dump());
  return j.dump();
}

Event event_from_json(const json& j) {
  try {
    Event e;
    e.record_id = req_string(j, "record_id");
    e.seq = j.at("seq").get<std::uint64_t>();
    e.timestamp = req_string(j, "timestamp");
    e.actor = actor_from_string(req_string(j, "actor"));
    e.kind = kind_from_string(req_string(j, "kind"));
    e.payload = j.value("payload", json::object());
    return e;
  } catch (const json::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("bad event: ") + ex.what());
  }
}

ordered_json to_json(const LifecycleRecord& r) {
  ordered_json j;
  j["record_id"] = r.record_id;
  j["paper_id"] = r.paper_id;
  j["paper_title"] = r.paper_title;
  j["author_email"] = r.author_email;
  j["candidate_id"] = r.candidate_id;
  j["candidate"] = ordered_json::parse(to_json(r.candidate).dump());
  j["context"] = ordered_json::parse(to_json(r.context).dump());
  j["state"] = to_string(r.state);
  j["validation_pending"] = r.validation_token.has_value();
  if (r.token_expiry) j["token_expiry"] = *r.token_expiry;
  if (r.swhid) j["swhid"] = swhid::format_swhid(*r.swhid);
  if (r.last_failure) j["last_failure"] = *r.last_failure;
  ordered_json history = ordered_json::array();
  for (const auto& e : r.history) history.push_back(ordered_json::parse(to_json_line(e)));
  j["history"] = std::move(history);
  return j;
}

LifecycleRecord apply_event(const LifecycleRecord& record, const Event& event) {
  const std::uint64_t last = record.history.empty() ? 0 : record.history.back().seq;
  if (event.seq != last + 1) {
    throw Error(ErrorCode::SequenceError,
                "expected seq " + std::to_string(last + 1) + ", got " + std::to_string(event.seq));
  }
  if (!record.history.empty() && event.record_id != record.record_id) {
    throw Error(ErrorCode::SequenceError, "event for " + event.record_id + " applied to " + record.record_id);
  }

  LifecycleRecord next = record;
  if (event.kind == EventKind::Created) {
    if (!record.history.empty() || event.actor != Actor::System) illegal(record, event, "");
    next.record_id = event.record_id;
    next.state = State::Extracted;
  } else {
    if (record.history.empty()) illegal(record, event, "record must begin with created");
    const Rule* rule = nullptr;
    for (const auto& r : kRules) {
      if (r.from == record.state && r.kind == event.kind) rule = &r;
    }
    if (!rule) illegal(record, event, "");
    if (rule->actor != event.actor) illegal(record, event, "wrong actor");
    // Author decisions need an outstanding validation request.
    if (event.actor == Actor::Author && !record.validation_token) {
      illegal(record, event, "no validation issued");
    }
    next.state = rule->to;
  }
  try {
    apply_payload(next, event);
  } catch (const Error& ex) {
    if (ex.code() == ErrorCode::IllegalTransition) throw;
    illegal(record, event, std::string("bad payload: ") + ex.what());
  } catch (const json::exception& ex) {
    illegal(record, event, std::string("bad payload: ") + ex.what());
  }
  next.history.push_back(event);
  return next;
}

LifecycleRecord replay(std::span<const Event> events) {
  if (events.empty()) throw Error(ErrorCode::SequenceError, "empty history; a record begins with created");
  if (events.front().kind != EventKind::Created) {
    throw Error(ErrorCode::SequenceError, "history must begin with created");
  }
  LifecycleRecord r;
  for (const auto& e : events) r = apply_event(r, e);
  return r;
}

json to_payload(const CreatedPayload& p) {
  return {{"paper_id", p.paper_id},       {"paper_title", p.paper_title},
          {"author_email", p.author_email}, {"candidate_id", p.candidate_id},
          {"candidate", to_json(p.candidate)}, {"context", to_json(p.context)}};
}

std::string to_json_line(const NotificationMessage& m) {
  ordered_json j;
  j["record_id"] = m.record_id;
  j["to"] = m.to;
  j["subject"] = m.subject;
  j["body"] = m.body;
  return j.dump();
}

NotificationMessage validation_message(const LifecycleRecord& record, const std::string& validation_url,
                                       const std::string& expiry) {
  NotificationMessage m;
  m.record_id = record.record_id;
  m.to = record.author_email;
  m.subject = "Please validate software used in \"" + record.paper_title + "\"";
  std::string body;
  body += "Dear author,\n\n";
  body += "Your repository manager has approved a software mention found in your paper\n";
  body += "\"" + record.paper_title + "\" (" + record.paper_id + ").\n\n";
  body += "Software: " + record.candidate.name + "\n";
  if (record.candidate.version) body += "Version: " + *record.candidate.version + "\n";
  if (record.candidate.url) body += "URL: " + *record.candidate.url + "\n";
  body += "\nPlease confirm, correct or reject it here:\n" + validation_url + "\n\n";
  body += "This link can be used once and expires at " + expiry + ".\n";
  m.body = std::move(body);
  return m;
}

codemeta::CodeMetaRecord codemeta_of(const LifecycleRecord& record) {
  codemeta::CodeMetaRecord c;
  c.name = record.candidate.name;
  c.code_repository = record.candidate.url;
  c.version = record.candidate.version;
  c.publisher = record.candidate.publisher;
  if (record.swhid) c.identifier = swhid::format_swhid(*record.swhid);
  c.reference_publication = {record.paper_id};
  return c;
}

// ---------------------------------------------------------------------------

std::vector<Event> read_event_log(const std::filesystem::path& path) {
  std::vector<Event> out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(lineno) + ": " + ex.what());
    }
    out.push_back(event_from_json(j));
  }
  return out;
}

std::map<std::string, LifecycleRecord> replay_log(std::span<const Event> events) {
  std::map<std::string, std::vector<Event>> by_record;
  for (const auto& e : events) by_record[e.record_id].push_back(e);
  std::map<std::string, LifecycleRecord> out;
  for (auto& [id, list] : by_record) {
    std::stable_sort(list.begin(), list.end(), [](const Event& a, const Event& b) { return a.seq < b.seq; });
    out.emplace(id, replay(list));
  }
  return out;
}

Engine::Engine(EngineOptions options) : options_(std::move(options)) {
  if (!options_.clock) options_.clock = [] { return std::chrono::system_clock::now(); };
  auto events = read_event_log(options_.event_log);
  event_count_ = events.size();
  for (auto& [id, rec] : replay_log(events)) {
    auto s = std::make_unique<Slot>();
    if (rec.validation_token) token_index_[*rec.validation_token] = id;
    s->record = std::make_shared<const LifecycleRecord>(std::move(rec));
    slots_.emplace(id, std::move(s));
  }
}

Timestamp Engine::now() const { return options_.clock(); }

void Engine::write_outbox(const NotificationMessage& msg) {
  std::lock_guard lock(log_mu_);
  std::ofstream out(options_.outbox, std::ios::binary | std::ios::app);
  out << to_json_line(msg) << "\n";
}

Engine::Slot& Engine::slot(const std::string& record_id) const {
  std::shared_lock lock(map_mu_);
  auto it = slots_.find(record_id);
  if (it == slots_.end()) throw Error(ErrorCode::NotFound, "no record '" + record_id + "'");
  return *it->second;
}

std::shared_ptr<const LifecycleRecord> Engine::snapshot(const Slot& s) const {
  std::lock_guard lock(s.snap);
  return s.record;
}

std::shared_ptr<const LifecycleRecord> Engine::get(const std::string& record_id) const {
  return snapshot(slot(record_id));
}

std::vector<std::shared_ptr<const LifecycleRecord>> Engine::list() const {
  std::shared_lock lock(map_mu_);
  std::vector<std::shared_ptr<const LifecycleRecord>> out;
  for (const auto& [id, s] : slots_) {
    if (auto r = snapshot(*s)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::shared_ptr<const LifecycleRecord>> Engine::in_state(State st) const {
  auto all = list();
  std::erase_if(all, [st](const auto& r) { return r->state != st; });
  return all;
}

std::vector<std::shared_ptr<const LifecycleRecord>> Engine::for_paper(const std::string& paper_id) const {
  auto all = list();
  std::erase_if(all, [&](const auto& r) { return r->paper_id != paper_id; });
  return all;
}

std::size_t Engine::event_count() const {
  std::shared_lock lock(map_mu_);
  return event_count_;
}

Event Engine::make_event(const LifecycleRecord& base, std::uint64_t offset, Actor actor, EventKind kind,
                         json payload) const {
  Event e;
  e.record_id = base.record_id;
  e.seq = (base.history.empty() ? 0 : base.history.back().seq) + offset;
  e.timestamp = format_utc(now());
  e.actor = actor;
  e.kind = kind;
  e.payload = std::move(payload);
  return e;
}

LifecycleRecord Engine::commit(Slot& s, const LifecycleRecord& base, std::vector<Event> events) {
  {
    // Compare-and-set: the caller's base must still be the current snapshot.
    auto current = snapshot(s);
    std::uint64_t cur_seq = current && !current->history.empty() ? current->history.back().seq : 0;
    std::uint64_t base_seq = base.history.empty() ? 0 : base.history.back().seq;
    if (cur_seq != base_seq) throw Error(ErrorCode::Conflict, "record changed concurrently");
  }
  LifecycleRecord next = base;
  for (auto& e : events) {
    next = apply_event(next, e);
  }

  std::string lines;
  for (const auto& e : events) lines += to_json_line(e) + "\n";
  {
    std::lock_guard lock(log_mu_);
    std::ofstream out(options_.event_log, std::ios::binary | std::ios::app);
    out << lines;
    out.flush();
    if (!out) throw Error(ErrorCode::ConfigError, "cannot append to event log " + options_.event_log.string());
  }

  std::unique_lock map_lock(map_mu_);
  if (base.validation_token && base.validation_token != next.validation_token) {
    token_index_.erase(*base.validation_token);
  }
  if (next.validation_token) token_index_[*next.validation_token] = next.record_id;
  if (!next.validation_token) raw_tokens_.erase(next.record_id);
  event_count_ += events.size();
  {
    std::lock_guard lock(s.snap);
    s.record = std::make_shared<const LifecycleRecord>(next);
  }
  return next;
}

Engine::CreateResult Engine::create_record(const std::string& record_id, const CreatedPayload& payload) {
  Slot* s = nullptr;
  {
    std::unique_lock lock(map_mu_);
    auto [it, inserted] = slots_.try_emplace(record_id);
    if (inserted) it->second = std::make_unique<Slot>();
    s = it->second.get();
  }
  std::unique_lock write(s->write, std::try_to_lock);
  if (!write.owns_lock()) throw Error(ErrorCode::Conflict, "record " + record_id + " is busy");
  if (auto existing = snapshot(*s)) return {existing, false};

  LifecycleRecord base;
  base.record_id = record_id;
  std::vector<Event> events;
  events.push_back(make_event(base, 1, Actor::System, EventKind::Created, to_payload(payload)));
  events.push_back(make_event(base, 2, Actor::System, EventKind::RoutedToManager, json::object()));
  try {
    commit(*s, base, std::move(events));
  } catch (...) {
    std::unique_lock lock(map_mu_);
    if (!snapshot(*s)) {
      write.unlock();
      slots_.erase(record_id);
    }
    throw;
  }
  return {snapshot(*s), true};
}

IssuedValidation Engine::manager_approve(const std::string& record_id) {
  Slot& s = slot(record_id);
  std::unique_lock write(s.write, std::try_to_lock);
  if (!write.owns_lock()) throw Error(ErrorCode::Conflict, "record " + record_id + " is busy");
  auto base = snapshot(s);
  // Both events must be valid before either is persisted.
  std::string token = fresh_token();
  std::string expiry = format_utc(now() + options_.token_ttl);
  std::vector<Event> events;
  events.push_back(make_event(*base, 1, Actor::Manager, EventKind::ManagerApproved, json::object()));
  events.push_back(make_event(*base, 2, Actor::System, EventKind::ValidationIssued,
                              {{"token_sha256", digest_of(token)}, {"expires_at", expiry}}));
  LifecycleRecord next = commit(s, *base, std::move(events));
  {
    std::unique_lock lock(map_mu_);
    raw_tokens_[record_id] = token;
  }
  std::string url = options_.validation_base_url + token;
  NotificationMessage msg = validation_message(next, url, expiry);
  write_outbox(msg);
  return {std::move(next), {token, record_id, expiry}, std::move(msg)};
}

LifecycleRecord Engine::manager_reject(const std::string& record_id, const std::string& reason) {
  Slot& s = slot(record_id);
  std::unique_lock write(s.write, std::try_to_lock);
  if (!write.owns_lock()) throw Error(ErrorCode::Conflict, "record " + record_id + " is busy");
  auto base = snapshot(s);
  json payload = json::object();
  if (!reason.empty()) payload["reason"] = reason;
  return commit(s, *base, {make_event(*base, 1, Actor::Manager, EventKind::ManagerRejected, std::move(payload))});
}

IssuedValidation Engine::issue_validation(const std::string& record_id) {
  Slot& s = slot(record_id);
  std::unique_lock write(s.write, std::try_to_lock);
  if (!write.owns_lock()) throw Error(ErrorCode::Conflict, "record " + record_id + " is busy");
  return issue_locked(s);
}

IssuedValidation Engine::issue_locked(Slot& s) {
  auto base = snapshot(s);
  if (base->state == State::PendingAuthorValidation && base->validation_token && base->token_expiry &&
      now() < parse_utc(*base->token_expiry)) {
    std::shared_lock lock(map_mu_);
    auto it = raw_tokens_.find(base->record_id);
    if (it != raw_tokens_.end() && digest_of(it->second) == *base->validation_token) {
      return {*base, {it->second, base->record_id, *base->token_expiry}, std::nullopt};
    }
  }
  std::string token = fresh_token();
  std::string expiry = format_utc(now() + options_.token_ttl);
  LifecycleRecord next =
      commit(s, *base,
             {make_event(*base, 1, Actor::System, EventKind::ValidationIssued,
                         {{"token_sha256", digest_of(token)}, {"expires_at", expiry}})});
  {
    std::unique_lock lock(map_mu_);
    raw_tokens_[next.record_id] = token;
  }
  NotificationMessage msg = validation_message(next, options_.validation_base_url + token, expiry);
  write_outbox(msg);
  return {std::move(next), {token, next.record_id, expiry}, std::move(msg)};
}

std::shared_ptr<const LifecycleRecord> Engine::resolve_token(const std::string& token) const {
  std::string record_id;
  {
    std::shared_lock lock(map_mu_);
    auto it = token_index_.find(digest_of(token));
    if (it == token_index_.end()) throw Error(ErrorCode::InvalidToken, "unknown or used token");
    record_id = it->second;
  }
  auto rec = get(record_id);
  if (rec->state != State::PendingAuthorValidation || rec->validation_token != digest_of(token)) {
    throw Error(ErrorCode::InvalidToken, "unknown or used token");
  }
  if (!rec->token_expiry || !(now() < parse_utc(*rec->token_expiry))) {
    throw Error(ErrorCode::InvalidToken, "token expired", "expired");
  }
  return rec;
}

LifecycleRecord Engine::apply_author_decision(const std::string& token, const AuthorDecision& decision) {
  auto found = resolve_token(token);
  Slot& s = slot(found->record_id);
  std::unique_lock write(s.write, std::try_to_lock);
  if (!write.owns_lock()) throw Error(ErrorCode::Conflict, "record " + found->record_id + " is busy");
  // Re-check under the lock: a concurrent decision may have consumed it.
  auto base = resolve_token(token);

  EventKind kind = EventKind::AuthorConfirmed;
  json payload = json::object();
  switch (decision.kind) {
    case AuthorDecision::Kind::Confirm:
      break;
    case AuthorDecision::Kind::Amend: {
      kind = EventKind::AuthorAmendedConfirmed;
      json a = json::object();
      if (decision.amendments.name) {
        if (text::trim(*decision.amendments.name).empty()) {
          throw Error(ErrorCode::BadRequest, "amended name must not be empty");
        }
        a["name"] = *decision.amendments.name;
      }
      if (decision.amendments.url) {
        if (!text::is_http_url(*decision.amendments.url)) {
          throw Error(ErrorCode::BadRequest, "amended url must be http(s)");
        }
        a["url"] = *decision.amendments.url;
      }
      if (decision.amendments.version) a["version"] = *decision.amendments.version;
      payload["amendments"] = std::move(a);
      break;
    }
    case AuthorDecision::Kind::Reject:
      kind = EventKind::AuthorRejected;
      if (!decision.reason.empty()) payload["reason"] = decision.reason;
      break;
  }
  return commit(s, *base, {make_event(*base, 1, Actor::Author, kind, std::move(payload))});
}

LifecycleRecord Engine::register_and_archive(const std::string& record_id, swhid::ArchivalClient& client,
                                             const ArchiveOptions& options) {
  Slot& s = slot(record_id);
  std::unique_lock write(s.write, std::try_to_lock);
  if (!write.owns_lock()) throw Error(ErrorCode::Conflict, "record " + record_id + " is busy");
  return archive_locked(s, client, options);
}

LifecycleRecord Engine::archive_locked(Slot& s, swhid::ArchivalClient& client, const ArchiveOptions& options) {
  auto base = snapshot(s);
  LifecycleRecord rec = *base;

  swhid::ArchivalRequest request;
  json target = json::object();
  if (rec.candidate.url) {
    request = swhid::OriginRequest{*rec.candidate.url};
    target["origin_url"] = *rec.candidate.url;
  } else {
    swhid::DirectoryTree bundle;
    bundle.add_file("codemeta.json", codemeta::serialize_jsonld(codemeta_of(rec)));
    target["bundle"] = swhid::format_swhid(swhid::directory_swhid(bundle));
    request = std::move(bundle);
  }

  if (rec.state == State::Validated) {
    target["request_id"] = swhid::request_id_for(request);
    rec = commit(s, rec, {make_event(rec, 1, Actor::System, EventKind::RegistrationSent, target)});
  } else if (rec.state != State::RegistrationRequested) {
    throw Error(ErrorCode::IllegalTransition,
                "cannot register a record in state " + std::string(to_string(rec.state)));
  }

  auto fail = [&](const std::string& request_id, const std::string& reason, bool retryable) {
    json p = {{"reason", reason}, {"retryable", retryable}};
    if (!request_id.empty()) p["request_id"] = request_id;
    return commit(s, rec, {make_event(rec, 1, Actor::System, EventKind::ArchivalFailed, std::move(p))});
  };

  swhid::ArchivalReceipt receipt;
  try {
    receipt = client.request_archival(request);
    for (int i = 0; receipt.status == swhid::ArchivalStatus::Pending && i < options.max_polls; ++i) {
      if (options.poll_interval.count() > 0) std::this_thread::sleep_for(options.poll_interval);
      receipt = client.poll_archival(receipt);
    }
  } catch (const Error& ex) {
    if (ex.code() != ErrorCode::RetryableError && ex.code() != ErrorCode::NotFound &&
        ex.code() != ErrorCode::TransportError) {
      throw;
    }
    return fail(receipt.request_id, ex.what(), true);
  }

  switch (receipt.status) {
    case swhid::ArchivalStatus::Done:
      if (!receipt.swhid) return fail(receipt.request_id, "archive reported done without a SWHID", true);
      return commit(s, rec,
                    {make_event(rec, 1, Actor::System, EventKind::ArchivalCompleted,
                                {{"request_id", receipt.request_id}, {"swhid", swhid::format_swhid(*receipt.swhid)}})});
    case swhid::ArchivalStatus::Failed:
      return fail(receipt.request_id,
                  receipt.failure_reason.empty() ? std::string("archival failed") : receipt.failure_reason, true);
    case swhid::ArchivalStatus::Pending:
      break;
  }
  // Still pending after the poll budget; the next call asks again with the same request id.
  return rec;
}

LifecycleRecord Engine::expose(const std::string& record_id) {
  Slot& s = slot(record_id);
  std::unique_lock write(s.write, std::try_to_lock);
  if (!write.owns_lock()) throw Error(ErrorCode::Conflict, "record " + record_id + " is busy");
  auto base = snapshot(s);
  return commit(s, *base, {make_event(*base, 1, Actor::System, EventKind::Exposed, json::object())});
}

std::size_t Engine::advance_registrations(swhid::ArchivalClient& client, const ArchiveOptions& options) {
  std::size_t exposed = 0;
  for (const auto& r : list()) {
    if (r->state != State::Validated && r->state != State::RegistrationRequested && r->state != State::Archived) {
      continue;
    }
    try {
      LifecycleRecord next = *r;
      if (r->state != State::Archived) next = register_and_archive(r->record_id, client, options);
      if (next.state == State::Archived) {
        expose(r->record_id);
        ++exposed;
      }
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::Conflict) throw;
    }
  }
  return exposed;
}

}  // namespace fairsoft::lifecycle
