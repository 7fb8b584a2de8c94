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
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairsoft/archival.hpp"
#include "fairsoft/codemeta.hpp"
#include "fairsoft/swhid.hpp"

namespace fairsoft::lifecycle {

enum class State {
  Extracted,
  PendingManagerApproval,
  PendingAuthorValidation,
  Validated,
  Rejected,
  RegistrationRequested,
  Archived,
  Exposed,
};

enum class Actor { System, Manager, Author };

enum class EventKind {
  Created,
  RoutedToManager,
  ManagerApproved,
  ManagerRejected,
  ValidationIssued,
  AuthorConfirmed,
  AuthorAmendedConfirmed,
  AuthorRejected,
  RegistrationSent,
  ArchivalFailed,
  ArchivalCompleted,
  Exposed,
};

std::string_view to_string(State s);
std::string_view to_string(Actor a);
std::string_view to_string(EventKind k);
State state_from_string(std::string_view s);
Actor actor_from_string(std::string_view s);
EventKind kind_from_string(std::string_view s);
bool is_terminal(State s);

using Timestamp = std::chrono::system_clock::time_point;

// "YYYY-MM-DDThh:mm:ssZ"
std::string format_utc(Timestamp t);
Timestamp parse_utc(std::string_view s);  // throws ParseError

struct Event {
  std::string record_id;
  std::uint64_t seq = 0;
  std::string timestamp;
  Actor actor = Actor::System;
  EventKind kind = EventKind::Created;
  nlohmann::json payload = nlohmann::json::object();

  friend bool operator==(const Event&, const Event&) = default;
};

// One JSON Lines entry; field order record_id, seq, timestamp, actor, kind, payload.
std::string to_json_line(const Event& e);
Event event_from_json(const nlohmann::json& j);

// Candidate fields the author sees and may amend.
struct CandidateSnapshot {
  std::string name;
  std::optional<std::string> url;
  std::optional<std::string> version;
  std::optional<std::string> publisher;
  std::vector<std::string> aliases;

  friend bool operator==(const CandidateSnapshot&, const CandidateSnapshot&) = default;
};

struct ContextMention {
  std::string component;
  std::size_t start_byte = 0;  // into the paper body
  std::size_t end_byte = 0;
  std::string surface;

  friend bool operator==(const ContextMention&, const ContextMention&) = default;
};

struct MentionContext {
  std::string sentence;
  std::size_t sentence_start_byte = 0;
  std::vector<ContextMention> mentions;

  friend bool operator==(const MentionContext&, const MentionContext&) = default;
};

struct LifecycleRecord {
  std::string record_id;
  std::string paper_id;
  std::string paper_title;
  std::string author_email;
  std::string candidate_id;
  CandidateSnapshot candidate;
  MentionContext context;
  State state = State::Extracted;
  // SHA-256 of the outstanding validation token; raw tokens are never stored.
  std::optional<std::string> validation_token;
  std::optional<std::string> token_expiry;
  std::optional<swhid::Swhid> swhid;
  std::optional<std::string> last_failure;
  std::vector<Event> history;
};

nlohmann::ordered_json to_json(const LifecycleRecord& r);

/// Applies one event. Throws SequenceError when event.seq is not
/// last seq + 1 and IllegalTransition for any (state, kind, actor) outside
/// the transition table or a malformed payload.
LifecycleRecord apply_event(const LifecycleRecord& record, const Event& event);

/// Folds a gap-free event list that starts with `created`.
LifecycleRecord replay(std::span<const Event> events);

struct CreatedPayload {
  std::string paper_id;
  std::string paper_title;
  std::string author_email;
  std::string candidate_id;
  CandidateSnapshot candidate;
  MentionContext context;
};
nlohmann::json to_payload(const CreatedPayload& p);

struct NotificationMessage {
  std::string record_id;
  std::string to;
  std::string subject;
  std::string body;
};
std::string to_json_line(const NotificationMessage& m);
// Deterministic message text for a validation request.
NotificationMessage validation_message(const LifecycleRecord& record, const std::string& validation_url,
                                       const std::string& expiry);

struct ValidationToken {
  std::string token;  // 128 random bits, base64url
  std::string record_id;
  std::string expiry;
};

struct Amendments {
  std::optional<std::string> name;
  std::optional<std::string> url;
  std::optional<std::string> version;
};

struct AuthorDecision {
  enum class Kind { Confirm, Amend, Reject };
  Kind kind = Kind::Confirm;
  Amendments amendments;
  std::string reason;
};

// The record as exposed to CodeMeta consumers.
codemeta::CodeMetaRecord codemeta_of(const LifecycleRecord& record);

struct EngineOptions {
  std::filesystem::path event_log;   // append-only JSON Lines
  std::filesystem::path outbox;      // JSON Lines of NotificationMessage
  std::string validation_base_url = "http://localhost:8080/validate/";
  std::chrono::seconds token_ttl = std::chrono::hours(24 * 30);
  std::function<Timestamp()> clock;  // defaults to system_clock::now
};

struct ArchiveOptions {
  int max_polls = 5;
  std::chrono::milliseconds poll_interval{0};
};

struct IssuedValidation {
  LifecycleRecord record;
  ValidationToken token;
  std::optional<NotificationMessage> message;  // empty when an existing token was returned
};

/// Owns all lifecycle records, persists every event to the log before it
/// becomes visible, and rebuilds state from the log on construction.
/// Mutations on one record are serialized; a concurrent mutation on the
/// same record fails with Conflict. Reads return immutable snapshots.
class Engine {
 public:
  explicit Engine(EngineOptions options);

  struct CreateResult {
    std::shared_ptr<const LifecycleRecord> record;
    bool created = false;
  };
  // Appends created + routed_to_manager unless the record already exists.
  CreateResult create_record(const std::string& record_id, const CreatedPayload& payload);

  std::shared_ptr<const LifecycleRecord> get(const std::string& record_id) const;  // NotFound
  std::vector<std::shared_ptr<const LifecycleRecord>> list() const;
  std::vector<std::shared_ptr<const LifecycleRecord>> in_state(State s) const;
  std::vector<std::shared_ptr<const LifecycleRecord>> for_paper(const std::string& paper_id) const;

  // manager_approved followed by validation_issued.
  IssuedValidation manager_approve(const std::string& record_id);
  LifecycleRecord manager_reject(const std::string& record_id, const std::string& reason = {});

  // Returns the outstanding unexpired token when one is known to this
  // process; otherwise issues a fresh one and writes the outbox message.
  IssuedValidation issue_validation(const std::string& record_id);

  // InvalidToken for unknown, expired or already used tokens.
  std::shared_ptr<const LifecycleRecord> resolve_token(const std::string& token) const;
  LifecycleRecord apply_author_decision(const std::string& token, const AuthorDecision& decision);

  LifecycleRecord register_and_archive(const std::string& record_id, swhid::ArchivalClient& client,
                                       const ArchiveOptions& options = {});
  LifecycleRecord expose(const std::string& record_id);

  // Registers and exposes every Validated / RegistrationRequested record.
  std::size_t advance_registrations(swhid::ArchivalClient& client, const ArchiveOptions& options = {});

  std::size_t event_count() const;
  const EngineOptions& options() const { return options_; }

 private:
  struct Slot {
    std::mutex write;
    mutable std::mutex snap;
    std::shared_ptr<const LifecycleRecord> record;
  };

  Slot& slot(const std::string& record_id) const;
  std::shared_ptr<const LifecycleRecord> snapshot(const Slot& s) const;
  // Applies and persists `events` atomically with respect to readers.
  LifecycleRecord commit(Slot& s, const LifecycleRecord& base, std::vector<Event> events);
  Event make_event(const LifecycleRecord& base, std::uint64_t offset, Actor actor, EventKind kind,
                   nlohmann::json payload) const;
  IssuedValidation issue_locked(Slot& s);
  LifecycleRecord archive_locked(Slot& s, swhid::ArchivalClient& client, const ArchiveOptions& options);
  Timestamp now() const;
  void write_outbox(const NotificationMessage& msg);

  EngineOptions options_;
  mutable std::shared_mutex map_mu_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
  std::map<std::string, std::string> token_index_;  // token digest -> record id
  std::map<std::string, std::string> raw_tokens_;   // record id -> token issued by this process
  std::mutex log_mu_;
  std::size_t event_count_ = 0;
};

// Reads every event in a log file (missing file = empty).
std::vector<Event> read_event_log(const std::filesystem::path& path);
// Replays a whole log, keyed by record id.
std::map<std::string, LifecycleRecord> replay_log(std::span<const Event> events);

}  // namespace fairsoft::lifecycle
