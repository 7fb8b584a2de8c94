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
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <variant>

#include "fairsoft/swhid.hpp"

namespace fairsoft::swhid {

enum class ArchivalStatus { Pending, Done, Failed };
std::string_view to_string(ArchivalStatus s);

struct ArchivalReceipt {
  std::string request_id;
  ArchivalStatus status = ArchivalStatus::Pending;
  std::optional<Swhid> swhid;  // present iff status == Done
  std::string failure_reason;
};

struct OriginRequest {
  std::string url;
};

// What gets archived: a code repository origin or a self-contained bundle.
using ArchivalRequest = std::variant<OriginRequest, DirectoryTree>;

// Pure function of the request, used for idempotent request ids.
std::string request_id_for(const ArchivalRequest& request);

class ArchivalClient {
 public:
  virtual ~ArchivalClient() = default;
  // Throws Error{RetryableError} on transport failure.
  virtual ArchivalReceipt request_archival(const ArchivalRequest& request) = 0;
  // Throws Error{NotFound} for unknown request ids.
  virtual ArchivalReceipt poll_archival(const ArchivalReceipt& receipt) = 0;
};

/// In-process archive. Requests complete after `polls_until_done` polls and
/// receive the directory SWHID of what was archived. Origins resolve through
/// `register_origin`, then the resolver; anything else is archived as a
/// one-file tree holding the origin URL.
class MockArchivalClient : public ArchivalClient {
 public:
  explicit MockArchivalClient(int polls_until_done = 2) : polls_until_done_(polls_until_done) {}

  void register_origin(const std::string& url, DirectoryTree snapshot);
  // Consulted for origins that were not registered.
  void set_origin_resolver(std::function<std::optional<DirectoryTree>(const std::string& url)> resolver);
  // The next `n` request_archival calls throw RetryableError.
  void fail_next_requests(int n);
  // Every request made from now on ends in Failed.
  void fail_permanently(bool on);

  ArchivalReceipt request_archival(const ArchivalRequest& request) override;
  ArchivalReceipt poll_archival(const ArchivalReceipt& receipt) override;

  int request_count() const;

 private:
  struct State {
    int polls = 0;
    ArchivalStatus status = ArchivalStatus::Pending;
    Swhid target;
  };

  DirectoryTree snapshot_for(const ArchivalRequest& request) const;

  int polls_until_done_;
  mutable std::mutex mu_;
  std::map<std::string, DirectoryTree> origins_;
  std::function<std::optional<DirectoryTree>(const std::string&)> resolver_;
  std::map<std::string, State> requests_;
  int failures_pending_ = 0;
  bool fail_permanently_ = false;
  int request_count_ = 0;
};

struct HttpArchivalConfig {
  std::string base_url;                         // e.g. http://127.0.0.1:8081
  std::string save_path = "/api/1/origin/save";  // POST {"origin_url": ...}
  std::string status_path = "/api/1/origin/save/status";  // GET <status_path>/<request_id>
  std::chrono::milliseconds timeout{10000};
};

/// Client for a save-code-now style HTTP service. Responses are JSON objects
/// {"request_id", "status": pending|done|failed, "swhid"?}. Only origin
/// requests are supported.
class HttpArchivalClient : public ArchivalClient {
 public:
  explicit HttpArchivalClient(HttpArchivalConfig config) : config_(std::move(config)) {}

  ArchivalReceipt request_archival(const ArchivalRequest& request) override;
  ArchivalReceipt poll_archival(const ArchivalReceipt& receipt) override;

 private:
  HttpArchivalConfig config_;
};

}  // namespace fairsoft::swhid
