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

#include "fairsoft/archival.hpp"

#include <httplib.h>

#include <json.hpp>

#include "fairsoft/error.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::swhid {

std::string_view to_string(ArchivalStatus s) {
  switch (s) {
    case ArchivalStatus::Pending: return "pending";
    case ArchivalStatus::Done: return "done";
    case ArchivalStatus::Failed: return "failed";
  }
  return "pending";
}

std::string request_id_for(const ArchivalRequest& request) {
  if (const auto* origin = std::get_if<OriginRequest>(&request))
    return hash::sha1_hex("origin\n" + origin->url);
  return hash::sha1_hex("bundle\n" + directory_swhid(std::get<DirectoryTree>(request)).core());
}

void MockArchivalClient::register_origin(const std::string& url, DirectoryTree snapshot) {
  std::lock_guard lock(mu_);
  origins_[url] = std::move(snapshot);
}

void MockArchivalClient::fail_next_requests(int n) {
  std::lock_guard lock(mu_);
  failures_pending_ = n;
}

void MockArchivalClient::fail_permanently(bool on) {
  std::lock_guard lock(mu_);
  fail_permanently_ = on;
}

int MockArchivalClient::request_count() const {
  std::lock_guard lock(mu_);
  return request_count_;
}

void MockArchivalClient::set_origin_resolver(
    std::function<std::optional<DirectoryTree>(const std::string& url)> resolver) {
  std::lock_guard lock(mu_);
  resolver_ = std::move(resolver);
}

DirectoryTree MockArchivalClient::snapshot_for(const ArchivalRequest& request) const {
  if (const auto* origin = std::get_if<OriginRequest>(&request)) {
    auto it = origins_.find(origin->url);
    if (it != origins_.end()) return it->second;
    if (resolver_) {
      if (auto tree = resolver_(origin->url)) return *std::move(tree);
    }
    DirectoryTree synthetic;
    synthetic.add_file("ORIGIN", origin->url + "\n");
    return synthetic;
  }
  return std::get<DirectoryTree>(request);
}

ArchivalReceipt MockArchivalClient::request_archival(const ArchivalRequest& request) {
  std::lock_guard lock(mu_);
  ++request_count_;
  if (failures_pending_ > 0) {
    --failures_pending_;
    throw Error(ErrorCode::RetryableError, "mock archive unavailable");
  }
  auto id = request_id_for(request);
  auto it = requests_.find(id);
  if (it == requests_.end()) {
    State state;
    state.target = directory_swhid(snapshot_for(request));
    if (fail_permanently_) state.status = ArchivalStatus::Failed;
    it = requests_.emplace(id, state).first;
  }
  ArchivalReceipt receipt{id, ArchivalStatus::Pending, std::nullopt, {}};
  if (it->second.status == ArchivalStatus::Done) {
    receipt.status = ArchivalStatus::Done;
    receipt.swhid = it->second.target;
  }
  return receipt;
}

ArchivalReceipt MockArchivalClient::poll_archival(const ArchivalReceipt& receipt) {
  std::lock_guard lock(mu_);
  auto it = requests_.find(receipt.request_id);
  if (it == requests_.end())
    throw Error(ErrorCode::NotFound, "unknown archival request " + receipt.request_id);
  auto& state = it->second;
  ArchivalReceipt out{receipt.request_id, state.status, std::nullopt, {}};
  if (state.status == ArchivalStatus::Pending && ++state.polls >= polls_until_done_) {
    state.status = ArchivalStatus::Done;
  }
  out.status = state.status;
  if (state.status == ArchivalStatus::Done) out.swhid = state.target;
  if (state.status == ArchivalStatus::Failed) out.failure_reason = "archival rejected by mock";
  return out;
}

namespace {

ArchivalReceipt receipt_from_json(const std::string& body) {
  auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("request_id"))
    throw Error(ErrorCode::RetryableError, "unexpected archival response: " + body);
  ArchivalReceipt r;
  r.request_id = j.at("request_id").get<std::string>();
  auto status = j.value("status", "pending");
  if (status == "done") {
    r.status = ArchivalStatus::Done;
    if (!j.contains("swhid"))
      throw Error(ErrorCode::RetryableError, "done receipt without swhid");
    r.swhid = parse_swhid(j.at("swhid").get<std::string>());
  } else if (status == "failed") {
    r.status = ArchivalStatus::Failed;
    r.failure_reason = j.value("reason", "archival failed");
  }
  return r;
}

httplib::Client make_client(const HttpArchivalConfig& config) {
  httplib::Client client(config.base_url);
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(config.timeout).count();
  client.set_connection_timeout(secs, 0);
  client.set_read_timeout(secs, 0);
  return client;
}

}  // namespace

ArchivalReceipt HttpArchivalClient::request_archival(const ArchivalRequest& request) {
  const auto* origin = std::get_if<OriginRequest>(&request);
  if (!origin)
    throw Error(ErrorCode::UnsupportedFormat, "HTTP archival accepts origin URLs only");
  auto client = make_client(config_);
  nlohmann::json body = {{"origin_url", origin->url}};
  auto res = client.Post(config_.save_path, body.dump(), "application/json");
  if (!res) throw Error(ErrorCode::RetryableError, "archival request failed: " + httplib::to_string(res.error()));
  if (res->status >= 500 || res->status == 429)
    throw Error(ErrorCode::RetryableError, "archival service returned " + std::to_string(res->status));
  if (res->status >= 400)
    throw Error(ErrorCode::BadRequest, "archival service rejected request: " + res->body);
  return receipt_from_json(res->body);
}

ArchivalReceipt HttpArchivalClient::poll_archival(const ArchivalReceipt& receipt) {
  auto client = make_client(config_);
  auto res = client.Get(config_.status_path + "/" + text::url_encode(receipt.request_id));
  if (!res) throw Error(ErrorCode::RetryableError, "archival poll failed: " + httplib::to_string(res.error()));
  if (res->status == 404) throw Error(ErrorCode::NotFound, "unknown archival request " + receipt.request_id);
  if (res->status >= 400)
    throw Error(ErrorCode::RetryableError, "archival service returned " + std::to_string(res->status));
  return receipt_from_json(res->body);
}

}  // namespace fairsoft::swhid
