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

#include <string>
#include <utility>
#include <vector>

#include "fairsoft/config.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/expose.hpp"
#include "fairsoft/lifecycle.hpp"

// HTTP API independent of the server library; server.cpp only adapts.
namespace fairsoft::api {

struct Request {
  std::string method;  // "GET", "POST"
  std::string path;    // percent-decoded
  expose::QueryParams query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
  std::vector<std::pair<std::string, std::string>> headers;
};

int http_status(ErrorCode code);
// snake_case form of the error code, e.g. "invalid_token".
std::string error_code_name(ErrorCode code);
Response error_response(const Error& error);

/// Routes:
///   GET  /api/health
///   GET  /api/pending
///   GET  /api/records, /api/records/{id}
///   POST /api/records/{id}/manager-approve, /api/records/{id}/manager-reject
///   GET  /api/validate/{token}, POST /api/validate/{token}
///   GET  /api/assets/{id}/codemeta.json
///   GET  /api/papers/{id}/links
///   GET  /oai
/// Unknown paths under /api answer 404 "not_found"; everything outside /api
/// and /oai belongs to static serving (see `handles`).
class Api {
 public:
  Api(lifecycle::Engine& engine, config::PipelineConfig cfg);

  static bool handles(const std::string& path);
  Response handle(const Request& request);

  const expose::LinkService& links() const { return links_; }

 private:
  Response route(const Request& request);

  lifecycle::Engine& engine_;
  config::PipelineConfig cfg_;
  expose::LinkService links_;
};

expose::ProviderConfig provider_config(const config::PipelineConfig& cfg);
std::string public_base_url(const config::PipelineConfig& cfg);

}  // namespace fairsoft::api
