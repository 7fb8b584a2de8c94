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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "fairsoft/api.hpp"

namespace fairsoft::server {

// Media type for a static file, by extension.
std::string content_type_for(const std::filesystem::path& p);

// Access-log form of a request path: validation tokens are replaced by "<token>".
std::string redact_path(const std::string& path);

/// HTTP front end: API routes plus static dashboard assets. Unknown
/// extension-less paths fall back to index.html so client-side routes such as
/// /validate/<token> load the dashboard.
class Server {
 public:
  explicit Server(std::optional<std::filesystem::path> static_dir, bool access_log = true);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Returns the bound port; port 0 picks a free one. Throws ConfigError.
  int bind(const std::string& host, int port);
  // Must be set before run(); API requests answer 503 until then.
  void set_api(api::Api& api);
  // Blocks until stop().
  void run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fairsoft::server
