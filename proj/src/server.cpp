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

#include "fairsoft/server.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <httplib.h>

#include "fairsoft/text.hpp"

namespace fairsoft::server {

namespace fs = std::filesystem;

std::string content_type_for(const fs::path& p) {
  static const std::map<std::string, std::string> kTypes = {
      {".html", "text/html; charset=utf-8"}, {".js", "text/javascript"},   {".mjs", "text/javascript"},
      {".css", "text/css"},                  {".json", "application/json"}, {".svg", "image/svg+xml"},
      {".png", "image/png"},                 {".ico", "image/x-icon"},     {".map", "application/json"},
      {".txt", "text/plain; charset=utf-8"}, {".woff2", "font/woff2"},
  };
  auto it = kTypes.find(text::to_lower(p.extension().string()));
  return it == kTypes.end() ? "application/octet-stream" : it->second;
}

std::string redact_path(const std::string& path) {
  for (std::string_view prefix : {"/api/validate/", "/validate/"}) {
    if (path.rfind(prefix, 0) == 0) return std::string(prefix) + "<token>";
  }
  return path;
}

struct Server::Impl {
  std::atomic<api::Api*> api{nullptr};
  std::optional<fs::path> static_dir;
  httplib::Server http;

  explicit Impl(std::optional<fs::path> dir) : static_dir(std::move(dir)) {}

  void handle(const httplib::Request& req, httplib::Response& res) {
    if (api::Api::handles(req.path)) {
      api::Api* a = api.load();
      if (!a) {
        res.status = 503;
        res.set_content("{\"error\":{\"code\":\"starting\",\"message\":\"service starting\"}}\n",
                        "application/json");
        return;
      }
      api::Request r;
      r.method = req.method;
      r.path = req.path;
      for (const auto& [k, v] : req.params) r.query.emplace_back(k, v);
      r.body = req.body;
      api::Response out = a->handle(r);
      res.status = out.status;
      for (const auto& [k, v] : out.headers) res.set_header(k, v);
      res.set_content(out.body, out.content_type);
      return;
    }
    serve_static(req, res);
  }

  void serve_static(const httplib::Request& req, httplib::Response& res) {
    if (!static_dir || (req.method != "GET" && req.method != "HEAD")) {
      not_found(res);
      return;
    }
    fs::path rel;
    for (const auto& part : text::split(req.path, '/')) {
      if (part.empty() || part == ".") continue;
      if (part == "..") {
        not_found(res);
        return;
      }
      rel /= part;
    }
    fs::path file = *static_dir / rel;
    if (rel.empty() || fs::is_directory(file)) file /= "index.html";
    if (!fs::is_regular_file(file) && !rel.has_extension()) file = *static_dir / "index.html";
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      not_found(res);
      return;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    res.set_content(ss.str(), content_type_for(file));
  }

  static void not_found(httplib::Response& res) {
    res.status = 404;
    res.set_content("{\"error\":{\"code\":\"not_found\",\"message\":\"no such resource\"}}\n", "application/json");
  }
};

Server::Server(std::optional<fs::path> static_dir, bool access_log)
    : impl_(std::make_unique<Impl>(std::move(static_dir))) {
  auto h = [this](const httplib::Request& req, httplib::Response& res) { impl_->handle(req, res); };
  impl_->http.Get(".*", h);
  impl_->http.Post(".*", h);
  impl_->http.Put(".*", h);
  impl_->http.Delete(".*", h);
  if (access_log) {
    impl_->http.set_logger([](const httplib::Request& req, const httplib::Response& res) {
      std::cerr << req.method << " " << redact_path(req.path) << " " << res.status << "\n";
    });
  }
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->http.bind_to_any_port(host) : (impl_->http.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw Error(ErrorCode::ConfigError, "cannot listen on " + host + ":" + std::to_string(port));
  return bound;
}

void Server::set_api(api::Api& api) { impl_->api.store(&api); }

void Server::run() { impl_->http.listen_after_bind(); }

void Server::stop() {
  if (impl_) impl_->http.stop();
}

}  // namespace fairsoft::server
