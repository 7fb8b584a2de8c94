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

#include <httplib.h>

#include "fairsoft/error.hpp"
#include "fairsoft/harvest.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::harvest {

HttpResponse HttplibFetcher::get(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::TransportError, "not a URL: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  std::string origin = url.substr(0, path_start);
  std::string target = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_follow_location(true);
  auto res = client.Get(target);
  if (!res)
    throw Error(ErrorCode::TransportError, "GET " + url + " failed: " + httplib::to_string(res.error()));
  HttpResponse out;
  out.status = res->status;
  auto type = res->get_header_value("Content-Type");
  out.content_type = std::string(text::trim(type.substr(0, type.find(';'))));
  out.body = std::move(res->body);
  return out;
}

}  // namespace fairsoft::harvest
