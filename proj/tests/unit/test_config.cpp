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

#include <doctest.h>

#include "corpus.hpp"
#include "fairsoft/config.hpp"
#include "fairsoft/error.hpp"

using namespace fairsoft;
using namespace fairsoft::config;
namespace fs = std::filesystem;

namespace {

bool config_error(std::string_view toml, const fs::path& base = "/tmp") {
  try {
    from_toml(toml, base).validate();
  } catch (const Error& e) {
    return e.code() == ErrorCode::ConfigError;
  }
  return false;
}

}  // namespace

TEST_CASE("toml subset") {
  auto v = parse_toml(
      "# comment\n"
      "top = 1\n"
      "[a]\n"
      "s = \"x # not a comment\" # comment\n"
      "lit = 'c:\\path'\n"
      "esc = \"q\\\"\\n\"\n"
      "n = 1_000\n"
      "f = 0.25\n"
      "b = true\n"
      "[a.b]\n"
      "k = false\n");
  CHECK(std::get<double>(v.at("top")) == 1.0);
  CHECK(std::get<std::string>(v.at("a.s")) == "x # not a comment");
  CHECK(std::get<std::string>(v.at("a.lit")) == "c:\\path");
  CHECK(std::get<std::string>(v.at("a.esc")) == "q\"\n");
  CHECK(std::get<double>(v.at("a.n")) == 1000.0);
  CHECK(std::get<double>(v.at("a.f")) == 0.25);
  CHECK(std::get<bool>(v.at("a.b")) == true);
  CHECK(std::get<bool>(v.at("a.b.k")) == false);
}

TEST_CASE("toml errors") {
  for (auto bad : {"[a\nk=1", "k = \"open", "k", "k = 1\nk = 2", "= 1", "k = nope", "[]\n", "k = \"bad\\q\""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_toml(bad), Error);
  }
}

TEST_CASE("demo config loads with paths relative to the file") {
  auto dir = testing::fixtures() / "demo";
  auto c = load(dir / "config.toml");
  CHECK(c.fixture_dir.value() == dir / "oai");
  CHECK(c.gazetteer == dir / "gazetteer.tsv");
  CHECK(c.catalog.value() == dir / "catalog.tsv");
  CHECK(c.repo_metadata_dir.value() == dir / "repos");
  CHECK(c.state_dir == dir / "state");
  CHECK(c.event_log == dir / "state" / "events.jsonl");
  CHECK(c.archival_mode == ArchivalMode::Mock);
  CHECK(c.polls_until_done == 2);
  CHECK(c.listen_host == "127.0.0.1");
  CHECK(c.listen_port == 8080);
  CHECK(c.threshold == 0.75);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("validation") {
  auto gaz = (testing::fixtures() / "eval" / "gazetteer.tsv").string();
  std::string ok = "[harvest]\nbase_url = \"https://repo.example.org/oai\"\n[extract]\ngazetteer = \"" + gaz + "\"\n";
  CHECK_NOTHROW(from_toml(ok, "/").validate());
  CHECK(config_error("[harvest]\nbase_url = \"https://r.org/oai\"\n"));
  CHECK(config_error("[extract]\ngazetteer = \"" + gaz + "\"\n"));
  CHECK(config_error("[harvest]\nbase_url = \"ftp://r.org\"\n[extract]\ngazetteer = \"" + gaz + "\"\n"));
  CHECK(config_error(ok + "min_confidence = 1.5\n"));
  CHECK(config_error(ok + "[resolve]\nthreshold = -0.1\n"));
  CHECK(config_error(ok + "[archival]\nmode = \"http\"\n"));
  CHECK(config_error(ok + "[archival]\nmode = \"carrier-pigeon\"\n"));
  CHECK(config_error(ok + "[server]\nlisten = \"localhost\"\n"));
  CHECK(config_error(ok + "[server]\nlisten = \"localhost:http\"\n"));
  CHECK(config_error(ok + "[server]\nlisten = \"localhost:70000\"\n"));
  CHECK(config_error(ok + "[extract2]\nx = 1\n"));
  CHECK(config_error(ok + "version_window = 2.5\n"));
  CHECK(config_error(ok + "[resolve]\ncatalog = \"missing.tsv\"\n"));
  CHECK(config_error(ok + "[harvest]\nfixture_dir = \"nowhere\"\n"));
  CHECK(config_error(ok + "[harvest]\nbase_url = \"x\"\n"));  // duplicate key
  CHECK_FALSE(config_error(ok + "[archival]\nmode = \"http\"\nbase_url = \"http://127.0.0.1:5080\"\n"));
}

TEST_CASE("fixture configs") {
  CHECK_NOTHROW(load(testing::fixtures() / "configs" / "empty_repository.toml").validate());
  CHECK_THROWS_AS(load(testing::fixtures() / "configs" / "missing_gazetteer.toml").validate(), Error);
  CHECK_THROWS_AS(load(testing::fixtures() / "configs" / "nope.toml"), Error);
}

TEST_CASE("origin directory names") {
  CHECK(origin_dir_name("https://github.com/kermitt2/grobid") == "github.com_kermitt2_grobid");
  CHECK(origin_dir_name("https://github.com/kermitt2/grobid/") == "github.com_kermitt2_grobid");
  CHECK(origin_dir_name("http://host:8080/a b?c") == "host_8080_a_b_c");
}
