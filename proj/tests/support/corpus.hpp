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

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fairsoft/docmodel.hpp"
#include "fairsoft/extract.hpp"

namespace fairsoft::testing {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path fixtures() { return FAIRSOFT_FIXTURES_DIR; }

struct EvalCorpus {
  std::vector<docmodel::Document> docs;
  std::vector<std::string> doc_ids;
  std::vector<extract::SoftwareMention> gold;
  extract::Gazetteer gazetteer;
};

// The bundled 20-document evaluation corpus.
inline EvalCorpus load_eval_corpus() {
  auto root = fixtures() / "eval";
  EvalCorpus c;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(root / "docs")) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    auto media = p.extension() == ".xml" ? "application/tei+xml" : "text/plain";
    c.docs.push_back(docmodel::parse_fulltext(slurp(p), media, p.stem().string()));
    c.doc_ids.push_back(p.stem().string());
  }
  c.gold = extract::read_gold_jsonl(slurp(root / "gold.jsonl"));
  c.gazetteer = extract::Gazetteer::load(root / "gazetteer.tsv");
  return c;
}

}  // namespace fairsoft::testing
