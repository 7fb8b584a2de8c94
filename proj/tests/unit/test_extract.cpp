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

#include <set>

#include "corpus.hpp"
#include "fairsoft/error.hpp"
#include "fairsoft/extract.hpp"

using namespace fairsoft;
using namespace fairsoft::extract;

namespace {

Gazetteer small_gazetteer() {
  return Gazetteer::from_tsv(
      "name\taliases\tcanonical_url\tpublisher\n"
      "SPSS\tIBM SPSS Statistics|SPSS Statistics\thttps://www.ibm.com/spss\tIBM\n"
      "R\tGNU R\thttps://www.r-project.org\t\n"
      "SAS\t\t\tSAS Institute\n"
      "scikit-learn\tsklearn\t\t\n"
      "Stata\t\t\tStataCorp\n");
}

std::vector<std::pair<Component, std::string>> summary(const std::vector<SoftwareMention>& ms) {
  std::vector<std::pair<Component, std::string>> out;
  for (const auto& m : ms) out.emplace_back(m.component, m.surface);
  return out;
}

Document doc_of(const std::string& text) { return docmodel::from_plaintext(text, "d"); }

}  // namespace

TEST_CASE("gazetteer parsing and conflicts") {
  auto g = small_gazetteer();
  CHECK(g.size() == 5);
  REQUIRE(g.find("SPSS"));
  CHECK(g.find("SPSS")->aliases.count("SPSS Statistics") == 1);
  CHECK(g.find("SPSS")->publisher.value() == "IBM");
  CHECK_FALSE(g.find("R")->publisher);
  CHECK_THROWS_AS(Gazetteer::from_tsv("A\tx\nB\tx\n"), Error);
  CHECK_THROWS_AS(Gazetteer::from_tsv("\tx\n"), Error);
  Gazetteer merged;
  merged.add({"A", {"a1"}, std::nullopt, std::nullopt});
  merged.add({"A", {"a2"}, std::string("https://a.org"), std::nullopt});
  CHECK(merged.find("A")->aliases.size() == 2);
  CHECK(merged.find("A")->canonical_url.value() == "https://a.org");
}

TEST_CASE("header row after comments, case-insensitive ownership") {
  auto g = Gazetteer::from_tsv("# comment\nname\taliases\tcanonical_url\tpublisher\nExcel\t\t\tMicrosoft\n");
  CHECK(g.size() == 1);
  CHECK_FALSE(g.find("name"));
  CHECK_THROWS_AS(g.add({"excel", {}, std::nullopt, std::nullopt}), Error);
  CHECK_THROWS_AS(g.add({"Other", {"EXCEL"}, std::nullopt, std::nullopt}), Error);
  CHECK_THROWS_AS(Gazetteer::from_tsv("A\tgnu  r\nB\tGNU R\n"), Error);
}

TEST_CASE("overlapping names of different entries are both kept") {
  Gazetteer g;
  g.add({"Prism", {"GraphPad Prism"}, std::nullopt, std::nullopt});
  g.add({"NumPy", {}, std::nullopt, std::nullopt});
  auto d = doc_of("We used GraphPad Prism and NumPy.");
  CHECK(summary(extract_mentions(d, g)) ==
        std::vector<std::pair<Component, std::string>>{{Component::SoftwareName, "GraphPad Prism"},
                                                       {Component::SoftwareName, "NumPy"}});
  g.add({"Prism and NumPy", {}, std::nullopt, std::nullopt});
  auto names = summary(extract_mentions(d, g));
  REQUIRE(names.size() == 3);
  CHECK(names[0].second == "GraphPad Prism");
  CHECK(names[1].second == "Prism and NumPy");
  CHECK(names[2].second == "NumPy");
}

TEST_CASE("name, version, publisher, url in one sentence") {
  auto d = doc_of("Data were analysed with IBM SPSS Statistics 25 (IBM Corp.) from https://www.ibm.com/spss.");
  auto ms = extract_mentions(d, small_gazetteer());
  auto s = summary(ms);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == std::pair(Component::SoftwareName, std::string("IBM SPSS Statistics")));
  CHECK(s[1] == std::pair(Component::Version, std::string("25")));
  CHECK(s[2] == std::pair(Component::Publisher, std::string("IBM")));
  CHECK(s[3] == std::pair(Component::Url, std::string("https://www.ibm.com/spss")));
  CHECK(ms[0].canonical == "SPSS");
  for (const auto& m : ms) {
    CHECK(m.surface == d.slice(m.span));
    CHECK(m.confidence >= 0.0);
    CHECK(m.confidence <= 1.0);
  }
}

TEST_CASE("short all-caps names match case-sensitively") {
  auto g = small_gazetteer();
  CHECK(extract_mentions(doc_of("We ran SAS on the data."), g).size() == 1);
  CHECK(extract_mentions(doc_of("We ran sas on the data."), g).empty());
  CHECK(extract_mentions(doc_of("Analysis in r was skipped."), g).empty());
  // Longer names ignore case.
  CHECK(extract_mentions(doc_of("We used STATA for models."), g).size() == 1);
}

TEST_CASE("token boundaries") {
  auto g = small_gazetteer();
  CHECK(extract_mentions(doc_of("The Rstudio project and SASS styles."), g).empty());
  auto ms = extract_mentions(doc_of("Models used sklearn."), g);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0].surface == "sklearn");
}

TEST_CASE("versions only inside the window after a name") {
  auto g = small_gazetteer();
  ExtractConfig cfg;
  cfg.version_window = 2;
  auto ms = extract_mentions(doc_of("Stata was 17 and then after many words 18."), g, cfg);
  auto s = summary(ms);
  REQUIRE(s.size() == 2);
  CHECK(s[1] == std::pair(Component::Version, std::string("17")));
}

TEST_CASE("citation markers and urls do not produce versions") {
  auto d = doc_of("We used R [2] as described at https://www.r-project.org/4.1 for fitting.");
  for (const auto& m : extract_mentions(d, small_gazetteer())) CHECK(m.component != Component::Version);
}

TEST_CASE("min_confidence filters low-evidence names") {
  auto g = small_gazetteer();
  auto d = doc_of("Stata helped. The Stata software 17 helped more.");
  ExtractConfig strict;
  strict.min_confidence = 0.9;
  auto all = extract_mentions(d, g);
  auto kept = extract_mentions(d, g, strict);
  CHECK(all.size() == 3);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].confidence == doctest::Approx(1.0));
}

TEST_CASE("attach attributes to nearest preceding name") {
  auto d = doc_of("We compared Stata 16 and R 4.1 from https://www.r-project.org today.");
  auto ms = extract_mentions(d, small_gazetteer());
  auto groups = attach_attributes(ms, d);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].name.surface == "Stata");
  CHECK(groups[0].version->surface == "16");
  CHECK_FALSE(groups[0].url);
  CHECK(groups[1].name.surface == "R");
  CHECK(groups[1].version->surface == "4.1");
  CHECK(groups[1].url->surface == "https://www.r-project.org");
  for (const auto& g : groups) CHECK(g.sentence_index == g.name.sentence_index);
}

TEST_CASE("style classification") {
  docmodel::Reference r1{"b1", "Smith J, Doe A. A tool. 2019.", std::nullopt};
  std::vector<docmodel::Reference> refs{r1};
  CHECK(classify_style("Used X [1] here.", refs) == MentionStyle::FormalWithReference);
  CHECK(classify_style("Used X [2] here.", refs) == MentionStyle::Informal);
  CHECK(classify_style("Used X (Smith, 2019) here.", refs) == MentionStyle::FormalWithReference);
  CHECK(classify_style("Used X (Smith et al., 2019) here.", refs) == MentionStyle::FormalWithReference);
  CHECK(classify_style("Used X (Jones, 2019) here.", refs) == MentionStyle::Informal);
  CHECK(classify_style("Used X here.", refs) == MentionStyle::Informal);
}

TEST_CASE("evaluation arithmetic") {
  Counts zero;
  CHECK(zero.precision() == 0.0);
  CHECK(zero.recall() == 0.0);
  CHECK(zero.f1() == 0.0);
  Counts c{2, 1, 1};
  CHECK(c.precision() == doctest::Approx(2.0 / 3.0));
  CHECK(c.f1() == doctest::Approx(2.0 / 3.0));
  std::vector<SoftwareMention> empty;
  auto r = evaluate(empty, empty);
  CHECK(r.micro.tp + r.micro.fp + r.micro.fn == 0);
  CHECK(r.micro.f1() == 0.0);
}

TEST_CASE("evaluation requires exact spans and components") {
  SoftwareMention g;
  g.doc_id = "a";
  g.span = {0, 4};
  g.surface = "SPSS";
  auto shifted = g;
  shifted.span = {0, 3};
  auto wrong_kind = g;
  wrong_kind.component = Component::Version;
  std::vector<SoftwareMention> gold{g};
  std::vector<SoftwareMention> pred{shifted, wrong_kind};
  auto r = evaluate(pred, gold);
  CHECK(r.micro.tp == 0);
  CHECK(r.micro.fp == 2);
  CHECK(r.micro.fn == 1);
  std::vector<SoftwareMention> dup{g, g};
  auto d = evaluate(dup, gold);
  CHECK(d.micro.tp == 1);
  CHECK(d.micro.fp == 1);
}

TEST_CASE("gold jsonl round trip") {
  auto corpus = testing::load_eval_corpus();
  auto again = read_gold_jsonl(write_gold_jsonl(corpus.gold));
  REQUIRE(again.size() == corpus.gold.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].span == corpus.gold[i].span);
    CHECK(again[i].surface == corpus.gold[i].surface);
    CHECK(again[i].component == corpus.gold[i].component);
  }
}

TEST_CASE("closed-world corpus: micro F1 is exactly 1") {
  auto corpus = testing::load_eval_corpus();
  REQUIRE(corpus.docs.size() == 20);
  CHECK(corpus.gold.size() == 44);
  std::vector<SoftwareMention> predicted;
  std::size_t zero_docs = 0;
  for (const auto& d : corpus.docs) {
    auto ms = extract_mentions(d, corpus.gazetteer);
    if (ms.empty()) ++zero_docs;
    for (const auto& m : ms) CHECK(m.surface == d.slice(m.span));
    predicted.insert(predicted.end(), ms.begin(), ms.end());
  }
  CHECK(zero_docs == 5);
  auto r = evaluate(predicted, corpus.gold, corpus.doc_ids);
  CHECK(r.docs_total == 20);
  CHECK(r.docs_zero_mention == 5);
  CHECK(r.micro.fp == 0);
  CHECK(r.micro.fn == 0);
  CHECK(r.micro.f1() == 1.0);
}

TEST_CASE("fixture gold surfaces equal body slices") {
  auto corpus = testing::load_eval_corpus();
  for (const auto& g : corpus.gold) {
    auto it = std::find(corpus.doc_ids.begin(), corpus.doc_ids.end(), g.doc_id);
    REQUIRE(it != corpus.doc_ids.end());
    const auto& d = corpus.docs[static_cast<std::size_t>(it - corpus.doc_ids.begin())];
    CHECK(d.slice(g.span) == g.surface);
  }
}

TEST_CASE("json round trip of groups") {
  auto d = doc_of("We compared Stata 16 (StataCorp) at https://stata.com today.");
  auto groups = attach_attributes(extract_mentions(d, small_gazetteer()), d);
  REQUIRE(groups.size() == 1);
  auto back = group_from_json(nlohmann::json::parse(to_json(groups[0]).dump()));
  CHECK(back.group_id == groups[0].group_id);
  CHECK(back.name.surface == "Stata");
  CHECK(back.version->span == groups[0].version->span);
  CHECK(back.publisher->surface == "StataCorp");
  CHECK(back.url->surface == "https://stata.com");
  CHECK(back.style == groups[0].style);
}
