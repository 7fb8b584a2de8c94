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

#include "fairsoft/resolve.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <regex>
#include <sstream>

#include "fairsoft/error.hpp"
#include "fairsoft/hash.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::resolve {
namespace {

constexpr double kEpsilon = 1e-12;

constexpr std::string_view kMarks[] = {"\xC2\xAE", "\xE2\x84\xA2", "\xC2\xA9"};

bool is_version_token(std::string_view t) {
  static const std::regex r(R"(v?\d+([._\-]\d+)*[a-z]?)");
  return std::regex_match(t.begin(), t.end(), r);
}

std::string normalize_url(std::string_view url) {
  auto u = text::to_lower(text::trim(url));
  for (std::string_view prefix : {"https://", "http://"})
    if (u.rfind(prefix, 0) == 0) u.erase(0, prefix.size());
  if (u.rfind("www.", 0) == 0) u.erase(0, 4);
  while (!u.empty() && u.back() == '/') u.pop_back();
  if (u.size() > 4 && u.ends_with(".git")) u.erase(u.size() - 4);
  return u;
}

std::string normalize_publisher(std::string_view p) {
  auto s = text::to_lower(text::collapse_whitespace(p));
  while (!s.empty() && (s.back() == '.' || s.back() == ',')) s.pop_back();
  return s;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller index becomes root so the structure is order independent.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<std::string> split_tsv(std::string_view line) {
  auto cells = text::split(line, '\t');
  for (auto& c : cells) c = std::string(text::trim(c));
  return cells;
}

}  // namespace

CanonicalKey normalize_name(std::string_view surface) {
  std::string s(text::trim(surface));
  if (s.empty()) throw Error(ErrorCode::NotNormalizable, "empty software name");
  for (auto mark : kMarks) {
    for (auto pos = s.find(mark); pos != std::string::npos; pos = s.find(mark)) s.replace(pos, mark.size(), " ");
  }
  s = text::to_lower(s);

  std::vector<std::string> kept;
  std::istringstream words(s);
  std::string w;
  while (words >> w) {
    // Strip surrounding punctuation, then check for a version token.
    std::size_t b = 0, e = w.size();
    auto is_punct = [](char c) { return static_cast<unsigned char>(c) < 0x80 && !text::is_alnum(c); };
    while (b < e && is_punct(w[b])) ++b;
    while (e > b && is_punct(w[e - 1])) --e;
    std::string core = w.substr(b, e - b);
    if (core.empty() || is_version_token(core)) continue;
    std::string cleaned;
    for (char c : core)
      if (!is_punct(c) || c == '-') cleaned.push_back(c);
    if (cleaned.empty() || is_version_token(cleaned)) continue;
    kept.push_back(std::move(cleaned));
  }
  auto value = text::join(kept, " ");
  if (value.empty())
    throw Error(ErrorCode::NotNormalizable, "'" + std::string(surface) + "' has no name part");
  return CanonicalKey(std::move(value));
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

double similarity(const EntityProfile& a, const EntityProfile& b, const SimilarityWeights& w) {
  const auto& ka = a.key.value();
  const auto& kb = b.key.value();
  std::size_t maxlen = std::max(ka.size(), kb.size());
  double name_sim = maxlen == 0 ? 1.0 : 1.0 - double(levenshtein(ka, kb)) / double(maxlen);

  std::set<std::string> na, nb;
  for (const auto& u : a.urls) na.insert("url:" + normalize_url(u));
  for (const auto& p : a.publishers) na.insert("pub:" + normalize_publisher(p));
  for (const auto& u : b.urls) nb.insert("url:" + normalize_url(u));
  for (const auto& p : b.publishers) nb.insert("pub:" + normalize_publisher(p));
  if (na.empty() && nb.empty()) return name_sim;

  std::size_t inter = 0;
  for (const auto& n : na) inter += nb.count(n);
  std::size_t uni = na.size() + nb.size() - inter;
  double attr_sim = double(inter) / double(uni);
  if (name_sim == 1.0 && attr_sim == 1.0) return 1.0;
  return std::clamp(w.name * name_sim + w.attributes * attr_sim, 0.0, 1.0);
}

std::optional<EntityProfile> profile_of(const extract::MentionGroup& g) {
  try {
    EntityProfile p{normalize_name(g.name.surface), {}, {}};
    if (g.url) p.urls.insert(g.url->surface);
    if (g.publisher) p.publishers.insert(g.publisher->surface);
    return p;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotNormalizable) return std::nullopt;
    throw;
  }
}

EntityProfile profile_of(const AssetCandidate& c) {
  return {normalize_name(c.canonical_name), c.urls, c.publishers};
}

EntityProfile profile_of(const CatalogEntry& e) {
  EntityProfile p{normalize_name(e.name), {e.url}, {}};
  if (e.publisher && !e.publisher->empty()) p.publishers.insert(*e.publisher);
  return p;
}

std::vector<AssetCandidate> cluster(std::span<const extract::MentionGroup> groups, const ClusterConfig& cfg) {
  struct Item {
    const extract::MentionGroup* group;
    EntityProfile profile;
  };
  std::vector<Item> items;
  for (const auto& g : groups) {
    if (auto p = profile_of(g)) items.push_back({&g, std::move(*p)});
  }
  std::sort(items.begin(), items.end(),
            [](const Item& a, const Item& b) { return a.group->group_id < b.group->group_id; });

  UnionFind uf(items.size());
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = i + 1; j < items.size(); ++j)
      if (similarity(items[i].profile, items[j].profile, cfg.weights) + kEpsilon >= cfg.threshold) uf.unite(i, j);

  std::map<std::size_t, std::vector<const Item*>> components;
  for (std::size_t i = 0; i < items.size(); ++i) components[uf.find(i)].push_back(&items[i]);

  std::vector<AssetCandidate> out;
  for (const auto& [root, members] : components) {
    AssetCandidate c;
    std::map<std::string, std::size_t> surface_counts;
    for (const auto* m : members) {
      const auto& g = *m->group;
      c.member_groups.insert(g.group_id);
      c.aliases.insert(g.name.surface);
      ++surface_counts[g.name.surface];
      if (g.url) c.urls.insert(g.url->surface);
      if (g.publisher) c.publishers.insert(g.publisher->surface);
      if (g.version) c.versions.insert(g.version->surface);
    }
    // Most frequent surface; std::map iteration order breaks ties lexicographically.
    std::size_t best = 0;
    for (const auto& [surface, n] : surface_counts) {
      if (n > best) {
        best = n;
        c.canonical_name = surface;
      }
    }
    c.candidate_id = "cand-" + hash::sha1_hex(text::join(std::vector<std::string>(c.member_groups.begin(),
                                                                                  c.member_groups.end()),
                                                         "\n"))
                                   .substr(0, 16);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const AssetCandidate& a, const AssetCandidate& b) {
    return std::tie(a.canonical_name, a.candidate_id) < std::tie(b.canonical_name, b.candidate_id);
  });
  return out;
}

Catalog Catalog::from_tsv(std::string_view tsv) {
  Catalog catalog;
  std::set<std::string> urls;
  std::size_t line_no = 0;
  bool first_row = true;
  for (auto line : text::split(tsv, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    auto cells = split_tsv(line);
    bool header = first_row && text::iequals(cells[0], "name");
    first_row = false;
    if (header) continue;
    cells.resize(std::max<std::size_t>(cells.size(), 3));
    if (cells[0].empty() || cells[1].empty())
      throw Error(ErrorCode::ConfigError, "catalog line " + std::to_string(line_no) + " needs name and url");
    if (!urls.insert(cells[1]).second)
      throw Error(ErrorCode::ConfigError, "duplicate catalog url " + cells[1]);
    CatalogEntry e{cells[0], cells[1], std::nullopt};
    if (!cells[2].empty()) e.publisher = cells[2];
    catalog.entries.push_back(std::move(e));
  }
  return catalog;
}

Catalog Catalog::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read catalog " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_tsv(buf.str());
}

std::optional<CatalogMatch> align_to_catalog(const AssetCandidate& candidate, const Catalog& catalog,
                                             double min_score, const SimilarityWeights& w) {
  auto cp = profile_of(candidate);
  std::optional<CatalogMatch> best;
  for (const auto& e : catalog.entries) {
    double s = similarity(cp, profile_of(e), w);
    if (!best || s > best->score + kEpsilon ||
        (std::abs(s - best->score) <= kEpsilon && e.url < best->entry.url))
      best = CatalogMatch{e, s};
  }
  if (!best || best->score + kEpsilon < min_score) return std::nullopt;
  return best;
}

nlohmann::ordered_json to_json(const AssetCandidate& c) {
  nlohmann::ordered_json j;
  j["candidate_id"] = c.candidate_id;
  j["canonical_name"] = c.canonical_name;
  j["aliases"] = c.aliases;
  j["urls"] = c.urls;
  j["publishers"] = c.publishers;
  j["versions"] = c.versions;
  j["member_groups"] = c.member_groups;
  if (c.catalog_match) {
    nlohmann::ordered_json m;
    m["name"] = c.catalog_match->entry.name;
    m["url"] = c.catalog_match->entry.url;
    if (c.catalog_match->entry.publisher) m["publisher"] = *c.catalog_match->entry.publisher;
    m["score"] = c.catalog_match->score;
    j["catalog_match"] = m;
  }
  return j;
}

AssetCandidate candidate_from_json(const nlohmann::json& j) {
  try {
    AssetCandidate c;
    c.candidate_id = j.at("candidate_id").get<std::string>();
    c.canonical_name = j.at("canonical_name").get<std::string>();
    c.aliases = j.value("aliases", std::set<std::string>{});
    c.urls = j.value("urls", std::set<std::string>{});
    c.publishers = j.value("publishers", std::set<std::string>{});
    c.versions = j.value("versions", std::set<std::string>{});
    c.member_groups = j.value("member_groups", std::set<std::string>{});
    if (j.contains("catalog_match")) {
      const auto& m = j.at("catalog_match");
      CatalogEntry e{m.at("name").get<std::string>(), m.at("url").get<std::string>(), std::nullopt};
      if (m.contains("publisher")) e.publisher = m.at("publisher").get<std::string>();
      c.catalog_match = CatalogMatch{e, m.value("score", 0.0)};
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad candidate: ") + e.what());
  }
}

}  // namespace fairsoft::resolve
