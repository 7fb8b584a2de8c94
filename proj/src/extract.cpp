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

#include "fairsoft/extract.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>
#include <tuple>

#include "fairsoft/error.hpp"
#include "fairsoft/text.hpp"

namespace fairsoft::extract {
namespace {

// Multi-byte sequences that separate words even though they are non-ASCII.
constexpr std::string_view kSeparatorSymbols[] = {"\xC2\xAE", "\xC2\xA9", "\xE2\x84\xA2",
                                                  "\xC2\xA0"};

std::size_t separator_len(std::string_view s, std::size_t i) {
  for (auto sym : kSeparatorSymbols)
    if (s.substr(i, sym.size()) == sym) return sym.size();
  return 0;
}

bool is_word_byte(std::string_view s, std::size_t i) {
  auto c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) return text::is_alnum(s[i]);
  // Continuation bytes inherit from their lead byte.
  std::size_t lead = i;
  while (lead > 0 && (static_cast<unsigned char>(s[lead]) & 0xC0) == 0x80) --lead;
  return separator_len(s, lead) == 0;
}

bool is_token_byte(std::string_view s, std::size_t i) {
  char c = s[i];
  return c == '.' || c == '-' || c == '_' || is_word_byte(s, i);
}

// Maximal runs of letters/digits/./-/_, trimmed so they start and end on a
// letter or digit.
std::vector<Span> tokenize(std::string_view s) {
  std::vector<Span> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_token_byte(s, i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && is_token_byte(s, j)) ++j;
    std::size_t b = i, e = j;
    while (b < e && !is_word_byte(s, b)) ++b;
    while (e > b && !is_word_byte(s, e - 1)) --e;
    if (b < e) tokens.push_back({b, e});
    i = j;
  }
  return tokens;
}

bool is_all_caps(std::string_view s) {
  bool letter = false;
  for (char c : s) {
    if (text::is_lower(c)) return false;
    if (text::is_upper(c)) letter = true;
  }
  return letter;
}

// Short all-caps names ("SAS", "R") only match with exact case.
bool case_sensitive(std::string_view surface) { return surface.size() <= 4 && is_all_caps(surface); }

struct Surface {
  std::string text;
  std::string canonical;
  bool exact_case;
};

// Matches `alias` at `pos`; whitespace in the alias matches any whitespace
// run. Returns the end offset or npos.
std::size_t match_at(std::string_view s, std::size_t pos, const Surface& alias) {
  std::size_t i = pos;
  std::string_view a(alias.text);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (text::is_space(a[k])) {
      while (k + 1 < a.size() && text::is_space(a[k + 1])) ++k;
      if (i >= s.size() || !text::is_space(s[i])) return std::string_view::npos;
      while (i < s.size() && text::is_space(s[i])) ++i;
      continue;
    }
    if (i >= s.size()) return std::string_view::npos;
    bool eq = alias.exact_case ? s[i] == a[k] : text::to_lower(s[i]) == text::to_lower(a[k]);
    if (!eq) return std::string_view::npos;
    ++i;
  }
  return i;
}

struct NameHit {
  Span span;  // sentence-relative
  std::string canonical;
};

const std::regex& url_regex() {
  static const std::regex r(R"(https?://[^\s<>"\]\)]+)");
  return r;
}

const std::regex& numeric_marker_regex() {
  static const std::regex r(R"(\[(\d+(?:\s*[,;\-]\s*\d+)*)\])");
  return r;
}

const std::regex& author_year_regex() {
  static const std::regex r(
      R"(\(([A-Z][A-Za-z'\-]+)(?:\s+et\s+al\.)?(?:\s+(?:and|&)\s+[A-Z][A-Za-z'\-]+)?,\s*(\d{4})[a-z]?\))");
  return r;
}

const std::regex& version_regex() {
  static const std::regex r(R"([vV]?\d+(\.\d+)*)");
  return r;
}

using SvMatch = std::match_results<std::string_view::const_iterator>;

template <typename F>
void for_each_match(std::string_view s, const std::regex& re, F&& f) {
  for (std::regex_iterator<std::string_view::const_iterator> it(s.begin(), s.end(), re), end;
       it != end; ++it) {
    f(*it);
  }
}

std::vector<Span> url_spans(std::string_view sentence) {
  std::vector<Span> out;
  for_each_match(sentence, url_regex(), [&](const SvMatch& m) {
    std::size_t b = static_cast<std::size_t>(m.position(0));
    std::size_t e = b + static_cast<std::size_t>(m.length(0));
    while (e > b && std::string_view(".,;:!?'").find(sentence[e - 1]) != std::string_view::npos) --e;
    out.push_back({b, e});
  });
  return out;
}

std::vector<Span> citation_spans(std::string_view sentence) {
  std::vector<Span> out;
  for (const auto* re : {&numeric_marker_regex(), &author_year_regex()}) {
    for_each_match(sentence, *re, [&](const SvMatch& m) {
      auto b = static_cast<std::size_t>(m.position(0));
      out.push_back({b, b + static_cast<std::size_t>(m.length(0))});
    });
  }
  return out;
}

bool overlaps_any(const Span& s, const std::vector<Span>& spans) {
  for (const auto& o : spans)
    if (s.start_byte < o.end_byte && o.start_byte < s.end_byte) return true;
  return false;
}

constexpr std::string_view kCueWords[] = {"software", "package", "tool", "program", "version", "implemented"};

bool has_cue_word(std::string_view sentence, const std::vector<Span>& tokens) {
  for (const auto& t : tokens) {
    auto w = text::to_lower(sentence.substr(t.start_byte, t.size()));
    for (auto cue : kCueWords)
      if (w == cue) return true;
  }
  return false;
}

int component_rank(Component c) { return static_cast<int>(c); }

bool mention_less(const SoftwareMention& a, const SoftwareMention& b) {
  return std::tuple(a.span.start_byte, a.span.end_byte, component_rank(a.component)) <
         std::tuple(b.span.start_byte, b.span.end_byte, component_rank(b.component));
}

class Matcher {
 public:
  explicit Matcher(const Gazetteer& gaz) {
    for (const auto& [name, entry] : gaz.entries()) {
      std::set<std::string> surfaces = entry.aliases;
      surfaces.insert(name);
      for (const auto& surface : surfaces) {
        auto toks = tokenize(surface);
        if (toks.empty()) continue;
        auto key = text::to_lower(std::string_view(surface).substr(toks[0].start_byte, toks[0].size()));
        // The alias must begin at its first token for token-start anchoring.
        std::string trimmed = surface.substr(toks[0].start_byte);
        while (!trimmed.empty() && text::is_space(trimmed.back())) trimmed.pop_back();
        by_first_token_[key].push_back({trimmed, name, case_sensitive(trimmed)});
      }
    }
  }

  std::vector<NameHit> find(std::string_view sentence, const std::vector<Span>& tokens,
                            const std::vector<Span>& masked) const {
    std::set<std::size_t> token_ends;
    for (const auto& t : tokens) token_ends.insert(t.end_byte);

    std::vector<NameHit> hits;
    for (const auto& tok : tokens) {
      auto key = text::to_lower(sentence.substr(tok.start_byte, tok.size()));
      auto it = by_first_token_.find(key);
      if (it == by_first_token_.end()) continue;
      for (const auto& alias : it->second) {
        auto end = match_at(sentence, tok.start_byte, alias);
        if (end == std::string_view::npos) continue;
        bool boundary = end == sentence.size() || token_ends.count(end) || !is_token_byte(sentence, end);
        if (!boundary) continue;
        Span span{tok.start_byte, end};
        if (overlaps_any(span, masked)) continue;
        hits.push_back({span, alias.canonical});
      }
    }
    // Longest alias per entry: drop a hit strictly inside another hit of the
    // same entry. Hits of different entries never suppress each other.
    std::vector<NameHit> maximal;
    for (const auto& h : hits) {
      bool inside = std::any_of(hits.begin(), hits.end(), [&](const NameHit& o) {
        return o.canonical == h.canonical && o.span.contains(h.span) && o.span != h.span;
      });
      if (!inside) maximal.push_back(h);
    }
    std::sort(maximal.begin(), maximal.end(), [](const NameHit& a, const NameHit& b) {
      return std::tie(a.span, a.canonical) < std::tie(b.span, b.canonical);
    });
    maximal.erase(std::unique(maximal.begin(), maximal.end(),
                              [](const NameHit& a, const NameHit& b) { return a.span == b.span; }),
                  maximal.end());
    return maximal;
  }

 private:
  std::map<std::string, std::vector<Surface>> by_first_token_;
};

std::vector<std::string> split_tsv_line(std::string_view line) {
  auto cells = text::split(line, '\t');
  for (auto& c : cells) c = std::string(text::trim(c));
  return cells;
}

// Assigns each attribute to a name index in `names` or -1.
int attachment_target(const SoftwareMention& attr, const std::vector<const SoftwareMention*>& names) {
  int preceding = -1;
  int following = -1;
  for (int i = 0; i < static_cast<int>(names.size()); ++i) {
    const auto* n = names[static_cast<std::size_t>(i)];
    if (n->span.start_byte < attr.span.start_byte) {
      if (preceding < 0 || names[static_cast<std::size_t>(preceding)]->span.start_byte < n->span.start_byte)
        preceding = i;
    } else if (following < 0 || n->span.start_byte < names[static_cast<std::size_t>(following)]->span.start_byte) {
      following = i;
    }
  }
  return preceding >= 0 ? preceding : following;
}

}  // namespace

std::string_view to_string(Component c) {
  switch (c) {
    case Component::SoftwareName: return "SoftwareName";
    case Component::Version: return "Version";
    case Component::Publisher: return "Publisher";
    case Component::Url: return "Url";
  }
  return "SoftwareName";
}

Component component_from_string(std::string_view s) {
  for (auto c : {Component::SoftwareName, Component::Version, Component::Publisher, Component::Url})
    if (to_string(c) == s) return c;
  throw Error(ErrorCode::ParseError, "unknown mention component '" + std::string(s) + "'");
}

std::string_view to_string(MentionStyle s) {
  return s == MentionStyle::Informal ? "Informal" : "FormalWithReference";
}

void Gazetteer::add(GazetteerEntry entry) {
  entry.name = std::string(text::trim(entry.name));
  if (entry.name.empty()) throw Error(ErrorCode::ConfigError, "gazetteer entry with empty name");
  std::set<std::string> surfaces;
  for (const auto& a : entry.aliases) {
    auto t = std::string(text::trim(a));
    if (!t.empty()) surfaces.insert(t);
  }
  entry.aliases = surfaces;
  surfaces.insert(entry.name);
  // Surfaces differing only in case or spacing match the same text.
  auto owner_key = [](const std::string& s) { return text::to_lower(text::collapse_whitespace(s)); };
  for (const auto& s : surfaces) {
    auto it = surface_owner_.find(owner_key(s));
    if (it != surface_owner_.end() && it->second != entry.name)
      throw Error(ErrorCode::ConfigError,
                  "gazetteer surface '" + s + "' maps to both '" + it->second + "' and '" + entry.name + "'");
  }
  for (const auto& s : surfaces) surface_owner_[owner_key(s)] = entry.name;
  auto [it, inserted] = entries_.try_emplace(entry.name, entry);
  if (!inserted) {
    it->second.aliases.insert(entry.aliases.begin(), entry.aliases.end());
    if (entry.canonical_url) it->second.canonical_url = entry.canonical_url;
    if (entry.publisher) it->second.publisher = entry.publisher;
  }
}

const GazetteerEntry* Gazetteer::find(std::string_view canonical) const {
  auto it = entries_.find(std::string(canonical));
  return it == entries_.end() ? nullptr : &it->second;
}

Gazetteer Gazetteer::from_tsv(std::string_view tsv) {
  Gazetteer gaz;
  std::size_t line_no = 0;
  bool first_row = true;
  for (auto line : text::split(tsv, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || text::trim(line).front() == '#') continue;
    auto cells = split_tsv_line(line);
    bool header = first_row && text::iequals(cells[0], "name");
    first_row = false;
    if (header) continue;
    cells.resize(std::max<std::size_t>(cells.size(), 4));
    GazetteerEntry e;
    e.name = cells[0];
    if (!cells[1].empty())
      for (const auto& a : text::split(cells[1], '|')) e.aliases.insert(a);
    if (!cells[2].empty()) e.canonical_url = cells[2];
    if (!cells[3].empty()) e.publisher = cells[3];
    gaz.add(std::move(e));
  }
  return gaz;
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read gazetteer " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_tsv(buf.str());
}

std::vector<SoftwareMention> extract_mentions(const Document& doc, const Gazetteer& gaz,
                                              const ExtractConfig& cfg) {
  Matcher matcher(gaz);
  std::vector<SoftwareMention> all;
  auto make = [&](Component c, std::size_t sentence_index, std::size_t offset, Span rel) {
    SoftwareMention m;
    m.doc_id = doc.doc_id;
    m.component = c;
    m.span = {rel.start_byte + offset, rel.end_byte + offset};
    m.surface = std::string(doc.slice(m.span));
    m.sentence_index = sentence_index;
    return m;
  };

  for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
    const auto& sspan = doc.sentences[si];
    auto sentence = doc.slice(sspan);
    auto tokens = tokenize(sentence);
    auto urls = url_spans(sentence);
    auto names = matcher.find(sentence, tokens, urls);
    if (names.empty()) continue;

    std::vector<SoftwareMention> local;
    for (const auto& n : names) {
      auto m = make(Component::SoftwareName, si, sspan.start_byte, n.span);
      m.canonical = n.canonical;
      local.push_back(std::move(m));
    }

    std::vector<Span> blocked = urls;
    auto cites = citation_spans(sentence);
    blocked.insert(blocked.end(), cites.begin(), cites.end());
    for (const auto& n : names) blocked.push_back(n.span);

    std::set<std::size_t> version_tokens;
    for (const auto& n : names) {
      // Last token that starts inside the name.
      std::size_t last = 0;
      bool found = false;
      for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (tokens[k].start_byte < n.span.end_byte) {
          last = k;
          found = true;
        }
      }
      if (!found) continue;
      for (std::size_t k = last + 1; k < tokens.size() && k <= last + cfg.version_window; ++k) {
        auto tok = tokens[k];
        if (overlaps_any(tok, blocked)) continue;
        auto surface = sentence.substr(tok.start_byte, tok.size());
        if (std::regex_match(surface.begin(), surface.end(), version_regex())) version_tokens.insert(k);
      }
    }
    for (auto k : version_tokens) local.push_back(make(Component::Version, si, sspan.start_byte, tokens[k]));

    for (const auto& u : urls) local.push_back(make(Component::Url, si, sspan.start_byte, u));

    std::set<std::pair<std::size_t, std::size_t>> publisher_spans;
    for (const auto& n : names) {
      const auto* entry = gaz.find(n.canonical);
      if (!entry || !entry->publisher || entry->publisher->empty()) continue;
      const auto& pub = *entry->publisher;
      for (auto pos = sentence.find(pub); pos != std::string_view::npos; pos = sentence.find(pub, pos + 1)) {
        std::size_t end = pos + pub.size();
        if (pos > 0 && is_word_byte(sentence, pos - 1)) continue;
        if (end < sentence.size() && is_word_byte(sentence, end)) continue;
        Span s{pos, end};
        if (overlaps_any(s, urls)) continue;
        bool hits_name = std::any_of(names.begin(), names.end(), [&](const NameHit& h) {
          return s.start_byte < h.span.end_byte && h.span.start_byte < s.end_byte;
        });
        if (hits_name) continue;
        publisher_spans.insert({pos, end});
      }
    }
    for (auto [b, e] : publisher_spans) local.push_back(make(Component::Publisher, si, sspan.start_byte, {b, e}));

    // Confidence: 0.6 base, +0.2 cue word, +0.2 when an attribute attaches.
    std::vector<const SoftwareMention*> name_ptrs;
    for (const auto& m : local)
      if (m.component == Component::SoftwareName) name_ptrs.push_back(&m);
    std::vector<bool> has_link(name_ptrs.size(), false);
    std::vector<int> owner(local.size(), -1);
    for (std::size_t i = 0; i < local.size(); ++i) {
      const auto& m = local[i];
      if (m.component == Component::SoftwareName) continue;
      int t = attachment_target(m, name_ptrs);
      owner[i] = t;
      if (t >= 0 && (m.component == Component::Version || m.component == Component::Url))
        has_link[static_cast<std::size_t>(t)] = true;
    }
    int cue = has_cue_word(sentence, tokens) ? 2 : 0;
    std::vector<double> conf(name_ptrs.size());
    for (std::size_t i = 0; i < name_ptrs.size(); ++i)
      conf[i] = std::min(10, 6 + cue + (has_link[i] ? 2 : 0)) / 10.0;

    std::size_t name_index = 0;
    for (std::size_t i = 0; i < local.size(); ++i) {
      auto& m = local[i];
      if (m.component == Component::SoftwareName) {
        m.confidence = conf[name_index++];
      } else {
        if (owner[i] < 0) continue;
        m.confidence = conf[static_cast<std::size_t>(owner[i])];
      }
      if (m.confidence + 1e-12 < cfg.min_confidence) continue;
      all.push_back(std::move(m));
    }
  }

  std::stable_sort(all.begin(), all.end(), mention_less);
  for (std::size_t i = 0; i < all.size(); ++i) all[i].mention_id = doc.doc_id + "#m" + std::to_string(i);
  return all;
}

std::vector<MentionGroup> attach_attributes(std::span<const SoftwareMention> mentions, const Document& doc) {
  std::map<std::size_t, std::vector<const SoftwareMention*>> by_sentence;
  for (const auto& m : mentions) by_sentence[m.sentence_index].push_back(&m);

  std::vector<MentionGroup> groups;
  for (auto& [si, ms] : by_sentence) {
    std::sort(ms.begin(), ms.end(), [](const SoftwareMention* a, const SoftwareMention* b) { return mention_less(*a, *b); });
    std::vector<const SoftwareMention*> names;
    for (const auto* m : ms)
      if (m->component == Component::SoftwareName) names.push_back(m);
    if (names.empty()) continue;
    std::vector<MentionGroup> local(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      local[i].doc_id = names[i]->doc_id;
      local[i].sentence_index = si;
      local[i].name = *names[i];
    }
    for (const auto* m : ms) {
      if (m->component == Component::SoftwareName) continue;
      int t = attachment_target(*m, names);
      if (t < 0) continue;
      auto& g = local[static_cast<std::size_t>(t)];
      auto& slot = m->component == Component::Version ? g.version
                   : m->component == Component::Publisher ? g.publisher
                                                          : g.url;
      if (!slot) slot = *m;
    }
    for (auto& g : local) groups.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < groups.size(); ++i) {
    groups[i].group_id = (groups[i].doc_id.empty() ? doc.doc_id : groups[i].doc_id) + "#g" + std::to_string(i);
    groups[i].style = classify_style(groups[i], doc);
  }
  return groups;
}

MentionStyle classify_style(std::string_view sentence, std::span<const docmodel::Reference> references) {
  bool formal = false;
  for_each_match(sentence, numeric_marker_regex(), [&](const SvMatch& m) {
    std::string inner = m.str(1);
    std::replace_if(inner.begin(), inner.end(), [](char c) { return !text::is_digit(c); }, ' ');
    std::istringstream in(inner);
    std::size_t n = 0;
    while (in >> n)
      if (n >= 1 && n <= references.size()) formal = true;
  });
  if (formal) return MentionStyle::FormalWithReference;
  for_each_match(sentence, author_year_regex(), [&](const SvMatch& m) {
    auto author = m.str(1);
    auto year = m.str(2);
    for (const auto& r : references)
      if (r.raw_text.find(author) != std::string::npos && r.raw_text.find(year) != std::string::npos)
        formal = true;
  });
  return formal ? MentionStyle::FormalWithReference : MentionStyle::Informal;
}

MentionStyle classify_style(const MentionGroup& group, const Document& doc) {
  if (group.sentence_index >= doc.sentences.size()) return MentionStyle::Informal;
  return classify_style(doc.slice(doc.sentences[group.sentence_index]), doc.references);
}

double Counts::precision() const { return tp + fp == 0 ? 0.0 : double(tp) / double(tp + fp); }
double Counts::recall() const { return tp + fn == 0 ? 0.0 : double(tp) / double(tp + fn); }
double Counts::f1() const {
  double p = precision(), r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

EvaluationReport evaluate(std::span<const SoftwareMention> predicted, std::span<const SoftwareMention> gold,
                          std::span<const std::string> doc_ids) {
  using Key = std::tuple<std::string, int, std::size_t, std::size_t>;
  auto key = [](const SoftwareMention& m) {
    return Key{m.doc_id, component_rank(m.component), m.span.start_byte, m.span.end_byte};
  };
  std::map<Key, std::size_t> remaining;
  for (const auto& g : gold) ++remaining[key(g)];

  EvaluationReport report;
  for (auto c : {Component::SoftwareName, Component::Version, Component::Publisher, Component::Url})
    report.per_component[c] = {};
  for (const auto& p : predicted) {
    auto& counts = report.per_component[p.component];
    auto it = remaining.find(key(p));
    if (it != remaining.end() && it->second > 0) {
      --it->second;
      ++counts.tp;
    } else {
      ++counts.fp;
    }
  }
  for (const auto& [k, n] : remaining) {
    auto c = static_cast<Component>(std::get<1>(k));
    report.per_component[c].fn += n;
  }
  for (const auto& [c, counts] : report.per_component) {
    report.micro.tp += counts.tp;
    report.micro.fp += counts.fp;
    report.micro.fn += counts.fn;
  }

  std::set<std::string> docs(doc_ids.begin(), doc_ids.end());
  std::set<std::string> with_gold;
  for (const auto& g : gold) {
    docs.insert(g.doc_id);
    with_gold.insert(g.doc_id);
  }
  for (const auto& p : predicted) docs.insert(p.doc_id);
  report.docs_total = docs.size();
  report.docs_zero_mention = docs.size() - with_gold.size();
  return report;
}

nlohmann::ordered_json to_json(const SoftwareMention& m) {
  nlohmann::ordered_json j;
  j["mention_id"] = m.mention_id;
  j["doc_id"] = m.doc_id;
  j["component"] = to_string(m.component);
  j["start_byte"] = m.span.start_byte;
  j["end_byte"] = m.span.end_byte;
  j["surface"] = m.surface;
  j["sentence_index"] = m.sentence_index;
  j["confidence"] = m.confidence;
  if (!m.canonical.empty()) j["canonical"] = m.canonical;
  return j;
}

SoftwareMention mention_from_json(const nlohmann::json& j) {
  try {
    SoftwareMention m;
    m.mention_id = j.value("mention_id", "");
    m.doc_id = j.at("doc_id").get<std::string>();
    m.component = component_from_string(j.at("component").get<std::string>());
    m.span = {j.at("start_byte").get<std::size_t>(), j.at("end_byte").get<std::size_t>()};
    m.surface = j.value("surface", "");
    m.sentence_index = j.value("sentence_index", std::size_t{0});
    m.confidence = j.value("confidence", 1.0);
    m.canonical = j.value("canonical", "");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad mention object: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const MentionGroup& g) {
  nlohmann::ordered_json j;
  j["group_id"] = g.group_id;
  j["doc_id"] = g.doc_id;
  j["sentence_index"] = g.sentence_index;
  j["style"] = to_string(g.style);
  j["name"] = to_json(g.name);
  if (g.version) j["version"] = to_json(*g.version);
  if (g.publisher) j["publisher"] = to_json(*g.publisher);
  if (g.url) j["url"] = to_json(*g.url);
  return j;
}

MentionGroup group_from_json(const nlohmann::json& j) {
  try {
    MentionGroup g;
    g.group_id = j.at("group_id").get<std::string>();
    g.doc_id = j.at("doc_id").get<std::string>();
    g.sentence_index = j.value("sentence_index", std::size_t{0});
    g.style = j.value("style", "Informal") == "FormalWithReference" ? MentionStyle::FormalWithReference
                                                                     : MentionStyle::Informal;
    g.name = mention_from_json(j.at("name"));
    if (j.contains("version")) g.version = mention_from_json(j.at("version"));
    if (j.contains("publisher")) g.publisher = mention_from_json(j.at("publisher"));
    if (j.contains("url")) g.url = mention_from_json(j.at("url"));
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad mention group: ") + e.what());
  }
}

nlohmann::ordered_json to_json(const EvaluationReport& r) {
  auto counts = [](const Counts& c) {
    nlohmann::ordered_json j;
    j["tp"] = c.tp;
    j["fp"] = c.fp;
    j["fn"] = c.fn;
    j["precision"] = c.precision();
    j["recall"] = c.recall();
    j["f1"] = c.f1();
    return j;
  };
  nlohmann::ordered_json j;
  j["docs_total"] = r.docs_total;
  j["docs_zero_mention"] = r.docs_zero_mention;
  j["micro"] = counts(r.micro);
  nlohmann::ordered_json per;
  for (const auto& [c, v] : r.per_component) per[std::string(to_string(c))] = counts(v);
  j["per_component"] = per;
  return j;
}

std::vector<SoftwareMention> read_gold_jsonl(std::string_view jsonl) {
  std::vector<SoftwareMention> out;
  for (const auto& line : text::split(jsonl, '\n')) {
    if (text::trim(line).empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::ParseError, "bad gold line: " + line);
    out.push_back(mention_from_json(j));
  }
  return out;
}

std::string write_gold_jsonl(std::span<const SoftwareMention> mentions) {
  std::string out;
  for (const auto& m : mentions) {
    nlohmann::ordered_json j;
    j["doc_id"] = m.doc_id;
    j["component"] = to_string(m.component);
    j["start_byte"] = m.span.start_byte;
    j["end_byte"] = m.span.end_byte;
    j["surface"] = m.surface;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace fairsoft::extract
