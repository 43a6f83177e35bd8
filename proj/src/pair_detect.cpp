#include "corpusmill/pair_detect.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace corpusmill {

namespace {

const std::unordered_map<std::string, std::string>& long_names() {
  static const std::unordered_map<std::string, std::string> kNames = {
      {"en", "english"}, {"fr", "french"}, {"el", "greek"},
      {"es", "spanish"}, {"de", "german"}, {"it", "italian"},
      {"pt", "portuguese"}, {"nl", "dutch"}};
  return kNames;
}

// Replace every occurrence of `from` by `to`; returns all distinct
// results of replacing one occurrence, plus the all-replaced form.
void substitute(const std::string& url, const std::string& from, const std::string& to,
                std::set<std::string>& out) {
  if (from.empty()) return;
  std::vector<std::size_t> positions;
  for (std::size_t pos = url.find(from); pos != std::string::npos;
       pos = url.find(from, pos + 1))
    positions.push_back(pos);
  if (positions.empty()) return;
  for (std::size_t pos : positions) {
    std::string candidate = url;
    candidate.replace(pos, from.size(), to);
    out.insert(candidate);
  }
  if (positions.size() > 1) {
    std::string all = url;
    for (auto it = positions.rbegin(); it != positions.rend(); ++it)
      all.replace(*it, from.size(), to);
    out.insert(all);
  }
}

}  // namespace

std::vector<std::string> url_translation_candidates(std::string_view url,
                                                    std::string_view lang_a,
                                                    std::string_view lang_b) {
  std::string u(url);
  std::string a(lang_a), b(lang_b);
  std::set<std::string> out;

  // path segments: /en/ -> /fr/ (also a trailing /en at the end)
  substitute(u, "/" + a + "/", "/" + b + "/", out);
  // filename infixes: _en. -en. .en.
  substitute(u, "_" + a + ".", "_" + b + ".", out);
  substitute(u, "-" + a + ".", "-" + b + ".", out);
  substitute(u, "." + a + ".", "." + b + ".", out);
  // query values: lang=en, hl=en, locale=en, language=en
  for (const char* key : {"lang", "hl", "locale", "language"}) {
    substitute(u, std::string(key) + "=" + a, std::string(key) + "=" + b, out);
  }
  // long names as path segments or infixes
  auto la = long_names().find(a);
  auto lb = long_names().find(b);
  if (la != long_names().end() && lb != long_names().end()) {
    substitute(u, "/" + la->second + "/", "/" + lb->second + "/", out);
    substitute(u, "_" + la->second + ".", "_" + lb->second + ".", out);
    substitute(u, "-" + la->second + ".", "-" + lb->second + ".", out);
  }

  out.erase(u);  // a no-op rewrite is not a candidate
  return {out.begin(), out.end()};
}

double structure_similarity(std::span<const std::string> tag_sequence_a,
                            std::span<const std::string> tag_sequence_b) {
  const std::size_t n = tag_sequence_a.size(), m = tag_sequence_b.size();
  if (n == 0 && m == 0) return 1.0;
  if (n == 0 || m == 0) return 0.0;

  // one-row Levenshtein over tag path strings
  std::vector<std::size_t> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t prev = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t old = row[j];
      std::size_t sub = prev + (tag_sequence_a[i - 1] == tag_sequence_b[j - 1] ? 0 : 1);
      row[j] = std::min({sub, row[j - 1] + 1, row[j] + 1});
      prev = old;
    }
  }
  double dist = static_cast<double>(row[m]);
  return 1.0 - dist / static_cast<double>(std::max(n, m));
}

std::vector<DocumentPair> detect_pairs(std::span<const PoolDoc> pool, std::string_view lang_a,
                                       std::string_view lang_b, const PairParams& params) {
  std::vector<const PoolDoc*> docs_a, docs_b;
  std::unordered_map<std::string, const PoolDoc*> by_url_b, by_url_a;
  for (const PoolDoc& doc : pool) {
    if (doc.language == lang_a) {
      docs_a.push_back(&doc);
      by_url_a[doc.url] = &doc;
    } else if (doc.language == lang_b) {
      docs_b.push_back(&doc);
      by_url_b[doc.url] = &doc;
    }
  }
  if (docs_a.empty() || docs_b.empty()) return {};

  // URL evidence, from either side
  std::set<std::pair<const PoolDoc*, const PoolDoc*>> url_pairs;
  for (const PoolDoc* a : docs_a)
    for (const std::string& candidate :
         url_translation_candidates(a->url, lang_a, lang_b)) {
      auto it = by_url_b.find(candidate);
      if (it != by_url_b.end()) url_pairs.insert({a, it->second});
    }
  for (const PoolDoc* b : docs_b)
    for (const std::string& candidate :
         url_translation_candidates(b->url, lang_b, lang_a)) {
      auto it = by_url_a.find(candidate);
      if (it != by_url_a.end()) url_pairs.insert({it->second, b});
    }

  auto length_ratio = [](const PoolDoc* a, const PoolDoc* b) {
    if (a->content_chars == 0 && b->content_chars == 0) return 1.0;
    if (b->content_chars == 0) return 0.0;  // treated as "no length evidence"
    return static_cast<double>(a->content_chars) / static_cast<double>(b->content_chars);
  };

  std::vector<DocumentPair> candidates;
  for (const PoolDoc* a : docs_a) {
    for (const PoolDoc* b : docs_b) {
      double ratio = length_ratio(a, b);
      bool url_evidence = url_pairs.count({a, b}) > 0;
      bool in_band = ratio >= params.length_band_low && ratio <= params.length_band_high;
      if (!url_evidence && !in_band) continue;
      DocumentPair pair;
      pair.doc_a = a->id;
      pair.doc_b = b->id;
      pair.url_evidence = url_evidence;
      pair.structure_sim = structure_similarity(a->tag_sequence, b->tag_sequence);
      pair.length_ratio = ratio;
      double length_sim = ratio <= 0 ? 0.0 : std::min(ratio, 1.0 / ratio);
      pair.score = params.structure_weight * pair.structure_sim +
                   params.length_weight * length_sim + (url_evidence ? params.url_bonus : 0.0);
      if (pair.score > 1.0) pair.score = 1.0;
      candidates.push_back(std::move(pair));
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const DocumentPair& x, const DocumentPair& y) {
              if (x.score != y.score) return x.score > y.score;
              if (x.doc_a != y.doc_a) return x.doc_a < y.doc_a;
              return x.doc_b < y.doc_b;
            });

  std::vector<DocumentPair> matched;
  std::unordered_set<std::string> used;
  for (DocumentPair& pair : candidates) {
    if (pair.score < params.min_score) break;  // sorted, nothing below qualifies
    if (used.count(pair.doc_a) || used.count(pair.doc_b)) continue;
    used.insert(pair.doc_a);
    used.insert(pair.doc_b);
    matched.push_back(std::move(pair));
  }
  return matched;
}

}  // namespace corpusmill
