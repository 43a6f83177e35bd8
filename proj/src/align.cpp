#include "corpusmill/align.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "corpusmill/text.hpp"
#include "corpusmill/xml.hpp"

namespace corpusmill {

namespace {

const std::unordered_set<std::string>& abbreviations(std::string_view language) {
  static const std::unordered_set<std::string> kEn = {
      "mr", "mrs", "ms", "dr", "prof", "st", "vs", "etc", "no", "fig", "jr", "sr",
      "e.g", "i.e"};
  static const std::unordered_set<std::string> kFr = {
      "m", "mm", "mme", "mlle", "dr", "st", "etc", "av", "boul", "p.ex"};
  static const std::unordered_set<std::string> kEl = {
      "κ", "κκ", "κα", "δρ", "αρ", "σελ", "κλπ", "κτλ", "π.χ"};
  static const std::unordered_set<std::string> kEs = {
      "sr", "sra", "srta", "dr", "dra", "ud", "uds", "etc", "av", "p.ej"};
  static const std::unordered_set<std::string> kDe = {
      "dr", "hr", "nr", "ca", "bzw", "usw", "vgl", "z.b", "d.h", "u.a"};
  if (language == "fr") return kFr;
  if (language == "el") return kEl;
  if (language == "es") return kEs;
  if (language == "de") return kDe;
  return kEn;
}

bool is_terminator(char32_t cp) { return cp == U'.' || cp == U'!' || cp == U'?' || cp == U';'; }

}  // namespace

std::vector<std::string> split_sentences(std::string_view text, std::string_view language) {
  const auto& abbrev = abbreviations(language);
  std::u32string cps = utf8_decode(text);
  std::vector<std::string> sentences;
  std::u32string current;

  auto flush = [&] {
    std::string s = collapse_whitespace(utf8_encode(current));
    if (!s.empty()) sentences.push_back(std::move(s));
    current.clear();
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    current.push_back(cps[i]);
    if (!is_terminator(cps[i])) continue;

    // look ahead: whitespace then uppercase/digit
    std::size_t j = i + 1;
    bool saw_space = false;
    while (j < cps.size() && is_space_char(cps[j])) {
      saw_space = true;
      ++j;
    }
    if (!saw_space || j >= cps.size()) continue;
    if (!is_upper_char(cps[j]) && !is_ascii_digit(cps[j])) continue;

    if (cps[i] == U'.') {
      // token immediately before the period; internal dots are kept so
      // dotted abbreviations ("e.g.") can be listed as exceptions
      std::size_t k = i;
      std::u32string word;
      while (k > 0 && (is_word_char(cps[k - 1]) || cps[k - 1] == U'.'))
        word.insert(word.begin(), fold_char(cps[--k]));
      while (!word.empty() && word.front() == U'.') word.erase(word.begin());
      if (!word.empty() && abbrev.count(utf8_encode(word))) continue;
    }
    flush();
  }
  flush();
  return sentences;
}

std::pair<int, int> bead_shape(BeadKind kind) {
  switch (kind) {
    case BeadKind::OneOne: return {1, 1};
    case BeadKind::OneZero: return {1, 0};
    case BeadKind::ZeroOne: return {0, 1};
    case BeadKind::TwoOne: return {2, 1};
    case BeadKind::OneTwo: return {1, 2};
    case BeadKind::TwoTwo: return {2, 2};
  }
  return {0, 0};
}

std::string_view bead_name(BeadKind kind) {
  switch (kind) {
    case BeadKind::OneOne: return "1-1";
    case BeadKind::OneZero: return "1-0";
    case BeadKind::ZeroOne: return "0-1";
    case BeadKind::TwoOne: return "2-1";
    case BeadKind::OneTwo: return "1-2";
    case BeadKind::TwoTwo: return "2-2";
  }
  return "?";
}

double normal_cdf(double x) {
  // Abramowitz & Stegun 26.2.17
  const double b1 = 0.319381530, b2 = -0.356563782, b3 = 1.781477937, b4 = -1.821255978,
               b5 = 1.330274429, p = 0.2316419;
  double ax = std::fabs(x);
  double k = 1.0 / (1.0 + p * ax);
  double poly = ((((b5 * k + b4) * k + b3) * k + b2) * k + b1) * k;
  double pdf = std::exp(-0.5 * ax * ax) / std::sqrt(2.0 * M_PI);
  double cdf = 1.0 - pdf * poly;
  return x >= 0 ? cdf : 1.0 - cdf;
}

namespace {

constexpr double kMatchC = 1.0;
constexpr double kMatchS2 = 6.8;
constexpr double kMaxLengthCost = 40.0;

constexpr std::array<BeadKind, 6> kBeadOrder = {BeadKind::OneOne, BeadKind::OneZero,
                                                BeadKind::ZeroOne, BeadKind::TwoOne,
                                                BeadKind::OneTwo, BeadKind::TwoTwo};

double bead_prior(BeadKind kind) {
  switch (kind) {
    case BeadKind::OneOne: return 0.89;
    case BeadKind::OneZero: return 0.0099;
    case BeadKind::ZeroOne: return 0.0099;
    case BeadKind::TwoOne: return 0.089 / 2.0;
    case BeadKind::OneTwo: return 0.089 / 2.0;
    case BeadKind::TwoTwo: return 0.011;
  }
  return 1.0;
}

}  // namespace

double bead_cost(BeadKind kind, long len_a, long len_b) {
  double cost = -std::log(bead_prior(kind));
  double length_cost;
  if (len_a == 0 && len_b == 0) {
    length_cost = 0.0;
  } else if (len_a == 0) {
    length_cost = kMaxLengthCost;
  } else {
    double la = static_cast<double>(len_a);
    double delta = (static_cast<double>(len_b) - la * kMatchC) / std::sqrt(la * kMatchS2);
    double tail = 2.0 * (1.0 - normal_cdf(std::fabs(delta)));
    length_cost = tail > 0 ? std::min(-std::log(tail), kMaxLengthCost) : kMaxLengthCost;
  }
  return cost + length_cost;
}

std::vector<Bead> align_sentences(std::span<const std::string> sentences_a,
                                  std::span<const std::string> sentences_b) {
  const int na = static_cast<int>(sentences_a.size());
  const int nb = static_cast<int>(sentences_b.size());

  // character lengths (code points) with prefix sums
  std::vector<long> pa(na + 1, 0), pb(nb + 1, 0);
  for (int i = 0; i < na; ++i) pa[i + 1] = pa[i] + static_cast<long>(utf8_length(sentences_a[i]));
  for (int j = 0; j < nb; ++j) pb[j + 1] = pb[j] + static_cast<long>(utf8_length(sentences_b[j]));

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int stride = nb + 1;
  std::vector<double> cost(static_cast<std::size_t>(na + 1) * stride, kInf);
  std::vector<std::int8_t> back(static_cast<std::size_t>(na + 1) * stride, -1);
  cost[0] = 0.0;

  for (int i = 0; i <= na; ++i) {
    for (int j = 0; j <= nb; ++j) {
      if (i == 0 && j == 0) continue;
      double best = kInf;
      std::int8_t best_kind = -1;
      for (std::size_t k = 0; k < kBeadOrder.size(); ++k) {
        auto [da, db] = bead_shape(kBeadOrder[k]);
        if (i < da || j < db) continue;
        double prev = cost[static_cast<std::size_t>(i - da) * stride + (j - db)];
        if (prev == kInf) continue;
        double c = prev + bead_cost(kBeadOrder[k], pa[i] - pa[i - da], pb[j] - pb[j - db]);
        if (c < best) {  // strict: earlier kinds win ties
          best = c;
          best_kind = static_cast<std::int8_t>(k);
        }
      }
      cost[static_cast<std::size_t>(i) * stride + j] = best;
      back[static_cast<std::size_t>(i) * stride + j] = best_kind;
    }
  }

  std::vector<Bead> beads;
  int i = na, j = nb;
  while (i > 0 || j > 0) {
    std::int8_t k = back[static_cast<std::size_t>(i) * stride + j];
    if (k < 0) break;  // unreachable by construction
    BeadKind kind = kBeadOrder[static_cast<std::size_t>(k)];
    auto [da, db] = bead_shape(kind);
    Bead bead;
    bead.kind = kind;
    bead.cost = bead_cost(kind, pa[i] - pa[i - da], pb[j] - pb[j - db]);
    for (int a = i - da; a < i; ++a) bead.a_indices.push_back(a);
    for (int b = j - db; b < j; ++b) bead.b_indices.push_back(b);
    beads.push_back(std::move(bead));
    i -= da;
    j -= db;
  }
  std::reverse(beads.begin(), beads.end());
  return beads;
}

std::vector<std::pair<std::string, std::string>> extract_pairs(
    std::span<const Bead> beads, std::span<const std::string> sentences_a,
    std::span<const std::string> sentences_b) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const Bead& bead : beads) {
    if (bead.a_indices.empty() || bead.b_indices.empty()) continue;
    std::string a, b;
    for (int idx : bead.a_indices) {
      if (!a.empty()) a.push_back(' ');
      a += sentences_a[static_cast<std::size_t>(idx)];
    }
    for (int idx : bead.b_indices) {
      if (!b.empty()) b.push_back(' ');
      b += sentences_b[static_cast<std::size_t>(idx)];
    }
    pairs.emplace_back(std::move(a), std::move(b));
  }
  return pairs;
}

namespace {

std::string now_tmx_date() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y%m%dT%H%M%SZ", &tm);
  return buffer;
}

}  // namespace

std::string to_tmx(std::span<const std::pair<std::string, std::string>> pairs,
                   std::string_view lang_a, std::string_view lang_b,
                   const TmxMetadata& metadata) {
  std::string date = metadata.creation_date.empty() ? now_tmx_date() : metadata.creation_date;
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<tmx version=\"1.4\">\n";
  out += "  <header creationtool=\"" + xml::escape_attr(metadata.creation_tool) +
         "\" creationtoolversion=\"" + xml::escape_attr(metadata.creation_tool_version) +
         "\" datatype=\"plaintext\" segtype=\"sentence\" adminlang=\"en\" srclang=\"" +
         xml::escape_attr(lang_a) + "\" o-tmf=\"plain\" creationdate=\"" +
         xml::escape_attr(date) + "\"/>\n";
  out += "  <body>\n";
  for (const auto& [a, b] : pairs) {
    out += "    <tu>\n";
    out += "      <tuv xml:lang=\"" + xml::escape_attr(lang_a) + "\"><seg>" + xml::escape(a) +
           "</seg></tuv>\n";
    out += "      <tuv xml:lang=\"" + xml::escape_attr(lang_b) + "\"><seg>" + xml::escape(b) +
           "</seg></tuv>\n";
    out += "    </tu>\n";
  }
  out += "  </body>\n";
  out += "</tmx>\n";
  return out;
}

std::string to_tsv(std::span<const std::pair<std::string, std::string>> pairs) {
  std::string out;
  for (const auto& [a, b] : pairs) {
    out += a;
    out.push_back('\t');
    out += b;
    out.push_back('\n');
  }
  return out;
}

}  // namespace corpusmill
