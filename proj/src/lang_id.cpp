#include "corpusmill/lang_id.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "corpusmill/text.hpp"

namespace corpusmill {

namespace {

// Case-fold and collapse whitespace runs to single spaces.
std::u32string prepare(std::string_view text) {
  std::u32string cps = utf8_decode(case_fold(text));
  std::u32string out;
  out.reserve(cps.size());
  bool pending = false;
  for (char32_t cp : cps) {
    if (is_space_char(cp)) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(U' ');
      pending = false;
      out.push_back(cp);
    }
  }
  return out;
}

std::unordered_map<std::u32string, long> ngram_counts(const std::u32string& text) {
  std::unordered_map<std::u32string, long> counts;
  for (int n = 1; n <= kMaxNgram; ++n) {
    if (text.size() < static_cast<std::size_t>(n)) break;
    for (std::size_t i = 0; i + n <= text.size(); ++i) ++counts[text.substr(i, n)];
  }
  return counts;
}

std::vector<std::u32string> top_ngrams(const std::unordered_map<std::u32string, long>& counts) {
  std::vector<std::pair<std::u32string, long>> items(counts.begin(), counts.end());
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (items.size() > kProfileSize) items.resize(kProfileSize);
  std::vector<std::u32string> out;
  out.reserve(items.size());
  for (auto& [gram, count] : items) out.push_back(std::move(gram));
  return out;
}

LanguageProfile from_ranked(std::string language, std::vector<std::u32string> ngrams) {
  LanguageProfile profile;
  profile.language = std::move(language);
  profile.ngrams = std::move(ngrams);
  for (std::size_t i = 0; i < profile.ngrams.size(); ++i)
    profile.ranks[profile.ngrams[i]] = static_cast<int>(i);
  return profile;
}

}  // namespace

LanguageProfile train_profile(std::string_view corpus, std::string_view language) {
  if (utf8_length(corpus) < 1000)
    throw LangIdError("training corpus for '" + std::string(language) +
                      "' is shorter than 1000 characters");
  std::u32string text = prepare(corpus);
  return from_ranked(std::string(language), top_ngrams(ngram_counts(text)));
}

std::optional<Identification> identify(std::string_view text,
                                       const std::vector<LanguageProfile>& profiles) {
  std::u32string prepared = prepare(text);
  if (prepared.size() < kMinIdentifyChars) return std::nullopt;
  std::vector<std::u32string> doc_ngrams = top_ngrams(ngram_counts(prepared));

  const LanguageProfile* best = nullptr;
  long best_distance = 0;
  for (const LanguageProfile& profile : profiles) {
    long distance = 0;
    for (std::size_t rank = 0; rank < doc_ngrams.size(); ++rank) {
      auto it = profile.ranks.find(doc_ngrams[rank]);
      if (it == profile.ranks.end()) {
        distance += kProfileSize;
      } else {
        long diff = static_cast<long>(rank) - it->second;
        distance += diff < 0 ? -diff : diff;
      }
    }
    if (!best || distance < best_distance) {
      best = &profile;
      best_distance = distance;
    }
  }
  if (!best) return std::nullopt;
  return Identification{best->language, best_distance};
}

bool annotate_document(ParsedDoc& doc, std::string_view target,
                       const std::vector<LanguageProfile>& profiles) {
  std::string all_text;
  for (const Block& block : doc.blocks) {
    if (!all_text.empty()) all_text.push_back(' ');
    all_text += block.text;
  }
  auto main = identify(all_text, profiles);
  if (!main || main->language != target) return false;
  doc.main_language = main->language;
  for (Block& block : doc.blocks) {
    auto id = identify(block.text, profiles);
    block.language = id ? id->language : main->language;
  }
  return true;
}

std::string LanguageProfile::serialize() const {
  std::string out = language + "\t" + std::to_string(kProfileSize) + "\n";
  for (std::size_t rank = 0; rank < ngrams.size(); ++rank) {
    out += utf8_encode(ngrams[rank]);
    out += "\t" + std::to_string(rank) + "\n";
  }
  return out;
}

LanguageProfile LanguageProfile::deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw LangIdError("empty profile file");
  auto tab = line.find('\t');
  if (tab == std::string::npos) throw LangIdError("profile header must be 'lang<TAB>K'");
  std::string language = line.substr(0, tab);

  std::map<int, std::u32string> by_rank;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto t = line.find('\t');
    if (t == std::string::npos) throw LangIdError("bad profile line: " + line);
    by_rank[std::stoi(line.substr(t + 1))] = utf8_decode(line.substr(0, t));
  }
  std::vector<std::u32string> ngrams;
  ngrams.reserve(by_rank.size());
  for (auto& [rank, gram] : by_rank) {
    if (rank != static_cast<int>(ngrams.size()))
      throw LangIdError("profile ranks are not contiguous");
    ngrams.push_back(std::move(gram));
  }
  return from_ranked(std::move(language), std::move(ngrams));
}

std::vector<LanguageProfile> load_profiles_dir(const std::string& dir) {
  std::vector<LanguageProfile> profiles;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".profile") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    profiles.push_back(LanguageProfile::deserialize(buffer.str()));
  }
  if (profiles.empty()) throw LangIdError("no .profile files found in " + dir);
  return profiles;
}

}  // namespace corpusmill
