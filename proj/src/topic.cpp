#include "corpusmill/topic.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_set>

#include "corpusmill/text.hpp"

namespace corpusmill {

namespace {

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

// Non-overlapping occurrences of a token sequence in a token list.
int count_occurrences(std::span<const std::string> haystack,
                      const std::vector<std::string>& needle) {
  if (needle.empty() || haystack.size() < needle.size()) return 0;
  int count = 0;
  std::size_t i = 0;
  while (i + needle.size() <= haystack.size()) {
    bool match = true;
    for (std::size_t k = 0; k < needle.size(); ++k) {
      if (haystack[i + k] != needle[k]) {
        match = false;
        break;
      }
    }
    if (match) {
      ++count;
      i += needle.size();
    } else {
      ++i;
    }
  }
  return count;
}

}  // namespace

TopicDefinition parse_topic_definition(std::string_view text, std::string_view language,
                                       double threshold) {
  if (threshold < 0)
    throw TopicError("topic threshold must be non-negative");
  TopicDefinition topic;
  topic.language = std::string(language);
  topic.threshold = threshold;
  std::unordered_set<std::string> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                         : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    auto fields = split_tabs(raw);
    // allow trailing \r on the last field
    for (auto& f : fields) f = trim(f);
    if (fields.size() != 3)
      throw TopicError("line " + std::to_string(line_no) + ": expected 3 tab-separated fields, got " +
                       std::to_string(fields.size()));
    std::string surface = case_fold(fields[0]);
    if (surface.empty())
      throw TopicError("line " + std::to_string(line_no) + ": empty term surface");

    char* end = nullptr;
    double weight = std::strtod(fields[1].c_str(), &end);
    if (end == fields[1].c_str() || *end != '\0')
      throw TopicError("line " + std::to_string(line_no) + ": weight '" + fields[1] +
                       "' is not a number");
    if (!(weight > 0))
      throw TopicError("line " + std::to_string(line_no) + ": weight must be positive");

    if (!seen.insert(surface).second)
      throw TopicError("duplicate term '" + surface + "' (line " + std::to_string(line_no) + ")");

    TopicTerm term;
    term.surface = surface;
    term.weight = weight;
    term.topic_class = fields[2];
    term.tokens = tokenize(surface);
    if (term.tokens.empty())
      throw TopicError("line " + std::to_string(line_no) + ": term has no word characters");
    topic.terms.push_back(std::move(term));
  }

  if (topic.terms.empty()) throw TopicError("topic definition contains no terms");
  return topic;
}

RelevanceScore score_document(std::span<const std::string> title,
                              std::span<const std::string> keywords,
                              std::span<const std::string> body,
                              const TopicDefinition& topic) {
  RelevanceScore score;
  const double norm = static_cast<double>(std::max<std::size_t>(1, body.size()));
  for (const auto& term : topic.terms) {
    int in_title = count_occurrences(title, term.tokens);
    int in_keywords = count_occurrences(keywords, term.tokens);
    int in_body = count_occurrences(body, term.tokens);
    if (in_title) score.matched_terms.push_back({term.surface, MatchLocation::Title, in_title});
    if (in_keywords)
      score.matched_terms.push_back({term.surface, MatchLocation::Keywords, in_keywords});
    if (in_body) score.matched_terms.push_back({term.surface, MatchLocation::Body, in_body});
    score.value += term.weight * (4.0 * in_title + 2.0 * in_keywords + 1.0 * in_body) / norm;
  }
  return score;
}

bool classify_relevant(const RelevanceScore& score, const TopicDefinition& topic) {
  return score.value > topic.threshold;
}

double score_link(std::span<const std::string> context_tokens, double source_score,
                  const TopicDefinition& topic, double alpha) {
  RelevanceScore context = score_document({}, {}, context_tokens, topic);
  return alpha * context.value + (1.0 - alpha) * source_score;
}

}  // namespace corpusmill
