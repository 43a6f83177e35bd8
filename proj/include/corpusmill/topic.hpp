#ifndef CORPUSMILL_TOPIC_HPP
#define CORPUSMILL_TOPIC_HPP

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace corpusmill {

class TopicError : public std::runtime_error {
 public:
  explicit TopicError(const std::string& message) : std::runtime_error(message) {}
};

/// One weighted term: a single token or a space-joined phrase, already
/// case-folded.
struct TopicTerm {
  std::string surface;
  double weight = 0.0;
  std::string topic_class;
  std::vector<std::string> tokens;  // surface split by the shared tokenizer
};

struct TopicDefinition {
  std::string language;
  std::vector<TopicTerm> terms;
  double threshold = 0.0;
};

enum class MatchLocation { Title, Keywords, Body };

struct TermMatch {
  std::string surface;
  MatchLocation location;
  int count = 0;
};

struct RelevanceScore {
  double value = 0.0;
  std::vector<TermMatch> matched_terms;
};

/// Tab-separated "surface<TAB>weight<TAB>class" lines; '#' comments and
/// blank lines skipped. Surfaces are case-folded. Throws TopicError on
/// malformed lines (with the line number), duplicate surfaces, or an
/// empty definition.
TopicDefinition parse_topic_definition(std::string_view text, std::string_view language,
                                       double threshold);

/// Weighted occurrence score over the three locations, normalized by
/// body length:
///   sum over terms of weight * (4*title + 2*keywords + 1*body) / max(1, |body|)
/// Phrase terms match as contiguous token subsequences; matches of one
/// term never share tokens.
RelevanceScore score_document(std::span<const std::string> title,
                              std::span<const std::string> keywords,
                              std::span<const std::string> body,
                              const TopicDefinition& topic);

/// True iff the score strictly exceeds the topic threshold.
bool classify_relevant(const RelevanceScore& score, const TopicDefinition& topic);

inline constexpr double kDefaultLinkAlpha = 0.75;

/// Mix of local link-context evidence and the source page score:
///   alpha * score(context as body) + (1 - alpha) * source_score
double score_link(std::span<const std::string> context_tokens, double source_score,
                  const TopicDefinition& topic, double alpha = kDefaultLinkAlpha);

}  // namespace corpusmill

#endif
