#ifndef CORPUSMILL_LANG_ID_HPP
#define CORPUSMILL_LANG_ID_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpusmill/html.hpp"

namespace corpusmill {

class LangIdError : public std::runtime_error {
 public:
  explicit LangIdError(const std::string& message) : std::runtime_error(message) {}
};

inline constexpr int kProfileSize = 400;      // top-K n-grams kept
inline constexpr int kMaxNgram = 5;           // character n-grams, n = 1..5
inline constexpr int kMinIdentifyChars = 20;  // below this, identification is Unknown

/// Rank-ordered character n-gram profile of one language.
struct LanguageProfile {
  std::string language;
  std::vector<std::u32string> ngrams;             // ngrams[rank]
  std::unordered_map<std::u32string, int> ranks;  // ngram -> rank

  std::string serialize() const;  // "lang<TAB>K" header, then "ngram<TAB>rank" lines
  static LanguageProfile deserialize(std::string_view text);
};

/// Build a profile from at least 1000 characters of text. The text is
/// case-folded and whitespace-normalized first; ties in frequency break
/// lexicographically.
LanguageProfile train_profile(std::string_view corpus, std::string_view language);

struct Identification {
  std::string language;
  long distance = 0;
};

/// Rank-order (out-of-place) classification. Absent n-grams cost K.
/// Returns nullopt (Unknown) for texts under 20 characters; ties break
/// by profile order.
std::optional<Identification> identify(std::string_view text,
                                       const std::vector<LanguageProfile>& profiles);

/// Document main language plus per-block annotation. Returns false
/// (Rejected) when the main language is not the target; otherwise blocks
/// of at least 20 characters get their own language and shorter blocks
/// inherit the main language.
bool annotate_document(ParsedDoc& doc, std::string_view target,
                       const std::vector<LanguageProfile>& profiles);

/// Load every "*.profile" file in a directory.
std::vector<LanguageProfile> load_profiles_dir(const std::string& dir);

}  // namespace corpusmill

#endif
