#ifndef CORPUSMILL_PAIR_DETECT_HPP
#define CORPUSMILL_PAIR_DETECT_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corpusmill {

/// What pair detection needs to know about one crawled document.
struct PoolDoc {
  std::string id;        // unique; the document URL in this artifact
  std::string url;
  std::string language;
  std::vector<std::string> tag_sequence;  // Block tag_paths in order
  long content_chars = 0;                 // non-boilerplate characters
};

struct DocumentPair {
  std::string doc_a;
  std::string doc_b;
  bool url_evidence = false;
  double structure_sim = 0.0;
  double length_ratio = 0.0;  // chars A / chars B
  double score = 0.0;
};

struct PairParams {
  double min_score = 0.75;
  double length_band_low = 0.5;
  double length_band_high = 2.0;
  double structure_weight = 0.5;
  double length_weight = 0.5;
  double url_bonus = 0.1;
};

/// Rewrites of the URL's language markers (path segments, filename
/// infixes, query values, long names). Empty when no marker is found.
std::vector<std::string> url_translation_candidates(std::string_view url,
                                                    std::string_view lang_a,
                                                    std::string_view lang_b);

/// 1 - editdist(a, b) / max(|a|, |b|); 1.0 for two empty sequences.
double structure_similarity(std::span<const std::string> tag_sequence_a,
                            std::span<const std::string> tag_sequence_b);

/// Candidate pairs (URL evidence plus length-comparable cross pairs),
/// scored and greedily matched one-to-one in descending score order.
/// Deterministic: ties break by (doc_a, doc_b).
std::vector<DocumentPair> detect_pairs(std::span<const PoolDoc> pool, std::string_view lang_a,
                                       std::string_view lang_b, const PairParams& params = {});

}  // namespace corpusmill

#endif
