#ifndef CORPUSMILL_ALIGN_HPP
#define CORPUSMILL_ALIGN_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace corpusmill {

/// Sentence boundaries: [.!?;] followed by whitespace and an uppercase
/// letter or digit, with per-language abbreviation exceptions. Block
/// boundaries always end a sentence, so callers split per block.
std::vector<std::string> split_sentences(std::string_view text, std::string_view language);

enum class BeadKind : std::uint8_t { OneOne, OneZero, ZeroOne, TwoOne, OneTwo, TwoTwo };

/// Sentences consumed on each side, in (a, b) order.
std::pair<int, int> bead_shape(BeadKind kind);
std::string_view bead_name(BeadKind kind);

struct Bead {
  BeadKind kind;
  std::vector<int> a_indices;
  std::vector<int> b_indices;
  double cost = 0.0;
};

/// Abramowitz-Stegun polynomial approximation of the standard normal CDF.
double normal_cdf(double x);

/// Cost of one bead given the summed character lengths of its two sides:
///   -log prior(kind) - log(2 * (1 - Phi(|delta|)))
/// with delta = (lb - la*c) / sqrt(la * s^2), c = 1, s^2 = 6.8. The
/// length term is clamped so degenerate beads stay finite.
double bead_cost(BeadKind kind, long len_a, long len_b);

/// Length-based dynamic-programming sentence alignment. Deterministic:
/// cost ties prefer the bead kind listed earlier in BeadKind order.
std::vector<Bead> align_sentences(std::span<const std::string> sentences_a,
                                  std::span<const std::string> sentences_b);

/// One (a, b) segment pair per bead with both sides non-empty;
/// multi-sentence sides are joined with single spaces.
std::vector<std::pair<std::string, std::string>> extract_pairs(
    std::span<const Bead> beads, std::span<const std::string> sentences_a,
    std::span<const std::string> sentences_b);

struct TmxMetadata {
  std::string creation_tool = "corpusmill";
  std::string creation_tool_version = "0.1.0";
  std::string creation_date;  // "YYYYMMDDThhmmssZ"; filled from the clock if empty
};

/// TMX 1.4b document with one <tu> per pair.
std::string to_tmx(std::span<const std::pair<std::string, std::string>> pairs,
                   std::string_view lang_a, std::string_view lang_b,
                   const TmxMetadata& metadata = {});

/// Plain "segment_a<TAB>segment_b" lines.
std::string to_tsv(std::span<const std::pair<std::string, std::string>> pairs);

}  // namespace corpusmill

#endif
