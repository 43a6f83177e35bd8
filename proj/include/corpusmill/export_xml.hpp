#ifndef CORPUSMILL_EXPORT_XML_HPP
#define CORPUSMILL_EXPORT_XML_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corpusmill/html.hpp"
#include "corpusmill/pair_detect.hpp"

namespace corpusmill {

class ExportError : public std::runtime_error {
 public:
  explicit ExportError(const std::string& message) : std::runtime_error(message) {}
};

struct CrawlMeta {
  std::int64_t fetched_at = 0;          // UTC epoch seconds
  std::vector<std::string> topic_classes;  // classes of matched terms
};

/// Canonical serialization: fixed attribute order and indentation, score
/// printed with 4 decimals. Requires main_language and relevance set.
std::string write_document_xml(const ParsedDoc& doc, const CrawlMeta& meta);

struct ReadDocument {
  ParsedDoc doc;
  CrawlMeta meta;
  double score = 0.0;
};

/// Inverse of write_document_xml for the fields it serializes.
ReadDocument read_document_xml(std::string_view xml_text);

/// "YYYY-MM-DDTHH:MM:SSZ" for the document header.
std::string format_utc(std::int64_t epoch_seconds);
std::int64_t parse_utc(std::string_view text);  // throws ExportError

struct IndexRow {
  std::string file;  // relative to the output dir, e.g. docs/000001.xml
  std::string url;
  double score = 0.0;
  std::string language;
};

std::string render_index(std::span<const IndexRow> rows);
std::vector<IndexRow> parse_index(std::string_view text);

/// Pair-list XML: <pair score=".."> with two <doc lang href/> children.
/// Scores are printed with 2 decimals.
std::string write_pair_xml(const DocumentPair& pair, std::string_view lang_a,
                           std::string_view lang_b, std::string_view href_a,
                           std::string_view href_b);

struct PairFileRef {
  double score = 0.0;
  std::string lang_a, href_a;
  std::string lang_b, href_b;
};
PairFileRef read_pair_xml(std::string_view xml_text);

}  // namespace corpusmill

#endif
