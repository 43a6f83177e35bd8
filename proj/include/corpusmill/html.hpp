#ifndef CORPUSMILL_HTML_HPP
#define CORPUSMILL_HTML_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpusmill/topic.hpp"

namespace corpusmill {

/// One paragraph-level unit of extracted text.
struct Block {
  std::string tag_path;  // e.g. "html/body/div/p"
  std::string text;      // whitespace-collapsed
  int tokens = 0;
  int linked_tokens = 0;
  std::optional<std::string> language;
  bool is_boilerplate = false;
};

struct LinkRef {
  std::string href;  // absolute, normalized
  std::vector<std::string> anchor_tokens;
  std::vector<std::string> context_tokens;  // anchor plus window, contiguous
  int source_block_index = 0;
};

struct ParsedDoc {
  std::string url;
  std::vector<std::string> title;
  std::vector<std::string> meta_keywords;
  std::vector<Block> blocks;
  std::vector<LinkRef> links;
  std::optional<std::string> main_language;
  std::optional<RelevanceScore> relevance;
};

/// Decode raw bytes to UTF-8. Charset precedence: HTTP header, then the
/// HTML meta declaration, then heuristics (valid UTF-8, else Latin-1).
/// Invalid sequences become U+FFFD; a leading BOM is stripped. Never fails.
std::string normalize_encoding(std::string_view body,
                               std::optional<std::string> http_charset,
                               std::optional<std::string> html_meta_charset);

/// Scan raw bytes (pre-decode) for a meta charset declaration.
std::optional<std::string> sniff_meta_charset(std::string_view body);

/// Charset parameter of a Content-Type header value, if any.
std::optional<std::string> content_type_charset(std::string_view content_type);

inline constexpr int kLinkContextWindow = 5;

/// Parse (possibly malformed) HTML. Script/style/comment content is
/// dropped, block-level boundaries delimit Blocks, relative hrefs are
/// resolved against base_url, non-http(s) anchors are skipped.
ParsedDoc parse_html(std::string_view text, std::string_view base_url,
                     int context_window = kLinkContextWindow);

/// text/plain passthrough: blank-line separated blocks, no links.
ParsedDoc parse_text(std::string_view text, std::string_view url);

/// Anchor tokens plus up to `window` tokens of context on each side.
std::vector<std::string> link_context(std::span<const std::string> block_tokens,
                                      std::size_t anchor_first, std::size_t anchor_count,
                                      int window);

/// Tokens of content blocks: not boilerplate and not marked as a
/// different language than the document. This is the body token list
/// used for relevance scoring.
std::vector<std::string> content_tokens(const ParsedDoc& doc);

/// Concatenated text of non-boilerplate blocks (sentence extraction input).
std::vector<const Block*> content_blocks(const ParsedDoc& doc);

}  // namespace corpusmill

#endif
