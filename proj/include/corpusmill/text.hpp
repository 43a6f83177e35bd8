#ifndef CORPUSMILL_TEXT_HPP
#define CORPUSMILL_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace corpusmill {

// UTF-8 <-> code point helpers. Decoding never fails: invalid byte
// sequences come back as U+FFFD.
std::u32string utf8_decode(std::string_view text);
std::string utf8_encode(const std::u32string& cps);
void utf8_append(std::string& out, char32_t cp);

// Number of code points in a UTF-8 string.
std::size_t utf8_length(std::string_view text);

char32_t fold_char(char32_t cp);
bool is_word_char(char32_t cp);   // letter or digit
bool is_space_char(char32_t cp);
bool is_upper_char(char32_t cp);
bool is_ascii_digit(char32_t cp);

// Case-fold a UTF-8 string (ASCII, Latin-1/Ext-A and Greek ranges).
std::string case_fold(std::string_view text);

// Collapse runs of whitespace to single spaces and trim the ends.
std::string collapse_whitespace(std::string_view text);

struct TokenSpan {
  std::string text;   // case-folded token
  std::size_t begin;  // byte offset into the source string
  std::size_t end;    // one past the last byte
};

// The shared tokenizer: split on non-letter/non-digit boundaries,
// case-folded. Every module that needs tokens uses this one.
std::vector<std::string> tokenize(std::string_view text);
std::vector<TokenSpan> tokenize_spans(std::string_view text);

}  // namespace corpusmill

#endif
