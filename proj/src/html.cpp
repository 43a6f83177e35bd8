#include "corpusmill/html.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "corpusmill/text.hpp"
#include "corpusmill/url.hpp"

namespace corpusmill {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 0x20;
  return out;
}

std::string canonical_charset(std::string_view name) {
  std::string c = lower_ascii(name);
  std::erase_if(c, [](char ch) { return ch == ' ' || ch == '"' || ch == '\''; });
  return c;
}

bool is_utf8_name(const std::string& c) { return c == "utf-8" || c == "utf8"; }
bool is_latin1_name(const std::string& c) {
  return c == "iso-8859-1" || c == "iso8859-1" || c == "latin-1" || c == "latin1" ||
         c == "us-ascii" || c == "ascii";
}
bool is_cp1252_name(const std::string& c) {
  return c == "windows-1252" || c == "cp1252" || c == "cp-1252";
}

// windows-1252 0x80..0x9F to Unicode; 0 means unmapped (becomes U+FFFD).
constexpr std::array<char32_t, 32> kCp1252High = {
    0x20AC, 0,      0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021,
    0x02C6, 0x2030, 0x0160, 0x2039, 0x0152, 0,      0x017D, 0,
    0,      0x2018, 0x2019, 0x201C, 0x201D, 0x2022, 0x2013, 0x2014,
    0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0,      0x017E, 0x0178};

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    int len;
    char32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (int k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    static const char32_t min_for_len[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < min_for_len[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
  }
  return true;
}

std::string decode_utf8_lossy(std::string_view s) {
  return utf8_encode(utf8_decode(s));
}

std::string decode_single_byte(std::string_view s, bool cp1252) {
  std::string out;
  out.reserve(s.size() * 2);
  for (char raw : s) {
    unsigned char c = static_cast<unsigned char>(raw);
    if (cp1252 && c >= 0x80 && c <= 0x9F) {
      char32_t cp = kCp1252High[c - 0x80];
      utf8_append(out, cp ? cp : 0xFFFD);
    } else {
      utf8_append(out, c);
    }
  }
  return out;
}

// ---- HTML parsing ------------------------------------------------------

const std::unordered_set<std::string>& block_elements() {
  static const std::unordered_set<std::string> kBlocks = {
      "p",       "div",     "li",      "ul",     "ol",    "h1",   "h2",     "h3",
      "h4",      "h5",      "h6",      "td",     "th",    "tr",   "table",  "thead",
      "tbody",   "blockquote", "pre",  "section", "article", "aside", "header", "footer",
      "nav",     "main",    "form",    "dl",     "dt",    "dd",   "figure", "figcaption",
      "address", "center",  "body",    "html",   "head",  "hr"};
  return kBlocks;
}

const std::unordered_set<std::string>& void_elements() {
  static const std::unordered_set<std::string> kVoid = {
      "br", "img", "meta", "link", "input", "hr", "area", "base", "col", "embed",
      "source", "track", "wbr", "param"};
  return kVoid;
}

const std::unordered_map<std::string, char32_t>& named_entities() {
  static const std::unordered_map<std::string, char32_t> kEntities = {
      {"lt", '<'},      {"gt", '>'},      {"amp", '&'},     {"quot", '"'},
      {"apos", '\''},   {"nbsp", 0xA0},   {"copy", 0xA9},   {"reg", 0xAE},
      {"laquo", 0xAB},  {"raquo", 0xBB},  {"eacute", 0xE9}, {"egrave", 0xE8},
      {"ecirc", 0xEA},  {"agrave", 0xE0}, {"acirc", 0xE2},  {"ccedil", 0xE7},
      {"ocirc", 0xF4},  {"ouml", 0xF6},   {"uuml", 0xFC},   {"auml", 0xE4},
      {"iuml", 0xEF},   {"ugrave", 0xF9}, {"szlig", 0xDF},  {"ntilde", 0xF1},
      {"iacute", 0xED}, {"oacute", 0xF3}, {"uacute", 0xFA}, {"aacute", 0xE1},
      {"hellip", 0x2026}, {"mdash", 0x2014}, {"ndash", 0x2013}, {"rsquo", 0x2019},
      {"lsquo", 0x2018},  {"rdquo", 0x201D}, {"ldquo", 0x201C}, {"middot", 0xB7},
      {"bull", 0x2022},   {"deg", 0xB0},     {"euro", 0x20AC}};
  return kEntities;
}

std::string decode_html_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out.push_back(raw[i++]);
      continue;
    }
    auto semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(raw[i++]);
      continue;
    }
    std::string_view name = raw.substr(i + 1, semi - i - 1);
    if (!name.empty() && name[0] == '#') {
      char32_t cp = 0;
      bool ok = name.size() > 1;
      if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
        for (std::size_t k = 2; k < name.size() && ok; ++k) {
          char c = name[k];
          int d = c >= '0' && c <= '9'   ? c - '0'
                  : c >= 'a' && c <= 'f' ? c - 'a' + 10
                  : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                         : -1;
          if (d < 0) ok = false;
          else cp = cp * 16 + static_cast<char32_t>(d);
        }
      } else {
        for (std::size_t k = 1; k < name.size() && ok; ++k) {
          if (name[k] < '0' || name[k] > '9') ok = false;
          else cp = cp * 10 + static_cast<char32_t>(name[k] - '0');
        }
      }
      if (ok && cp) {
        utf8_append(out, cp);
        i = semi + 1;
        continue;
      }
    } else {
      auto it = named_entities().find(std::string(name));
      if (it != named_entities().end()) {
        utf8_append(out, it->second);
        i = semi + 1;
        continue;
      }
    }
    out.push_back(raw[i++]);  // not a recognized entity, keep literal '&'
  }
  return out;
}

struct Tag {
  std::string name;  // lowercase
  bool closing = false;
  bool self_closing = false;
  std::vector<std::pair<std::string, std::string>> attrs;

  std::optional<std::string> attr(std::string_view key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return v;
    return std::nullopt;
  }
};

struct AnchorSpan {
  std::size_t block_ordinal;  // which block (by flush order) it lives in
  std::size_t begin;          // byte offsets into the flushed block text
  std::size_t end;
  std::optional<std::string> href;  // normalized; nullopt for non-crawlable schemes
};

class HtmlParser {
 public:
  HtmlParser(std::string_view input, std::string_view base_url, int window)
      : in_(input), base_(base_url), window_(window) {
    doc_.url = std::string(base_url);
  }

  ParsedDoc run() {
    while (pos_ < in_.size()) {
      if (in_[pos_] == '<') {
        handle_markup();
      } else {
        std::size_t start = pos_;
        while (pos_ < in_.size() && in_[pos_] != '<') ++pos_;
        append_text(in_.substr(start, pos_ - start));
      }
    }
    flush_block();
    finalize_links();
    return std::move(doc_);
  }

 private:
  void handle_markup() {
    if (in_.compare(pos_, 4, "<!--") == 0) {
      auto end = in_.find("-->", pos_ + 4);
      pos_ = end == std::string_view::npos ? in_.size() : end + 3;
      return;
    }
    if (pos_ + 1 < in_.size() && (in_[pos_ + 1] == '!' || in_[pos_ + 1] == '?')) {
      auto end = in_.find('>', pos_);
      pos_ = end == std::string_view::npos ? in_.size() : end + 1;
      return;
    }
    Tag tag;
    if (!parse_tag(tag)) {  // stray '<': treat as text
      append_text("<");
      ++pos_;
      return;
    }
    if (tag.closing) {
      handle_close(tag);
    } else {
      handle_open(tag);
    }
  }

  bool parse_tag(Tag& tag) {
    std::size_t p = pos_ + 1;
    if (p < in_.size() && in_[p] == '/') {
      tag.closing = true;
      ++p;
    }
    std::size_t name_start = p;
    while (p < in_.size() && (std::isalnum(static_cast<unsigned char>(in_[p])) || in_[p] == '-'))
      ++p;
    if (p == name_start) return false;
    tag.name = lower_ascii(in_.substr(name_start, p - name_start));
    // attributes
    while (p < in_.size() && in_[p] != '>') {
      if (in_[p] == '/' && p + 1 < in_.size() && in_[p + 1] == '>') {
        tag.self_closing = true;
        ++p;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(in_[p]))) {
        ++p;
        continue;
      }
      std::size_t key_start = p;
      while (p < in_.size() && in_[p] != '=' && in_[p] != '>' && in_[p] != '/' &&
             !std::isspace(static_cast<unsigned char>(in_[p])))
        ++p;
      std::string key = lower_ascii(in_.substr(key_start, p - key_start));
      std::string value;
      while (p < in_.size() && std::isspace(static_cast<unsigned char>(in_[p]))) ++p;
      if (p < in_.size() && in_[p] == '=') {
        ++p;
        while (p < in_.size() && std::isspace(static_cast<unsigned char>(in_[p]))) ++p;
        if (p < in_.size() && (in_[p] == '"' || in_[p] == '\'')) {
          char quote = in_[p++];
          std::size_t val_start = p;
          while (p < in_.size() && in_[p] != quote) ++p;
          value = decode_html_entities(in_.substr(val_start, p - val_start));
          if (p < in_.size()) ++p;
        } else {
          std::size_t val_start = p;
          while (p < in_.size() && in_[p] != '>' &&
                 !std::isspace(static_cast<unsigned char>(in_[p])))
            ++p;
          value = decode_html_entities(in_.substr(val_start, p - val_start));
        }
      }
      if (!key.empty()) tag.attrs.emplace_back(std::move(key), std::move(value));
    }
    pos_ = p < in_.size() ? p + 1 : in_.size();
    return true;
  }

  void handle_open(const Tag& tag) {
    if (tag.name == "script" || tag.name == "style") {
      skip_raw_text(tag.name);
      return;
    }
    if (tag.name == "title") {
      capture_title();
      return;
    }
    if (tag.name == "meta") {
      auto name = tag.attr("name");
      auto content = tag.attr("content");  // attribute values are already entity-decoded
      if (name && lower_ascii(*name) == "keywords" && content)
        doc_.meta_keywords = tokenize(*content);
      return;
    }
    if (tag.name == "br") {
      ++br_run_;
      if (br_run_ >= 2) flush_block();  // a run of <br> acts as a block break
      else pending_space_ = true;
      return;
    }
    br_run_ = 0;
    if (tag.name == "a") {
      open_anchor(tag);
      return;
    }
    if (void_elements().count(tag.name)) return;
    if (block_elements().count(tag.name)) {
      flush_block();
      // a repeated <p>/<li>/<td>/<tr> implicitly closes the previous one
      if (!stack_.empty() && stack_.back() == tag.name &&
          (tag.name == "p" || tag.name == "li" || tag.name == "td" || tag.name == "tr" ||
           tag.name == "dt" || tag.name == "dd"))
        stack_.pop_back();
      if (!tag.self_closing) stack_.push_back(tag.name);
      return;
    }
    // inline element: no structural effect
  }

  void handle_close(const Tag& tag) {
    br_run_ = 0;
    if (tag.name == "a") {
      close_anchor();
      return;
    }
    if (block_elements().count(tag.name)) {
      flush_block();
      // unwind to the matching open tag if present
      for (std::size_t i = stack_.size(); i-- > 0;) {
        if (stack_[i] == tag.name) {
          stack_.resize(i);
          break;
        }
      }
    }
  }

  void skip_raw_text(const std::string& name) {
    std::string needle = "</" + name;
    std::string lowered = lower_ascii(in_.substr(pos_, in_.size() - pos_));
    auto end = lowered.find(needle);
    if (end == std::string::npos) {
      pos_ = in_.size();
      return;
    }
    pos_ += end;
    auto gt = in_.find('>', pos_);
    pos_ = gt == std::string_view::npos ? in_.size() : gt + 1;
  }

  void capture_title() {
    std::string lowered = lower_ascii(in_.substr(pos_, in_.size() - pos_));
    auto end = lowered.find("</title");
    std::string_view raw;
    if (end == std::string::npos) {
      raw = in_.substr(pos_);
      pos_ = in_.size();
    } else {
      raw = in_.substr(pos_, end);
      pos_ += end;
      auto gt = in_.find('>', pos_);
      pos_ = gt == std::string_view::npos ? in_.size() : gt + 1;
    }
    doc_.title = tokenize(decode_html_entities(raw));
  }

  void append_text(std::string_view raw) {
    std::string decoded = decode_html_entities(raw);
    std::u32string cps = utf8_decode(decoded);
    bool all_space = std::all_of(cps.begin(), cps.end(), is_space_char);
    if (all_space) {
      if (!block_text_.empty()) pending_space_ = true;
      return;
    }
    br_run_ = 0;
    if (block_text_.empty()) capture_path();
    for (char32_t cp : cps) {
      if (is_space_char(cp)) {
        pending_space_ = !block_text_.empty();
      } else {
        if (pending_space_) block_text_.push_back(' ');
        pending_space_ = false;
        utf8_append(block_text_, cp);
      }
    }
  }

  void capture_path() {
    block_path_.clear();
    for (std::size_t i = 0; i < stack_.size(); ++i) {
      if (i) block_path_ += "/";
      block_path_ += stack_[i];
    }
  }

  void open_anchor(const Tag& tag) {
    close_anchor();  // nested anchors are malformed; close the previous
    AnchorSpan span;
    span.block_ordinal = doc_.blocks.size();
    if (block_text_.empty()) capture_path();
    if (pending_space_) {  // materialize the pending separator now
      block_text_.push_back(' ');
      pending_space_ = false;
    }
    span.begin = block_text_.size();
    span.end = span.begin;
    if (auto href = tag.attr("href")) span.href = normalize_url(*href, base_);
    open_anchor_ = span;
    has_href_ = tag.attr("href").has_value();
  }

  void close_anchor() {
    if (!open_anchor_) return;
    open_anchor_->end = block_text_.size();
    if (open_anchor_->end > open_anchor_->begin && has_href_)
      anchors_.push_back(*open_anchor_);
    open_anchor_.reset();
  }

  void flush_block() {
    br_run_ = 0;
    close_anchor();
    if (!block_text_.empty()) {
      Block block;
      block.tag_path = block_path_;
      block.text = std::move(block_text_);
      doc_.blocks.push_back(std::move(block));
    }
    block_text_.clear();
    pending_space_ = false;
  }

  void finalize_links() {
    for (auto& block : doc_.blocks) {
      auto spans = tokenize_spans(block.text);
      block.tokens = static_cast<int>(spans.size());
    }
    for (const AnchorSpan& a : anchors_) {
      if (a.block_ordinal >= doc_.blocks.size()) continue;
      Block& block = doc_.blocks[a.block_ordinal];
      auto spans = tokenize_spans(block.text);
      std::size_t first = spans.size(), count = 0;
      for (std::size_t i = 0; i < spans.size(); ++i) {
        // token overlaps the anchor byte range
        if (spans[i].begin < a.end && spans[i].end > a.begin) {
          if (count == 0) first = i;
          ++count;
        }
      }
      block.linked_tokens += static_cast<int>(count);
      if (block.linked_tokens > block.tokens) block.linked_tokens = block.tokens;
      if (!a.href || count == 0) continue;
      LinkRef link;
      link.href = *a.href;
      link.source_block_index = static_cast<int>(a.block_ordinal);
      for (std::size_t i = first; i < first + count; ++i) link.anchor_tokens.push_back(spans[i].text);
      std::vector<std::string> block_tokens;
      block_tokens.reserve(spans.size());
      for (auto& s : spans) block_tokens.push_back(s.text);
      link.context_tokens = link_context(block_tokens, first, count, window_);
      doc_.links.push_back(std::move(link));
    }
  }

  std::string_view in_;
  std::string base_;
  int window_;
  std::size_t pos_ = 0;
  ParsedDoc doc_;
  std::vector<std::string> stack_;
  std::string block_text_;
  std::string block_path_;
  bool pending_space_ = false;
  int br_run_ = 0;
  std::optional<AnchorSpan> open_anchor_;
  bool has_href_ = false;
  std::vector<AnchorSpan> anchors_;
};

}  // namespace

std::optional<std::string> content_type_charset(std::string_view content_type) {
  std::string lowered = lower_ascii(content_type);
  auto pos = lowered.find("charset=");
  if (pos == std::string::npos) return std::nullopt;
  std::size_t start = pos + 8;
  std::size_t end = start;
  while (end < lowered.size() && lowered[end] != ';' && lowered[end] != ' ') ++end;
  std::string charset = canonical_charset(lowered.substr(start, end - start));
  if (charset.empty()) return std::nullopt;
  return charset;
}

std::optional<std::string> sniff_meta_charset(std::string_view body) {
  // Only the prologue is scanned, per common sniffing practice.
  std::string head = lower_ascii(body.substr(0, std::min<std::size_t>(body.size(), 2048)));
  auto pos = head.find("charset=");
  while (pos != std::string::npos) {
    // require it to appear inside a meta tag
    auto tag_start = head.rfind("<meta", pos);
    auto tag_end = head.find('>', pos);
    if (tag_start != std::string::npos &&
        (tag_end == std::string::npos || head.find('<', tag_start + 1) > pos)) {
      std::size_t start = pos + 8;
      std::size_t end = start;
      while (end < head.size() && head[end] != '"' && head[end] != '\'' && head[end] != ';' &&
             head[end] != '>' && head[end] != ' ' && head[end] != '/')
        ++end;
      std::string charset = canonical_charset(head.substr(start, end - start));
      if (!charset.empty()) return charset;
    }
    pos = head.find("charset=", pos + 1);
  }
  return std::nullopt;
}

std::string normalize_encoding(std::string_view body,
                               std::optional<std::string> http_charset,
                               std::optional<std::string> html_meta_charset) {
  // Strip a UTF-8 BOM before anything else.
  if (body.size() >= 3 && static_cast<unsigned char>(body[0]) == 0xEF &&
      static_cast<unsigned char>(body[1]) == 0xBB &&
      static_cast<unsigned char>(body[2]) == 0xBF)
    body = body.substr(3);

  std::optional<std::string> declared;
  if (http_charset && !http_charset->empty()) declared = canonical_charset(*http_charset);
  else if (html_meta_charset && !html_meta_charset->empty())
    declared = canonical_charset(*html_meta_charset);

  if (declared) {
    if (is_utf8_name(*declared)) return decode_utf8_lossy(body);
    if (is_latin1_name(*declared)) return decode_single_byte(body, false);
    if (is_cp1252_name(*declared)) return decode_single_byte(body, true);
    // unknown declared charset: fall through to the heuristic
  }
  if (valid_utf8(body)) return std::string(body);
  return decode_single_byte(body, false);
}

std::vector<std::string> link_context(std::span<const std::string> block_tokens,
                                      std::size_t anchor_first, std::size_t anchor_count,
                                      int window) {
  if (window < 0) window = 0;
  std::size_t lo = anchor_first > static_cast<std::size_t>(window)
                       ? anchor_first - static_cast<std::size_t>(window)
                       : 0;
  std::size_t hi = std::min(block_tokens.size(), anchor_first + anchor_count +
                                                     static_cast<std::size_t>(window));
  return std::vector<std::string>(block_tokens.begin() + static_cast<long>(lo),
                                  block_tokens.begin() + static_cast<long>(hi));
}

ParsedDoc parse_html(std::string_view text, std::string_view base_url, int context_window) {
  HtmlParser parser(text, base_url, context_window);
  return parser.run();
}

ParsedDoc parse_text(std::string_view text, std::string_view url) {
  ParsedDoc doc;
  doc.url = std::string(url);
  std::size_t pos = 0;
  std::string paragraph;
  auto flush = [&] {
    std::string collapsed = collapse_whitespace(paragraph);
    if (!collapsed.empty()) {
      Block block;
      block.tag_path = "text";
      block.text = std::move(collapsed);
      block.tokens = static_cast<int>(tokenize(block.text).size());
      doc.blocks.push_back(std::move(block));
    }
    paragraph.clear();
  };
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    std::string_view trimmed = line;
    while (!trimmed.empty() && (trimmed.back() == '\r' || trimmed.back() == ' '))
      trimmed.remove_suffix(1);
    if (trimmed.empty()) {
      flush();
    } else {
      paragraph.append(trimmed);
      paragraph.push_back('\n');
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return doc;
}

std::vector<std::string> content_tokens(const ParsedDoc& doc) {
  std::vector<std::string> out;
  for (const Block& block : doc.blocks) {
    if (block.is_boilerplate) continue;
    if (doc.main_language && block.language && *block.language != *doc.main_language) continue;
    for (auto& tok : tokenize(block.text)) out.push_back(std::move(tok));
  }
  return out;
}

std::vector<const Block*> content_blocks(const ParsedDoc& doc) {
  std::vector<const Block*> out;
  for (const Block& block : doc.blocks)
    if (!block.is_boilerplate) out.push_back(&block);
  return out;
}

}  // namespace corpusmill
