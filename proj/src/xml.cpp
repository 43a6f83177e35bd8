#include "corpusmill/xml.hpp"

#include "corpusmill/text.hpp"

namespace corpusmill::xml {

namespace {

struct Parser {
  std::string_view in;
  std::size_t pos = 0;
  std::string path;

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, path);
  }

  bool eof() const { return pos >= in.size(); }
  char peek() const { return in[pos]; }
  bool starts_with(std::string_view s) const { return in.substr(pos, s.size()) == s; }

  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
      ++pos;
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        auto end = in.find("?>", pos);
        if (end == std::string_view::npos) fail("unterminated processing instruction");
        pos = end + 2;
      } else if (starts_with("<!--")) {
        auto end = in.find("-->", pos);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos = end + 3;
      } else if (starts_with("<!DOCTYPE")) {
        auto end = in.find('>', pos);
        if (end == std::string_view::npos) fail("unterminated doctype");
        pos = end + 1;
      } else {
        return;
      }
    }
  }

  static bool name_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-' || c == '.' || c == ':';
  }

  std::string read_name() {
    std::size_t start = pos;
    while (!eof() && name_char(peek())) ++pos;
    if (pos == start) fail("expected a name");
    return std::string(in.substr(start, pos - start));
  }

  std::string decode_entities(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    std::size_t i = 0;
    while (i < raw.size()) {
      if (raw[i] != '&') {
        out.push_back(raw[i++]);
        continue;
      }
      auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity reference");
      std::string_view name = raw.substr(i + 1, semi - i - 1);
      if (name == "lt") {
        out.push_back('<');
      } else if (name == "gt") {
        out.push_back('>');
      } else if (name == "amp") {
        out.push_back('&');
      } else if (name == "quot") {
        out.push_back('"');
      } else if (name == "apos") {
        out.push_back('\'');
      } else if (!name.empty() && name[0] == '#') {
        char32_t cp = 0;
        bool ok = name.size() > 1;
        if (name.size() > 2 && (name[1] == 'x' || name[1] == 'X')) {
          for (std::size_t k = 2; k < name.size(); ++k) {
            char c = name[k];
            int d = c >= '0' && c <= '9'   ? c - '0'
                    : c >= 'a' && c <= 'f' ? c - 'a' + 10
                    : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                           : -1;
            if (d < 0) { ok = false; break; }
            cp = cp * 16 + static_cast<char32_t>(d);
          }
        } else {
          for (std::size_t k = 1; k < name.size(); ++k) {
            if (name[k] < '0' || name[k] > '9') { ok = false; break; }
            cp = cp * 10 + static_cast<char32_t>(name[k] - '0');
          }
        }
        if (!ok) fail("bad character reference");
        utf8_append(out, cp);
      } else {
        fail("unknown entity '" + std::string(name) + "'");
      }
      i = semi + 1;
    }
    return out;
  }

  Node element() {
    expect('<');
    Node node;
    node.name = read_name();
    std::string saved_path = path;
    path += "/" + node.name;
    // attributes
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '>' || starts_with("/>")) break;
      std::string attr_name = read_name();
      skip_ws();
      expect('=');
      skip_ws();
      if (eof() || (peek() != '"' && peek() != '\'')) fail("attribute value must be quoted");
      char quote = peek();
      ++pos;
      auto end = in.find(quote, pos);
      if (end == std::string_view::npos) fail("unterminated attribute value");
      node.attrs.emplace_back(attr_name, decode_entities(in.substr(pos, end - pos)));
      pos = end + 1;
    }
    if (starts_with("/>")) {
      pos += 2;
      path = saved_path;
      return node;
    }
    expect('>');
    // content
    for (;;) {
      if (eof()) fail("unterminated element");
      if (starts_with("</")) {
        pos += 2;
        std::string close = read_name();
        if (close != node.name) fail("mismatched end tag '" + close + "'");
        skip_ws();
        expect('>');
        path = saved_path;
        return node;
      }
      if (starts_with("<!--")) {
        auto end = in.find("-->", pos);
        if (end == std::string_view::npos) fail("unterminated comment");
        pos = end + 3;
      } else if (peek() == '<') {
        node.children.push_back(element());
      } else {
        std::size_t start = pos;
        while (!eof() && peek() != '<') ++pos;
        node.text += decode_entities(in.substr(start, pos - start));
      }
    }
  }
};

}  // namespace

const Node* Node::child(std::string_view name) const {
  for (const auto& c : children)
    if (c.name == name) return &c;
  return nullptr;
}

const Node& Node::require(std::string_view name) const {
  const Node* c = child(name);
  if (!c) throw ParseError("missing element <" + std::string(name) + ">", "/" + this->name);
  return *c;
}

std::optional<std::string> Node::attr(std::string_view name) const {
  for (const auto& [k, v] : attrs)
    if (k == name) return v;
  return std::nullopt;
}

Node parse(std::string_view text) {
  Parser p{text};
  // Tolerate a UTF-8 byte-order mark.
  if (text.size() >= 3 && static_cast<unsigned char>(text[0]) == 0xEF &&
      static_cast<unsigned char>(text[1]) == 0xBB &&
      static_cast<unsigned char>(text[2]) == 0xBF)
    p.pos = 3;
  p.skip_misc();
  if (p.eof() || p.peek() != '<') p.fail("no root element");
  Node root = p.element();
  p.skip_misc();
  if (!p.eof()) p.fail("trailing content after root element");
  return root;
}

std::string escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string escape_attr(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace corpusmill::xml
