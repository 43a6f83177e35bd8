#ifndef CORPUSMILL_XML_HPP
#define CORPUSMILL_XML_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace corpusmill::xml {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, const std::string& path)
      : std::runtime_error(message + " (at " + (path.empty() ? "/" : path) + ")"),
        path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Node {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Node> children;
  std::string text;  // concatenated character data, entities decoded

  const Node* child(std::string_view name) const;
  const Node& require(std::string_view name) const;  // throws ParseError
  std::optional<std::string> attr(std::string_view name) const;
};

// Parse a standalone XML document (declaration and comments allowed,
// no DTD support). Throws ParseError with the offending element path.
Node parse(std::string_view text);

std::string escape(std::string_view text);       // & < > for character data
std::string escape_attr(std::string_view text);  // additionally " and '

}  // namespace corpusmill::xml

#endif
