#ifndef CORPUSMILL_URL_HPP
#define CORPUSMILL_URL_HPP

#include <optional>
#include <string>
#include <string_view>

namespace corpusmill {

/// A parsed http(s) URL. Fragments are dropped at parse time.
struct Url {
  std::string scheme;  // lowercase
  std::string host;    // lowercase
  int port = -1;       // -1 when absent or default for the scheme
  std::string path;    // always starts with '/' when a host is present
  std::string query;   // without the leading '?', verbatim

  std::string str() const;
  std::string host_port() const;  // "host" or "host:port"
};

std::optional<Url> parse_url(std::string_view absolute);

// RFC 3986 relative resolution against a base.
Url resolve_url(const Url& base, std::string_view reference);

std::string remove_dot_segments(std::string_view path);

// Resolve href against base and normalize: lowercase scheme/host, strip
// fragment, drop default ports, collapse dot-segments, keep the query
// verbatim. Returns nullopt for unsupported schemes (the Skip signal).
std::optional<std::string> normalize_url(std::string_view href, std::string_view base);

// Host of an absolute URL, empty if unparsable.
std::string url_host(std::string_view absolute);

}  // namespace corpusmill

#endif
