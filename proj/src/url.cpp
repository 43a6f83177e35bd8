#include "corpusmill/url.hpp"

#include <algorithm>
#include <cctype>

namespace corpusmill {

namespace {

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool scheme_supported(std::string_view scheme) {
  return scheme == "http" || scheme == "https";
}

int default_port(std::string_view scheme) {
  if (scheme == "http") return 80;
  if (scheme == "https") return 443;
  return -1;
}

// Splits "host[:port]" (handles bracketed IPv6 literals).
void split_authority(std::string_view authority, std::string& host, int& port) {
  // strip userinfo
  auto at = authority.rfind('@');
  if (at != std::string_view::npos) authority = authority.substr(at + 1);
  std::string_view host_part = authority;
  port = -1;
  if (!authority.empty() && authority[0] == '[') {
    auto close = authority.find(']');
    if (close != std::string_view::npos) {
      host_part = authority.substr(0, close + 1);
      if (close + 1 < authority.size() && authority[close + 1] == ':') {
        auto p = authority.substr(close + 2);
        port = 0;
        for (char c : p) port = (c >= '0' && c <= '9') ? port * 10 + (c - '0') : port;
      }
    }
  } else {
    auto colon = authority.rfind(':');
    if (colon != std::string_view::npos) {
      host_part = authority.substr(0, colon);
      port = 0;
      for (char c : authority.substr(colon + 1))
        if (c >= '0' && c <= '9') port = port * 10 + (c - '0');
      if (authority.size() == colon + 1) port = -1;  // trailing ':' with no digits
    }
  }
  host = to_lower_ascii(host_part);
}

struct RefParts {
  std::optional<std::string> scheme;
  std::optional<std::string> authority;
  std::string path;
  std::optional<std::string> query;
};

RefParts split_reference(std::string_view ref) {
  RefParts parts;
  // fragment first, it can contain anything
  auto hash = ref.find('#');
  if (hash != std::string_view::npos) ref = ref.substr(0, hash);
  // scheme
  for (std::size_t i = 0; i < ref.size(); ++i) {
    char c = ref[i];
    if (c == ':') {
      if (i > 0) {
        parts.scheme = to_lower_ascii(ref.substr(0, i));
        ref = ref.substr(i + 1);
      }
      break;
    }
    bool scheme_char = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                       (i > 0 && ((c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.'));
    if (!scheme_char) break;
  }
  if (ref.substr(0, 2) == "//") {
    ref = ref.substr(2);
    auto end = ref.find_first_of("/?");
    if (end == std::string_view::npos) {
      parts.authority = std::string(ref);
      ref = "";
    } else {
      parts.authority = std::string(ref.substr(0, end));
      ref = ref.substr(end);
    }
  }
  auto q = ref.find('?');
  if (q != std::string_view::npos) {
    parts.query = std::string(ref.substr(q + 1));
    ref = ref.substr(0, q);
  }
  parts.path = std::string(ref);
  return parts;
}

std::string merge_paths(const Url& base, const std::string& ref_path) {
  if (!base.host.empty() && base.path.empty()) return "/" + ref_path;
  auto slash = base.path.rfind('/');
  if (slash == std::string::npos) return ref_path;
  return base.path.substr(0, slash + 1) + ref_path;
}

}  // namespace

std::string remove_dot_segments(std::string_view path) {
  std::string input(path);
  std::string output;
  while (!input.empty()) {
    if (input.rfind("../", 0) == 0) {
      input.erase(0, 3);
    } else if (input.rfind("./", 0) == 0) {
      input.erase(0, 2);
    } else if (input.rfind("/./", 0) == 0) {
      input.erase(0, 2);  // keep leading '/'
    } else if (input == "/.") {
      input = "/";
    } else if (input.rfind("/../", 0) == 0 || input == "/..") {
      input.erase(0, input == "/.." ? 3 : 3);
      if (input.empty()) input = "/";
      auto slash = output.rfind('/');
      output.erase(slash == std::string::npos ? 0 : slash);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      std::size_t start = input[0] == '/' ? 1 : 0;
      auto slash = input.find('/', start);
      if (slash == std::string::npos) {
        output += input;
        input.clear();
      } else {
        output += input.substr(0, slash);
        input.erase(0, slash);
      }
    }
  }
  return output;
}

std::string Url::str() const {
  std::string out = scheme + "://" + host;
  if (port >= 0 && port != default_port(scheme)) out += ":" + std::to_string(port);
  out += path.empty() ? "/" : path;
  if (!query.empty()) out += "?" + query;
  return out;
}

std::string Url::host_port() const {
  if (port >= 0 && port != default_port(scheme)) return host + ":" + std::to_string(port);
  return host;
}

std::optional<Url> parse_url(std::string_view absolute) {
  RefParts parts = split_reference(absolute);
  if (!parts.scheme || !parts.authority) return std::nullopt;
  Url url;
  url.scheme = *parts.scheme;
  split_authority(*parts.authority, url.host, url.port);
  if (url.host.empty()) return std::nullopt;
  url.path = remove_dot_segments(parts.path);
  if (url.path.empty()) url.path = "/";
  url.query = parts.query.value_or("");
  if (url.port == default_port(url.scheme)) url.port = -1;
  return url;
}

Url resolve_url(const Url& base, std::string_view reference) {
  RefParts ref = split_reference(reference);
  Url out;
  if (ref.scheme) {
    out.scheme = *ref.scheme;
    if (ref.authority) {
      split_authority(*ref.authority, out.host, out.port);
      out.path = remove_dot_segments(ref.path);
    } else {
      out.host = base.host;
      out.port = base.port;
      out.path = remove_dot_segments(ref.path);
    }
    out.query = ref.query.value_or("");
  } else {
    out.scheme = base.scheme;
    if (ref.authority) {
      split_authority(*ref.authority, out.host, out.port);
      out.path = remove_dot_segments(ref.path);
      out.query = ref.query.value_or("");
    } else {
      out.host = base.host;
      out.port = base.port;
      if (ref.path.empty()) {
        out.path = base.path;
        out.query = ref.query ? *ref.query : base.query;
      } else {
        out.path = ref.path[0] == '/' ? remove_dot_segments(ref.path)
                                      : remove_dot_segments(merge_paths(base, ref.path));
        out.query = ref.query.value_or("");
      }
    }
  }
  if (!out.host.empty() && out.path.empty()) out.path = "/";
  if (out.port == default_port(out.scheme)) out.port = -1;
  return out;
}

std::optional<std::string> normalize_url(std::string_view href, std::string_view base) {
  if (href.empty()) return std::nullopt;
  std::optional<Url> base_url = parse_url(base);
  Url resolved;
  if (base_url) {
    resolved = resolve_url(*base_url, href);
  } else {
    std::optional<Url> abs = parse_url(href);
    if (!abs) return std::nullopt;
    resolved = *abs;
  }
  if (!scheme_supported(resolved.scheme) || resolved.host.empty()) return std::nullopt;
  return resolved.str();
}

std::string url_host(std::string_view absolute) {
  auto url = parse_url(absolute);
  return url ? url->host : std::string();
}

}  // namespace corpusmill
