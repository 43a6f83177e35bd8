#include "corpusmill/robots.hpp"

#include <algorithm>

namespace corpusmill {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c += 0x20;
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

// Glob match: '*' matches any run, a trailing '$' anchors the end.
// Without '$' the pattern is a prefix pattern.
bool pattern_matches(std::string_view pattern, std::string_view path) {
  bool anchored = !pattern.empty() && pattern.back() == '$';
  if (anchored) pattern.remove_suffix(1);

  // match(i, j): pattern[i..] against path[j..]
  std::size_t pi = 0, si = 0;
  std::size_t star_pi = std::string_view::npos, star_si = 0;
  while (si < path.size()) {
    if (pi < pattern.size() && (pattern[pi] == path[si])) {
      ++pi;
      ++si;
    } else if (pi < pattern.size() && pattern[pi] == '*') {
      star_pi = pi++;
      star_si = si;
    } else if (star_pi != std::string_view::npos) {
      pi = star_pi + 1;
      si = ++star_si;
    } else {
      // pattern exhausted or mismatch: prefix match succeeds if the whole
      // pattern was consumed and no end anchor is required
      return pi == pattern.size() && !anchored;
    }
  }
  while (pi < pattern.size() && pattern[pi] == '*') ++pi;
  return pi == pattern.size();
}

}  // namespace

RobotsRecord parse_robots(std::string_view text) {
  RobotsRecord record;
  RobotsRecord::Group current;
  bool in_group = false;       // collecting agents for a new group
  bool group_has_rules = false;

  auto flush = [&] {
    if (!current.agents.empty()) record.groups.push_back(std::move(current));
    current = {};
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    std::string line = trim(raw);
    auto hash = line.find('#');
    if (hash != std::string::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;

    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string field = lower(trim(line.substr(0, colon)));
    std::string value = trim(line.substr(colon + 1));

    if (field == "user-agent") {
      if (in_group && group_has_rules) {
        flush();
        group_has_rules = false;
      }
      in_group = true;
      current.agents.push_back(lower(value));
    } else if (field == "disallow" || field == "allow") {
      if (!in_group) {  // rules before any user-agent line apply to all
        current.agents.push_back("*");
        in_group = true;
      }
      group_has_rules = true;
      // an empty Disallow/Allow value constrains nothing
      if (!value.empty()) current.rules.push_back({field == "allow", value});
    }
    // other fields (crawl-delay, sitemap, ...) are ignored
  }
  flush();
  return record;
}

bool robots_allowed(const RobotsRecord& record, std::string_view path,
                    std::string_view user_agent) {
  if (path.empty()) path = "/";
  std::string ua = lower(user_agent);

  // Pick the group with the most specific matching agent token; '*' is the
  // fallback. Earlier groups win ties.
  const RobotsRecord::Group* chosen = nullptr;
  std::size_t chosen_len = 0;
  bool chosen_wildcard = true;
  for (const auto& group : record.groups) {
    for (const auto& agent : group.agents) {
      if (agent == "*") {
        if (!chosen) {
          chosen = &group;
          chosen_wildcard = true;
        }
      } else if (ua.find(agent) != std::string::npos) {
        if (chosen_wildcard || agent.size() > chosen_len) {
          chosen = &group;
          chosen_len = agent.size();
          chosen_wildcard = false;
        }
      }
    }
  }
  if (!chosen) return true;

  // Longest pattern wins; Allow beats Disallow at equal length.
  bool allowed = true;
  std::size_t best_len = 0;
  bool best_allow = true;
  bool any = false;
  for (const auto& rule : chosen->rules) {
    if (!pattern_matches(rule.pattern, path)) continue;
    std::size_t len = rule.pattern.size();
    if (!any || len > best_len || (len == best_len && rule.allow && !best_allow)) {
      any = true;
      best_len = len;
      best_allow = rule.allow;
    }
  }
  if (any) allowed = best_allow;
  return allowed;
}

}  // namespace corpusmill
