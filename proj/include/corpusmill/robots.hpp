#ifndef CORPUSMILL_ROBOTS_HPP
#define CORPUSMILL_ROBOTS_HPP

#include <string>
#include <string_view>
#include <vector>

namespace corpusmill {

/// Parsed robots.txt. Groups keep their file order; rule matching uses
/// longest-match precedence with Allow winning ties.
struct RobotsRecord {
  struct Rule {
    bool allow = false;
    std::string pattern;  // may contain '*' wildcards and a '$' anchor
  };
  struct Group {
    std::vector<std::string> agents;  // lowercase user-agent tokens, "*" = any
    std::vector<Rule> rules;
  };
  std::vector<Group> groups;
};

/// Never fails: unparseable lines are ignored, so garbage input yields a
/// record that allows everything.
RobotsRecord parse_robots(std::string_view text);

bool robots_allowed(const RobotsRecord& record, std::string_view path,
                    std::string_view user_agent);

}  // namespace corpusmill

#endif
