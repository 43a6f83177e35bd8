#ifndef CORPUSMILL_FETCHER_HPP
#define CORPUSMILL_FETCHER_HPP

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "corpusmill/robots.hpp"

namespace corpusmill {

struct FetchResult {
  std::string requested_url;
  std::string final_url;  // after redirects
  int status = 0;
  std::string content_type;
  std::string body;
  std::int64_t fetched_at = 0;  // UTC epoch seconds
};

struct FetchError {
  enum class Kind { PolicyDenied, Timeout, RedirectLoop, Transport };
  Kind kind;
  std::string url;
  std::string message;
};

using FetchOutcome = std::variant<FetchResult, FetchError>;

struct PolitenessPolicy {
  int min_delay_ms_per_host = 1000;
  int max_redirects = 5;
  std::string user_agent = "corpusmill/0.1";
  bool respect_robots = true;
  int per_fetch_timeout_ms = 30000;
};

/// Where pages come from: live HTTP, an in-memory site, or a directory
/// of files. Implementations must be safe for concurrent get() calls.
class PageSource {
 public:
  struct Response {
    int status = 0;
    std::string content_type;
    std::string location;  // for redirects
    std::string body;
  };
  virtual ~PageSource() = default;
  /// nullopt on transport failure (error message filled in).
  virtual std::optional<Response> get(const std::string& url, std::string& error) = 0;
};

class MemoryPageSource : public PageSource {
 public:
  void add(const std::string& url, Response response) { pages_[url] = std::move(response); }
  void add_page(const std::string& url, std::string html,
                std::string content_type = "text/html; charset=utf-8");
  void add_redirect(const std::string& url, const std::string& to, int status = 301);
  std::optional<Response> get(const std::string& url, std::string& error) override;
  std::size_t size() const { return pages_.size(); }
  const std::map<std::string, Response>& pages() const { return pages_; }

 private:
  std::map<std::string, Response> pages_;
};

/// Serves a directory tree written by the simulate command:
/// <root>/<host>/<path>. Missing files come back 404.
class FilePageSource : public PageSource {
 public:
  explicit FilePageSource(std::string root) : root_(std::move(root)) {}
  std::optional<Response> get(const std::string& url, std::string& error) override;

 private:
  std::string root_;
};

class HttpPageSource : public PageSource {
 public:
  explicit HttpPageSource(int timeout_ms, std::string user_agent)
      : timeout_ms_(timeout_ms), user_agent_(std::move(user_agent)) {}
  std::optional<Response> get(const std::string& url, std::string& error) override;

 private:
  int timeout_ms_;
  std::string user_agent_;
};

/// Grants per-host fetch slots spaced at least min_delay apart. The
/// returned time is the request start time; the caller is already past
/// it when acquire() returns.
class PolitenessScheduler {
 public:
  std::chrono::steady_clock::time_point acquire(const std::string& host,
                                                std::chrono::milliseconds min_delay);

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::unordered_map<std::string, std::chrono::steady_clock::time_point> next_allowed_;
};

struct FetchLogEntry {
  std::string url;
  std::string host;
  std::chrono::steady_clock::time_point started;
};

/// Polite page fetcher: robots rules (cached per host), per-host rate
/// limiting, redirect following. Safe to call from many workers.
class Fetcher {
 public:
  Fetcher(PageSource& source, PolitenessPolicy policy);

  FetchOutcome fetch(const std::string& url);

  /// Every network exchange, including robots lookups and redirect hops.
  std::vector<FetchLogEntry> log() const;

  /// Frozen value for FetchResult::fetched_at (reproducible crawls).
  void set_fixed_time(std::int64_t epoch_seconds) { fixed_time_ = epoch_seconds; }

 private:
  const RobotsRecord& robots_for_host(const std::string& scheme, const std::string& host_port);
  PageSource::Response exchange(const std::string& url, std::string& error, bool& ok);

  PageSource& source_;
  PolitenessPolicy policy_;
  PolitenessScheduler scheduler_;
  std::mutex robots_mu_;
  std::unordered_map<std::string, std::unique_ptr<RobotsRecord>> robots_cache_;
  mutable std::mutex log_mu_;
  std::vector<FetchLogEntry> log_;
  std::optional<std::int64_t> fixed_time_;
};

}  // namespace corpusmill

#endif
