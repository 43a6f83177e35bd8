#include "corpusmill/fetcher.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "corpusmill/url.hpp"

#ifdef CORPUSMILL_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

namespace corpusmill {

namespace fs = std::filesystem;

void MemoryPageSource::add_page(const std::string& url, std::string html,
                                std::string content_type) {
  Response r;
  r.status = 200;
  r.content_type = std::move(content_type);
  r.body = std::move(html);
  pages_[url] = std::move(r);
}

void MemoryPageSource::add_redirect(const std::string& url, const std::string& to, int status) {
  Response r;
  r.status = status;
  r.location = to;
  pages_[url] = std::move(r);
}

std::optional<PageSource::Response> MemoryPageSource::get(const std::string& url,
                                                          std::string& error) {
  auto it = pages_.find(url);
  if (it == pages_.end()) {
    Response r;
    r.status = 404;
    r.content_type = "text/plain";
    r.body = "not found";
    return r;
  }
  error.clear();
  return it->second;
}

std::optional<PageSource::Response> FilePageSource::get(const std::string& url,
                                                        std::string& error) {
  error.clear();
  auto parsed = parse_url(url);
  Response r;
  if (!parsed) {
    r.status = 404;
    return r;
  }
  std::string path = parsed->path;
  if (path.empty() || path.back() == '/') path += "index.html";
  fs::path file = fs::path(root_) / parsed->host / path.substr(1);
  if (fs::is_directory(file)) file /= "index.html";
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    r.status = 404;
    r.content_type = "text/plain";
    return r;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  r.status = 200;
  r.body = buffer.str();
  std::string ext = file.extension().string();
  if (ext == ".html" || ext == ".htm") r.content_type = "text/html; charset=utf-8";
  else if (ext == ".txt") r.content_type = "text/plain; charset=utf-8";
  else r.content_type = "application/octet-stream";
  return r;
}

std::optional<PageSource::Response> HttpPageSource::get(const std::string& url,
                                                        std::string& error) {
  auto parsed = parse_url(url);
  if (!parsed) {
    error = "unparsable URL";
    return std::nullopt;
  }
#ifndef CORPUSMILL_HAVE_OPENSSL
  if (parsed->scheme == "https") {
    error = "https support not built in";
    return std::nullopt;
  }
#endif
  std::string origin = parsed->scheme + "://" + parsed->host_port();
  httplib::Client client(origin);
  client.set_follow_location(false);  // redirects are handled by the Fetcher
  client.set_connection_timeout(std::chrono::milliseconds(timeout_ms_));
  client.set_read_timeout(std::chrono::milliseconds(timeout_ms_));
  client.set_default_headers({{"User-Agent", user_agent_}});

  std::string target = parsed->path;
  if (!parsed->query.empty()) target += "?" + parsed->query;
  auto result = client.Get(target);
  if (!result) {
    error = httplib::to_string(result.error());
    if (result.error() == httplib::Error::ConnectionTimeout ||
        result.error() == httplib::Error::Read)
      error = "timeout: " + error;
    return std::nullopt;
  }
  Response r;
  r.status = result->status;
  r.content_type = result->get_header_value("Content-Type");
  r.location = result->get_header_value("Location");
  r.body = result->body;
  return r;
}

std::chrono::steady_clock::time_point PolitenessScheduler::acquire(
    const std::string& host, std::chrono::milliseconds min_delay) {
  std::unique_lock lock(mu_);
  for (;;) {
    auto now = std::chrono::steady_clock::now();
    auto it = next_allowed_.find(host);
    if (it == next_allowed_.end() || now >= it->second) {
      next_allowed_[host] = now + min_delay;
      return now;
    }
    cv_.wait_until(lock, it->second);
  }
}

Fetcher::Fetcher(PageSource& source, PolitenessPolicy policy)
    : source_(source), policy_(std::move(policy)) {}

PageSource::Response Fetcher::exchange(const std::string& url, std::string& error, bool& ok) {
  std::string host = url_host(url);
  auto start = scheduler_.acquire(
      host, std::chrono::milliseconds(std::max(0, policy_.min_delay_ms_per_host)));
  {
    std::lock_guard lock(log_mu_);
    log_.push_back({url, host, start});
  }
  auto response = source_.get(url, error);
  ok = response.has_value();
  return ok ? *response : PageSource::Response{};
}

const RobotsRecord& Fetcher::robots_for_host(const std::string& scheme,
                                             const std::string& host_port) {
  {
    std::lock_guard lock(robots_mu_);
    auto it = robots_cache_.find(host_port);
    if (it != robots_cache_.end()) return *it->second;
  }
  std::string robots_url = scheme + "://" + host_port + "/robots.txt";
  std::string error;
  bool ok = false;
  PageSource::Response response = exchange(robots_url, error, ok);
  auto record = std::make_unique<RobotsRecord>();
  if (ok && response.status >= 200 && response.status < 300)
    *record = parse_robots(response.body);
  // anything else (404, transport failure) means no restrictions
  std::lock_guard lock(robots_mu_);
  auto [it, inserted] = robots_cache_.emplace(host_port, std::move(record));
  return *it->second;
}

FetchOutcome Fetcher::fetch(const std::string& url) {
  std::string current = url;
  int redirects = 0;
  for (;;) {
    auto parsed = parse_url(current);
    if (!parsed)
      return FetchError{FetchError::Kind::Transport, current, "unparsable URL"};

    if (policy_.respect_robots && parsed->path != "/robots.txt") {
      const RobotsRecord& robots = robots_for_host(parsed->scheme, parsed->host_port());
      std::string path_query = parsed->path;
      if (!parsed->query.empty()) path_query += "?" + parsed->query;
      if (!robots_allowed(robots, path_query, policy_.user_agent))
        return FetchError{FetchError::Kind::PolicyDenied, current, "disallowed by robots.txt"};
    }

    std::string error;
    bool ok = false;
    PageSource::Response response = exchange(current, error, ok);
    if (!ok) {
      auto kind = error.rfind("timeout", 0) == 0 ? FetchError::Kind::Timeout
                                                 : FetchError::Kind::Transport;
      return FetchError{kind, current, error};
    }

    if (response.status >= 300 && response.status < 400 && !response.location.empty()) {
      if (++redirects > policy_.max_redirects)
        return FetchError{FetchError::Kind::RedirectLoop, current,
                          "more than " + std::to_string(policy_.max_redirects) + " redirects"};
      auto next = normalize_url(response.location, current);
      if (!next)
        return FetchError{FetchError::Kind::Transport, current,
                          "redirect to unsupported URL: " + response.location};
      current = *next;
      continue;
    }

    FetchResult result;
    result.requested_url = url;
    result.final_url = current;
    result.status = response.status;
    result.content_type = response.content_type;
    result.body = std::move(response.body);
    result.fetched_at =
        fixed_time_ ? *fixed_time_
                    : std::chrono::duration_cast<std::chrono::seconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
    return result;
  }
}

std::vector<FetchLogEntry> Fetcher::log() const {
  std::lock_guard lock(log_mu_);
  return log_;
}

}  // namespace corpusmill
