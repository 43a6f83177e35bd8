#include "corpusmill/frontier.hpp"

#include "corpusmill/url.hpp"

namespace corpusmill {

Frontier::Frontier(const CrawlLimits& limits, std::vector<std::string> seed_hosts)
    : max_depth_(limits.max_depth) {
  if (limits.same_host_only)
    for (auto& host : seed_hosts) allowed_hosts_.insert(std::move(host));
}

bool Frontier::push(const std::string& url, double priority, int depth) {
  std::lock_guard lock(mu_);
  if (max_depth_ && depth > *max_depth_) return false;
  if (!allowed_hosts_.empty() && !allowed_hosts_.count(url_host(url))) return false;

  auto it = seen_.find(url);
  if (it != seen_.end()) {
    UrlState& state = it->second;
    if (state.queued && priority > state.priority) {
      state.priority = priority;
      heap_.push({priority, state.seq, url});  // older node goes stale
    }
    return false;
  }
  std::uint64_t seq = next_seq_++;
  seen_.emplace(url, UrlState{priority, depth, seq, true});
  heap_.push({priority, seq, url});
  return true;
}

std::optional<FrontierEntry> Frontier::pop() {
  std::lock_guard lock(mu_);
  while (!heap_.empty()) {
    HeapNode node = heap_.top();
    heap_.pop();
    auto it = seen_.find(node.url);
    if (it == seen_.end()) continue;
    UrlState& state = it->second;
    if (!state.queued || state.priority != node.priority) continue;  // stale
    state.queued = false;
    return FrontierEntry{node.url, node.priority, state.depth, node.seq};
  }
  return std::nullopt;
}

std::size_t Frontier::queued() const {
  std::lock_guard lock(mu_);
  std::size_t count = 0;
  for (const auto& [url, state] : seen_)
    if (state.queued) ++count;
  return count;
}

std::size_t Frontier::seen() const {
  std::lock_guard lock(mu_);
  return seen_.size();
}

bool should_stop(long pages_fetched, double elapsed_seconds, bool frontier_empty,
                 const CrawlLimits& limits) {
  if (frontier_empty) return true;
  if (limits.max_pages && pages_fetched >= *limits.max_pages) return true;
  if (limits.max_seconds && elapsed_seconds >= static_cast<double>(*limits.max_seconds))
    return true;
  return false;
}

}  // namespace corpusmill
