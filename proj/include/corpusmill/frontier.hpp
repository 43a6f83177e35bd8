#ifndef CORPUSMILL_FRONTIER_HPP
#define CORPUSMILL_FRONTIER_HPP

#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace corpusmill {

struct FrontierEntry {
  std::string url;  // normalized, absolute
  double priority = 0.0;
  int depth = 0;
  std::uint64_t seq = 0;  // discovery counter
};

struct CrawlLimits {
  std::optional<long> max_pages;
  std::optional<long> max_seconds;
  std::optional<int> max_depth;
  bool same_host_only = false;
};

inline constexpr double kSeedPriority = std::numeric_limits<double>::infinity();

/// Priority queue of discovered-but-unfetched URLs with URL-level
/// deduplication. Safe under concurrent push/pop; deterministic order is
/// guaranteed for single-threaded use.
class Frontier {
 public:
  Frontier() = default;
  Frontier(const CrawlLimits& limits, std::vector<std::string> seed_hosts);

  /// False when the URL was already seen (the queued priority is still
  /// raised to the max of old and new), the host is off-limits, or the
  /// entry is too deep. True when enqueued.
  bool push(const std::string& url, double priority, int depth);

  /// Highest priority first; FIFO among equals. nullopt when exhausted.
  std::optional<FrontierEntry> pop();

  std::size_t queued() const;
  std::size_t seen() const;

 private:
  struct HeapNode {
    double priority;
    std::uint64_t seq;
    std::string url;
  };
  struct NodeOrder {
    bool operator()(const HeapNode& a, const HeapNode& b) const {
      if (a.priority != b.priority) return a.priority < b.priority;
      return a.seq > b.seq;
    }
  };
  struct UrlState {
    double priority;
    int depth;
    std::uint64_t seq;
    bool queued;
  };

  mutable std::mutex mu_;
  std::priority_queue<HeapNode, std::vector<HeapNode>, NodeOrder> heap_;
  std::unordered_map<std::string, UrlState> seen_;
  std::unordered_set<std::string> allowed_hosts_;  // empty = all hosts
  std::optional<int> max_depth_;
  std::uint64_t next_seq_ = 0;
};

/// Termination test: frontier exhausted, page budget reached, or time
/// budget reached.
bool should_stop(long pages_fetched, double elapsed_seconds, bool frontier_empty,
                 const CrawlLimits& limits);

}  // namespace corpusmill

#endif
