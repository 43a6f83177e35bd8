#ifndef CORPUSMILL_PROVENANCE_HPP
#define CORPUSMILL_PROVENANCE_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "corpusmill/export_xml.hpp"

namespace corpusmill {

class ProvenanceError : public std::runtime_error {
 public:
  explicit ProvenanceError(const std::string& message) : std::runtime_error(message) {}
};

struct CivilDate {
  int year = 0;
  int month = 0;
  int day = 0;

  long days_from_epoch() const;
  static CivilDate parse(std::string_view text);  // YYYY-MM-DD
  std::string str() const;
};

enum class NegotiationStatus { Unexamined, Pending, Negotiating, Granted, Refused };

std::string_view status_name(NegotiationStatus status);
NegotiationStatus parse_status(std::string_view name);  // throws ProvenanceError

struct SiteRecord {
  std::string domain;  // exact host
  int pages = 0;
  std::string batch;
  NegotiationStatus status = NegotiationStatus::Unexamined;
  std::optional<CivilDate> contact_opened;
  std::optional<CivilDate> resolved;
};

/// One record per host with page counts, ordered by descending pages
/// then domain.
std::vector<SiteRecord> aggregate_sites(std::span<const IndexRow> index, std::string_view batch);

enum class IprMode { Monolingual, Bilingual };

/// Bilingual mode targets every source; monolingual keeps sites with at
/// least min_pages pages ("under N" is excluded, N itself qualifies).
std::vector<SiteRecord> ipr_candidates(std::span<const SiteRecord> records, int min_pages,
                                       IprMode mode);

struct NegotiationStats {
  long min_days = 0;
  long max_days = 0;
  long mean_days = 0;  // rounded to nearest whole day
};

/// Whole-day durations over resolved, non-refused records with both
/// dates. nullopt when there is no usable record.
std::optional<NegotiationStats> negotiation_stats(std::span<const SiteRecord> records);

/// Ledger TSV: header domain/pages/batch/status/contact_opened/resolved;
/// empty dates are "-".
std::string render_ledger(std::span<const SiteRecord> records);
std::vector<SiteRecord> parse_ledger(std::string_view text);

std::string render_ipr_report(std::span<const SiteRecord> records, int min_pages, IprMode mode);

}  // namespace corpusmill

#endif
