#include "corpusmill/provenance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "corpusmill/url.hpp"

namespace corpusmill {

long CivilDate::days_from_epoch() const {
  // Howard Hinnant's civil-days algorithm.
  int y = year;
  unsigned m = static_cast<unsigned>(month), d = static_cast<unsigned>(day);
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<long>(era) * 146097 + static_cast<long>(doe) - 719468;
}

CivilDate CivilDate::parse(std::string_view text) {
  CivilDate date;
  if (std::sscanf(std::string(text).c_str(), "%d-%d-%d", &date.year, &date.month, &date.day) != 3 ||
      date.month < 1 || date.month > 12 || date.day < 1 || date.day > 31)
    throw ProvenanceError("bad date '" + std::string(text) + "', expected YYYY-MM-DD");
  return date;
}

std::string CivilDate::str() const {
  char buffer[16];
  std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02d", year, month, day);
  return buffer;
}

std::string_view status_name(NegotiationStatus status) {
  switch (status) {
    case NegotiationStatus::Unexamined: return "unexamined";
    case NegotiationStatus::Pending: return "pending";
    case NegotiationStatus::Negotiating: return "negotiating";
    case NegotiationStatus::Granted: return "granted";
    case NegotiationStatus::Refused: return "refused";
  }
  return "unexamined";
}

NegotiationStatus parse_status(std::string_view name) {
  if (name == "unexamined") return NegotiationStatus::Unexamined;
  if (name == "pending") return NegotiationStatus::Pending;
  if (name == "negotiating") return NegotiationStatus::Negotiating;
  if (name == "granted") return NegotiationStatus::Granted;
  if (name == "refused") return NegotiationStatus::Refused;
  throw ProvenanceError("unknown status '" + std::string(name) + "'");
}

std::vector<SiteRecord> aggregate_sites(std::span<const IndexRow> index, std::string_view batch) {
  std::map<std::string, int> counts;
  for (const IndexRow& row : index) {
    std::string host = url_host(row.url);
    if (host.empty()) host = "(unknown)";
    ++counts[host];
  }
  std::vector<SiteRecord> records;
  records.reserve(counts.size());
  for (auto& [domain, pages] : counts) {
    SiteRecord record;
    record.domain = domain;
    record.pages = pages;
    record.batch = std::string(batch);
    records.push_back(std::move(record));
  }
  std::sort(records.begin(), records.end(), [](const SiteRecord& a, const SiteRecord& b) {
    if (a.pages != b.pages) return a.pages > b.pages;
    return a.domain < b.domain;
  });
  return records;
}

std::vector<SiteRecord> ipr_candidates(std::span<const SiteRecord> records, int min_pages,
                                       IprMode mode) {
  std::vector<SiteRecord> out;
  for (const SiteRecord& record : records) {
    if (mode == IprMode::Bilingual || record.pages >= min_pages) out.push_back(record);
  }
  return out;
}

std::optional<NegotiationStats> negotiation_stats(std::span<const SiteRecord> records) {
  std::vector<long> durations;
  for (const SiteRecord& record : records) {
    if (record.status == NegotiationStatus::Refused) continue;
    if (!record.contact_opened || !record.resolved) continue;
    durations.push_back(record.resolved->days_from_epoch() -
                        record.contact_opened->days_from_epoch());
  }
  if (durations.empty()) return std::nullopt;
  NegotiationStats stats;
  stats.min_days = *std::min_element(durations.begin(), durations.end());
  stats.max_days = *std::max_element(durations.begin(), durations.end());
  double sum = 0;
  for (long d : durations) sum += static_cast<double>(d);
  stats.mean_days = std::lround(sum / static_cast<double>(durations.size()));
  return stats;
}

std::string render_ledger(std::span<const SiteRecord> records) {
  std::string out = "domain\tpages\tbatch\tstatus\tcontact_opened\tresolved\n";
  for (const SiteRecord& r : records) {
    out += r.domain + "\t" + std::to_string(r.pages) + "\t" + r.batch + "\t" +
           std::string(status_name(r.status)) + "\t" +
           (r.contact_opened ? r.contact_opened->str() : "-") + "\t" +
           (r.resolved ? r.resolved->str() : "-") + "\n";
  }
  return out;
}

std::vector<SiteRecord> parse_ledger(std::string_view text) {
  std::vector<SiteRecord> records;
  std::size_t pos = 0;
  bool first = true;
  int line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      if (tab == std::string_view::npos) {
        fields.emplace_back(line.substr(start));
        break;
      }
      fields.emplace_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != 6)
      throw ProvenanceError("ledger line " + std::to_string(line_no) + ": expected 6 fields");
    SiteRecord record;
    record.domain = fields[0];
    record.pages = std::atoi(fields[1].c_str());
    record.batch = fields[2];
    record.status = parse_status(fields[3]);
    if (fields[4] != "-" && !fields[4].empty()) record.contact_opened = CivilDate::parse(fields[4]);
    if (fields[5] != "-" && !fields[5].empty()) record.resolved = CivilDate::parse(fields[5]);
    if (record.contact_opened && record.resolved &&
        record.resolved->days_from_epoch() < record.contact_opened->days_from_epoch())
      throw ProvenanceError("ledger line " + std::to_string(line_no) +
                            ": resolved precedes contact_opened");
    records.push_back(std::move(record));
  }
  return records;
}

std::string render_ipr_report(std::span<const SiteRecord> records, int min_pages, IprMode mode) {
  std::vector<SiteRecord> candidates = ipr_candidates(records, min_pages, mode);
  std::string out;
  out += "IPR triage report\n";
  out += "mode: " + std::string(mode == IprMode::Bilingual ? "bilingual" : "monolingual") + "\n";
  out += "min pages: " + std::to_string(min_pages) +
         (mode == IprMode::Bilingual ? " (ignored: all sources targeted)" : "") + "\n";
  out += "sites: " + std::to_string(records.size()) +
         ", candidates: " + std::to_string(candidates.size()) + "\n";
  long total_pages = 0;
  for (const SiteRecord& r : records) total_pages += r.pages;
  out += "pages: " + std::to_string(total_pages) + "\n";
  out += "\ndomain\tpages\tstatus\topened\tresolved\n";
  for (const SiteRecord& r : candidates) {
    out += r.domain + "\t" + std::to_string(r.pages) + "\t" + std::string(status_name(r.status)) +
           "\t" + (r.contact_opened ? r.contact_opened->str() : "-") + "\t" +
           (r.resolved ? r.resolved->str() : "-") + "\n";
  }
  auto stats = negotiation_stats(candidates);
  out += "\n";
  if (stats) {
    out += "negotiation duration (days): min " + std::to_string(stats->min_days) + ", max " +
           std::to_string(stats->max_days) + ", mean " + std::to_string(stats->mean_days) + "\n";
  } else {
    out += "negotiation duration: no resolved negotiations yet\n";
  }
  out += "benchmark (monolingual collections): 1-339 days, mean 66\n";
  out += "benchmark (bilingual collections): 8-344 days, mean 176\n";
  return out;
}

}  // namespace corpusmill
