#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "macronet/amount.hpp"
#include "macronet/calendar.hpp"
#include "macronet/macronet.hpp"
#include "macronet/series.hpp"

namespace macronet {

enum class BaselineRule { LastFullQuarterBefore, QuarterOfEvent };

std::string_view baseline_rule_name(BaselineRule rule);
BaselineRule parse_baseline_rule(std::string_view text);

inline const Date kQeStart{2014, 10, 20};

Quarter baseline_for(const Date& event_date, BaselineRule rule);

struct EventWindow {
  Date event_date = kQeStart;
  BaselineRule rule = BaselineRule::LastFullQuarterBefore;
  Quarter baseline;
  Quarter end;
};

struct GrowthResult {
  SeriesKey key;
  Quarter baseline;
  Quarter end;
  Amount baseline_value;
  Amount end_value;
  double growth_pct = 0.0;  // unrounded
};

// Simple percent change (end / baseline - 1) * 100.
GrowthResult growth_since(const SeriesStore& store, const SeriesKey& key, Quarter baseline,
                          Quarter end);

// Row order of the growth table: the six bank-loan debtors, then GDP and HICP.
struct ReportRow {
  std::string label;
  SeriesKey key;
};
const std::vector<ReportRow>& report_rows();

struct GrowthCell {
  std::string label;
  SeriesKey key;
  std::optional<GrowthResult> result;
  std::string missing_reason;  // set when result is empty
};

struct ShareCell {
  std::string label;
  std::optional<double> share_pct;
  std::string missing_reason;
};

struct ReportShares {
  Quarter quarter;
  std::optional<Denominator> denominator;
  ShareCell app;
  std::vector<ShareCell> loans;  // per debtor, report_rows() order
  ShareCell intra_financial;     // MFI + IC&PF + FC excl.
  ShareCell real_sector;         // HH&NPISH + NFC
};

struct ReportOptions {
  Date event_date = kQeStart;
  BaselineRule rule = BaselineRule::LastFullQuarterBefore;
  std::optional<Quarter> baseline_override;
  std::optional<Quarter> end_override;
  SnapshotOptions snapshot;
  bool allow_partial = false;
};

struct Report {
  EventWindow window;
  std::vector<GrowthCell> growth;
  ReportShares shares;

  bool complete() const;
};

// Growth for each report row over the event window plus loan/APP shares of
// banking total assets at the window end. Without allow_partial the first
// missing input is rethrown.
Report paper_report(const SeriesStore& store, const ReportOptions& options);

std::string render_report_text(const Report& report);
// `config` is echoed verbatim under "config".
std::string render_report_json(const Report& report, const std::string& config_json = "null");

struct SeriesTable {
  std::vector<SeriesKey> columns;
  std::vector<Quarter> rows;
  std::vector<std::vector<std::optional<Amount>>> cells;  // [row][column]

  std::string to_csv() const;
};

SeriesTable series_table(const SeriesStore& store, const std::vector<SeriesKey>& keys,
                         Quarter from, Quarter to, bool allow_partial = false);

}  // namespace macronet
