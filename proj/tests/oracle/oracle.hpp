#pragma once

// Brute-force reference for cross-checking the library: reads the ingestion
// CSV text directly and answers the report questions with plain loops over
// the raw rows. Shares no code with macronet::core.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

// key text ("LOANS:MFI_EXCL->NFC", "APP/PSPP:ECB_NCB->MFI_EXCL", "GDP") ->
// quarter text ("2017Q2") -> value in cents.
using Table = std::map<std::string, std::map<std::string, long long>>;

// Adds the rows of one CSV document. Monthly rows keep the latest month of
// each quarter. Returns false on a row it cannot read.
bool scan_csv(const std::string& text, Table& table);

std::optional<long long> value(const Table& t, const std::string& key, const std::string& quarter);

std::string quarter_of(int year, int month);
std::string previous_quarter(const std::string& quarter);
// Smallest last quarter over all series; empty when the table is empty.
std::string latest_common_quarter(const Table& t);

// (end / baseline - 1) * 100, or nothing when a value is absent or the
// baseline is not positive.
std::optional<double> growth(const Table& t, const std::string& key, const std::string& baseline,
                             const std::string& end);

struct Shares {
  bool available = false;  // false when there is no usable denominator or no edge at all
  std::optional<double> app;
  std::map<std::string, double> loans;  // by debtor id
  std::optional<double> intra_financial;
  std::optional<double> real_sector;
  // Every edge share at the quarter, keyed like the series ("APP:ECB_NCB->MFI_EXCL").
  std::map<std::string, double> edges;
};

// Shares of TOTAL_ASSETS:MFI_EXCL at `quarter`, all four APP programmes.
Shares shares_at(const Table& t, const std::string& quarter);

}  // namespace oracle
