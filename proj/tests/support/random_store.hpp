#pragma once

#include <algorithm>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

namespace macronet::testing {

// A small random ingestion CSV (header included): up to `max_series` series
// drawn from the report inputs, each a contiguous run inside an
// `max_quarters`-quarter window starting at 2013Q3.
inline std::string random_store_csv(std::mt19937_64& rng, int max_series = 10,
                                    int max_quarters = 8) {
  struct Candidate {
    const char* prefix;  // fields before unit
    const char* unit;
    const char* adjustment;
    bool monthly_ok;
  };
  static const std::vector<Candidate> kCandidates = {
      {"L_MFI,LOANS,,MFI_EXCL_ECB_NCB,MFI", "EUR_MILLIONS", "SWDA", false},
      {"L_HH,LOANS,,MFI excl. ECB&NCB,HH&NPISH", "EUR_MILLIONS", "SWDA", false},
      {"L_NFC,LOANS,,MFI_EXCL,NFC", "EUR_MILLIONS", "SWDA", false},
      {"L_GG,LOANS,,MFI_EXCL,GG", "EUR_MILLIONS", "SWDA", false},
      {"L_ICPF,LOANS,,MFI_EXCL,IC_PF", "EUR_MILLIONS", "SWDA", false},
      {"L_FC,LOANS,,MFI_EXCL,FC_EXCL", "EUR_MILLIONS", "SWDA", false},
      {"GDP,INDICATOR,,,", "CHAIN_LINKED_VOLUME", "SWDA", false},
      {"HICP,INDICATOR,,,", "INDEX_2015_100", "SWDA", false},
      {"TOTAL_ASSETS:MFI_EXCL,INDICATOR,,,", "EUR_MILLIONS", "NSA", false},
      {"A1,APP,CBPP3,ECB_NCB,MFI_EXCL", "EUR_MILLIONS", "NSA", true},
      {"A2,APP,ABSPP,,", "EUR_MILLIONS", "NSA", true},
      {"A3,APP,PSPP,ECB&NCB,MFI_EXCL_ECB_NCB", "EUR_MILLIONS", "NSA", true},
      {"A4,APP,CSPP,,", "EUR_MILLIONS", "NSA", true},
  };
  std::vector<std::size_t> order(kCandidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const int n = std::uniform_int_distribution<int>(1, max_series)(rng);

  auto uniform = [&](long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
  };
  std::string csv = "series_id,kind,programme,creditor,debtor,unit,adjustment,freq,period,value\n";
  char buf[160];
  for (int i = 0; i < n; ++i) {
    const Candidate& c = kCandidates[order[i]];
    // Biased toward full-length runs so most stores span the event window.
    const int first = uniform(0, 1) == 0 ? 0 : static_cast<int>(uniform(0, max_quarters - 1));
    const int last =
        uniform(0, 19) < 19 ? max_quarters - 1 : static_cast<int>(uniform(first, max_quarters - 1));
    const bool monthly = c.monthly_ok && uniform(0, 1) == 1;
    for (int q = first; q <= last; ++q) {
      const int index = 2 + q;  // 2013Q3 is index 2 of 2013
      const int year = 2013 + index / 4;
      const int quarter = index % 4 + 1;
      // Mostly large positive values, occasionally zero.
      const long long cents = uniform(0, 19) == 0 ? 0 : uniform(1, 99'999'999'999LL);
      const int months = monthly ? static_cast<int>(uniform(1, 3)) : 1;
      for (int m = 0; m < months; ++m) {
        const long long v = monthly && m + 1 < months ? uniform(0, 99'999'999'999LL) : cents;
        if (monthly) {
          std::snprintf(buf, sizeof buf, "%s,%s,%s,M,%04d-%02d,%lld.%02lld\n", c.prefix, c.unit,
                        c.adjustment, year, quarter * 3 - months + m + 1, v / 100, v % 100);
        } else {
          std::snprintf(buf, sizeof buf, "%s,%s,%s,Q,%04dQ%d,%lld.%02lld\n", c.prefix, c.unit,
                        c.adjustment, year, quarter, v / 100, v % 100);
        }
        csv += buf;
      }
    }
  }
  return csv;
}

}  // namespace macronet::testing
