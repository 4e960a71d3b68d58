#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "macronet/amount.hpp"
#include "macronet/calendar.hpp"
#include "macronet/error.hpp"
#include "macronet/taxonomy.hpp"

namespace macronet {

enum class InstrumentKind { Loans, App, Labeled };

enum class Programme { Cbpp3, Abspp, Pspp, Cspp, Total };

inline constexpr std::array<Programme, 4> kAppProgrammes = {
    Programme::Cbpp3, Programme::Abspp, Programme::Pspp, Programme::Cspp};

std::string_view programme_name(Programme p);
Programme parse_programme(std::string_view text);

// A financial instrument layer. Labeled kinds (BONDS, EQUITY, ...) are carried
// through ingestion and export but take no part in APP or share semantics.
class Instrument {
 public:
  static Instrument loans() { return Instrument(InstrumentKind::Loans, {}, std::nullopt); }
  static Instrument app(std::optional<Programme> programme = std::nullopt);
  static Instrument labeled(std::string label);

  // "LOANS", "APP", "APP/CBPP3", or an opaque upper-case label.
  static Instrument parse(std::string_view text);

  InstrumentKind kind() const { return kind_; }
  const std::optional<Programme>& programme() const { return programme_; }
  const std::string& label() const { return label_; }

  // Same layer, ignoring the APP programme tag.
  Instrument layer() const { return Instrument(kind_, label_, std::nullopt); }

  std::string str() const;

  auto operator<=>(const Instrument&) const = default;

 private:
  Instrument(InstrumentKind kind, std::string label, std::optional<Programme> programme)
      : kind_(kind), label_(std::move(label)), programme_(programme) {}

  InstrumentKind kind_ = InstrumentKind::Loans;
  std::string label_;
  std::optional<Programme> programme_;
};

struct ExposureKey {
  Instrument instrument;
  Sector creditor;
  Sector debtor;
  auto operator<=>(const ExposureKey&) const = default;
};

struct IndicatorKey {
  std::string name;
  auto operator<=>(const IndicatorKey&) const = default;
};

// Identifies one stored series. Text form: "LOANS:MFI_EXCL->NFC",
// "APP/PSPP:ECB_NCB->MFI_EXCL", or a bare indicator name such as "GDP".
class SeriesKey {
 public:
  SeriesKey(ExposureKey e) : value_(std::move(e)) {}
  SeriesKey(IndicatorKey i) : value_(std::move(i)) {}

  static SeriesKey exposure(Instrument instrument, Sector creditor, Sector debtor) {
    return ExposureKey{std::move(instrument), creditor, debtor};
  }
  static SeriesKey indicator(std::string name) { return IndicatorKey{std::move(name)}; }
  static SeriesKey loans(Sector debtor) {
    return exposure(Instrument::loans(), Sector::MfiExcl, debtor);
  }

  static SeriesKey parse(std::string_view text);

  bool is_exposure() const { return std::holds_alternative<ExposureKey>(value_); }
  const ExposureKey& as_exposure() const { return std::get<ExposureKey>(value_); }
  const IndicatorKey& as_indicator() const { return std::get<IndicatorKey>(value_); }

  // Balance-sheet stocks must be nonnegative: every exposure plus TOTAL_ASSETS:*.
  bool is_stock() const;

  std::string str() const;

  auto operator<=>(const SeriesKey&) const = default;

 private:
  std::variant<ExposureKey, IndicatorKey> value_;
};

inline const SeriesKey kTotalAssetsKey = SeriesKey::indicator("TOTAL_ASSETS:MFI_EXCL");

enum class Unit { EurMillions, Index2015, ChainLinkedVolume };
enum class Adjustment { Swda, Nsa, Unknown };

std::string_view unit_name(Unit u);
Unit parse_unit(std::string_view text);
std::string_view adjustment_name(Adjustment a);
Adjustment parse_adjustment(std::string_view text);

struct QuarterlySeries {
  SeriesKey key;
  Unit unit = Unit::EurMillions;
  Adjustment adjustment = Adjustment::Unknown;
  bool gappy = false;
  std::map<Quarter, Amount> values;

  Quarter first() const { return values.begin()->first; }
  Quarter last() const { return values.rbegin()->first; }
  const Amount* find(Quarter q) const;

  bool operator==(const QuarterlySeries&) const = default;
};

struct SourceInfo {
  std::string name;
  std::size_t rows = 0;
  bool operator==(const SourceInfo&) const = default;
};

struct Manifest {
  std::vector<SourceInfo> sources;
  std::optional<std::string> ingested_at;
  std::optional<Quarter> period_from;
  std::optional<Quarter> period_to;
  bool operator==(const Manifest&) const = default;
};

class SeriesStore {
 public:
  const std::map<SeriesKey, QuarterlySeries>& series() const { return series_; }
  const Manifest& manifest() const { return manifest_; }
  Manifest& manifest() { return manifest_; }

  bool contains(const SeriesKey& key) const { return series_.count(key) != 0; }
  const QuarterlySeries* find(const SeriesKey& key) const;
  const QuarterlySeries& at(const SeriesKey& key) const;  // MissingSeries

  // Throws Error(InvalidArgument) when the key is already present.
  void insert(QuarterlySeries series);

  std::size_t size() const { return series_.size(); }
  bool empty() const { return series_.empty(); }

  // Earliest first quarter and latest last quarter across series.
  std::optional<std::pair<Quarter, Quarter>> span() const;
  // Smallest last quarter across series: the latest quarter every series reaches.
  std::optional<Quarter> latest_common_quarter() const;

  bool operator==(const SeriesStore&) const = default;

 private:
  std::map<SeriesKey, QuarterlySeries> series_;
  Manifest manifest_;
};

enum class GapPolicy { Strict, AllowGaps };
enum class DuplicatePolicy { Strict, LastWins };

struct IngestOptions {
  GapPolicy gaps = GapPolicy::Strict;
  DuplicatePolicy duplicates = DuplicatePolicy::Strict;
  std::string source_name = "<stream>";
};

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Warning;
  ErrorCode code{};
  std::size_t line = 0;  // 0 when not tied to an input line
  std::string message;

  std::string str() const;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_rejected = 0;
  std::vector<Diagnostic> diagnostics;
};

// Thrown by ingest_csv when any row or series fails validation. Carries every
// diagnostic collected; code()/line() describe the first error.
class IngestError : public Error {
 public:
  IngestError(IngestReport report);
  const IngestReport& report() const { return report_; }

 private:
  IngestReport report_;
};

// Reads one CSV document with header
// series_id,kind,programme,creditor,debtor,unit,adjustment,freq,period,value.
SeriesStore ingest_csv(std::istream& source, const IngestOptions& options,
                       IngestReport* report = nullptr);

// Adds every series of `from` into `into`; overlapping points follow the
// duplicate policy, and the merged store is revalidated.
void merge_store(SeriesStore& into, const SeriesStore& from, const IngestOptions& options,
                 IngestReport* report = nullptr);

struct EndOfQuarterResult {
  std::map<Quarter, Amount> values;
  // Quarters whose last calendar month was not present.
  std::vector<Quarter> partial;
};

EndOfQuarterResult end_of_quarter(const std::map<Month, Amount>& monthly);

Amount get(const SeriesStore& store, const SeriesKey& key, Quarter quarter);

// Sum of the APP programme holdings present at `quarter`, restricted to
// `programmes`. Programmes without a value at that quarter contribute zero.
Amount app_total(const SeriesStore& store, Quarter quarter,
                 const std::set<Programme>& programmes = {kAppProgrammes.begin(),
                                                          kAppProgrammes.end()});

// Programme series in the store whose tag is in `programmes` and which have a
// value at `quarter`.
std::vector<Programme> app_programmes_at(const SeriesStore& store, Quarter quarter,
                                         const std::set<Programme>& programmes);

// Canonical JSON, version header {"macronet_store": 1}.
std::string save_store(const SeriesStore& store);
void save_store(const SeriesStore& store, std::ostream& sink);
SeriesStore load_store(std::string_view text);
SeriesStore load_store(std::istream& source);

}  // namespace macronet
