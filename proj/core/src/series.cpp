#include "macronet/series.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "csv.hpp"

namespace macronet {

// ---------------------------------------------------------------------------
// Keys and labels

std::string_view programme_name(Programme p) {
  switch (p) {
    case Programme::Cbpp3: return "CBPP3";
    case Programme::Abspp: return "ABSPP";
    case Programme::Pspp: return "PSPP";
    case Programme::Cspp: return "CSPP";
    case Programme::Total: return "TOTAL";
  }
  return "?";
}

Programme parse_programme(std::string_view text) {
  for (Programme p : {Programme::Cbpp3, Programme::Abspp, Programme::Pspp, Programme::Cspp,
                      Programme::Total}) {
    if (text == programme_name(p)) return p;
  }
  throw Error(ErrorCode::SchemaError, "unknown APP programme '" + std::string(text) + "'");
}

namespace {

bool is_label(std::string_view s) {
  if (s.empty() || s.front() < 'A' || s.front() > 'Z') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

}  // namespace

Instrument Instrument::app(std::optional<Programme> programme) {
  return Instrument(InstrumentKind::App, {}, programme);
}

Instrument Instrument::labeled(std::string label) {
  if (!is_label(label) || label == "LOANS" || label == "APP" || label == "INDICATOR") {
    throw Error(ErrorCode::SchemaError, "invalid instrument label '" + label + "'");
  }
  return Instrument(InstrumentKind::Labeled, std::move(label), std::nullopt);
}

Instrument Instrument::parse(std::string_view text) {
  if (text == "LOANS") return loans();
  if (text == "APP") return app();
  if (text.substr(0, 4) == "APP/") return app(parse_programme(text.substr(4)));
  return labeled(std::string(text));
}

std::string Instrument::str() const {
  switch (kind_) {
    case InstrumentKind::Loans: return "LOANS";
    case InstrumentKind::App:
      return programme_ ? "APP/" + std::string(programme_name(*programme_)) : "APP";
    case InstrumentKind::Labeled: return label_;
  }
  return "?";
}

SeriesKey SeriesKey::parse(std::string_view text) {
  const auto arrow = text.find("->");
  if (arrow == std::string_view::npos) {
    if (text.empty() || text.find(',') != std::string_view::npos) {
      throw Error(ErrorCode::SchemaError, "invalid indicator name '" + std::string(text) + "'");
    }
    return indicator(std::string(text));
  }
  const auto colon = text.rfind(':', arrow);
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::SchemaError, "invalid series key '" + std::string(text) + "'");
  }
  return exposure(Instrument::parse(text.substr(0, colon)),
                  parse_sector(text.substr(colon + 1, arrow - colon - 1)),
                  parse_sector(text.substr(arrow + 2)));
}

bool SeriesKey::is_stock() const {
  if (is_exposure()) return true;
  return as_indicator().name.rfind("TOTAL_ASSETS:", 0) == 0;
}

std::string SeriesKey::str() const {
  if (!is_exposure()) return as_indicator().name;
  const auto& e = as_exposure();
  return e.instrument.str() + ":" + std::string(sector_id(e.creditor)) + "->" +
         std::string(sector_id(e.debtor));
}

std::string_view unit_name(Unit u) {
  switch (u) {
    case Unit::EurMillions: return "EUR_MILLIONS";
    case Unit::Index2015: return "INDEX_2015_100";
    case Unit::ChainLinkedVolume: return "CHAIN_LINKED_VOLUME";
  }
  return "?";
}

Unit parse_unit(std::string_view text) {
  for (Unit u : {Unit::EurMillions, Unit::Index2015, Unit::ChainLinkedVolume}) {
    if (text == unit_name(u)) return u;
  }
  throw Error(ErrorCode::SchemaError, "unknown unit '" + std::string(text) + "'");
}

std::string_view adjustment_name(Adjustment a) {
  switch (a) {
    case Adjustment::Swda: return "SWDA";
    case Adjustment::Nsa: return "NSA";
    case Adjustment::Unknown: return "UNKNOWN";
  }
  return "?";
}

Adjustment parse_adjustment(std::string_view text) {
  if (text.empty()) return Adjustment::Unknown;
  for (Adjustment a : {Adjustment::Swda, Adjustment::Nsa, Adjustment::Unknown}) {
    if (text == adjustment_name(a)) return a;
  }
  throw Error(ErrorCode::SchemaError, "unknown adjustment '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Store

const Amount* QuarterlySeries::find(Quarter q) const {
  auto it = values.find(q);
  return it == values.end() ? nullptr : &it->second;
}

const QuarterlySeries* SeriesStore::find(const SeriesKey& key) const {
  auto it = series_.find(key);
  return it == series_.end() ? nullptr : &it->second;
}

const QuarterlySeries& SeriesStore::at(const SeriesKey& key) const {
  if (const auto* s = find(key)) return *s;
  throw Error(ErrorCode::MissingSeries, key.str());
}

void SeriesStore::insert(QuarterlySeries series) {
  SeriesKey key = series.key;
  if (!series_.emplace(key, std::move(series)).second) {
    throw Error(ErrorCode::InvalidArgument, "duplicate series " + key.str());
  }
}

std::optional<std::pair<Quarter, Quarter>> SeriesStore::span() const {
  std::optional<std::pair<Quarter, Quarter>> out;
  for (const auto& [key, s] : series_) {
    if (s.values.empty()) continue;
    if (!out) {
      out.emplace(s.first(), s.last());
    } else {
      out->first = std::min(out->first, s.first());
      out->second = std::max(out->second, s.last());
    }
  }
  return out;
}

std::optional<Quarter> SeriesStore::latest_common_quarter() const {
  std::optional<Quarter> out;
  for (const auto& [key, s] : series_) {
    if (s.values.empty()) continue;
    out = out ? std::min(*out, s.last()) : s.last();
  }
  return out;
}

std::string Diagnostic::str() const {
  std::string out = severity == Severity::Error ? "error" : "warning";
  if (line != 0) out += ": line " + std::to_string(line);
  out += ": " + std::string(to_string(code)) + ": " + message;
  return out;
}

namespace {

const Diagnostic* first_error(const IngestReport& r) {
  for (const auto& d : r.diagnostics) {
    if (d.severity == Diagnostic::Severity::Error) return &d;
  }
  return nullptr;
}

std::string error_summary(const IngestReport& r) {
  const Diagnostic* d = first_error(r);
  std::string msg = d ? d->message : "ingestion failed";
  std::size_t errors = std::count_if(r.diagnostics.begin(), r.diagnostics.end(), [](const auto& x) {
    return x.severity == Diagnostic::Severity::Error;
  });
  if (errors > 1) msg += " (+" + std::to_string(errors - 1) + " more)";
  return msg;
}

}  // namespace

IngestError::IngestError(IngestReport report)
    : Error(first_error(report) ? first_error(report)->code : ErrorCode::SchemaError,
            error_summary(report), first_error(report) ? first_error(report)->line : 0),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// Monthly -> quarterly

EndOfQuarterResult end_of_quarter(const std::map<Month, Amount>& monthly) {
  EndOfQuarterResult out;
  // Months are ordered, so the last write per quarter is its latest month.
  std::map<Quarter, Month> latest;
  for (const auto& [month, amount] : monthly) {
    const Quarter q = Quarter::of(month);
    out.values[q] = amount;
    latest[q] = month;
  }
  for (const auto& [q, month] : latest) {
    if (month != q.last_month()) out.partial.push_back(q);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation shared by ingestion, merge and load

namespace {

using Severity = Diagnostic::Severity;

void add(IngestReport& r, Severity sev, ErrorCode code, std::size_t line, std::string message) {
  r.diagnostics.push_back(Diagnostic{sev, code, line, std::move(message)});
}

// Interior gaps: strict policy errors, otherwise the series is flagged.
void check_gaps(QuarterlySeries& s, GapPolicy policy, IngestReport& r) {
  if (s.values.empty()) return;
  const int expected = quarter_count(s.first(), s.last());
  if (static_cast<int>(s.values.size()) == expected) {
    s.gappy = false;
    return;
  }
  std::string missing;
  int listed = 0;
  for (Quarter q = s.first(); q < s.last(); q = q.next()) {
    if (!s.values.count(q) && listed++ < 3) missing += (missing.empty() ? "" : ", ") + q.str();
  }
  const std::string msg = s.key.str() + " has " + std::to_string(expected - s.values.size()) +
                          " interior gap(s): " + missing;
  if (policy == GapPolicy::Strict) {
    add(r, Severity::Error, ErrorCode::GapError, 0, msg);
  } else {
    s.gappy = true;
    add(r, Severity::Warning, ErrorCode::GapError, 0, msg);
  }
}

// A layer may reach the composite MFI or its leaves as debtor, never both.
void check_composites(const SeriesStore& store, IngestReport& r) {
  std::map<Instrument, std::set<Sector>> debtors;
  for (const auto& [key, s] : store.series()) {
    if (!key.is_exposure()) continue;
    debtors[key.as_exposure().instrument.layer()].insert(key.as_exposure().debtor);
  }
  for (const auto& [layer, set] : debtors) {
    for (Sector composite : kAllSectors) {
      if (is_leaf(composite) || !set.count(composite)) continue;
      for (Sector leaf : constituents(composite)) {
        if (set.count(leaf)) {
          add(r, Severity::Error, ErrorCode::CompositeConflict, 0,
              layer.str() + " has debtors " + std::string(sector_id(composite)) + " and its leaf " +
                  std::string(sector_id(leaf)));
        }
      }
    }
  }
}

void fill_period(SeriesStore& store) {
  if (auto span = store.span()) {
    store.manifest().period_from = span->first;
    store.manifest().period_to = span->second;
  }
}

// ---------------------------------------------------------------------------
// CSV ingestion

constexpr std::array<std::string_view, 10> kColumns = {
    "series_id", "kind", "programme", "creditor", "debtor",
    "unit",      "adjustment", "freq", "period",  "value"};

enum class Freq { Monthly, Quarterly };

struct PendingSeries {
  Unit unit{};
  Adjustment adjustment{};
  Freq freq{};
  std::size_t first_line = 0;
  std::map<Month, Amount> monthly;
  std::map<Quarter, Amount> quarterly;
  std::map<Month, std::size_t> month_lines;
  std::map<Quarter, std::size_t> quarter_lines;
};

struct ParsedRow {
  SeriesKey key = SeriesKey::indicator("?");
  Unit unit{};
  Adjustment adjustment{};
  Freq freq{};
  std::optional<Month> month;
  std::optional<Quarter> quarter;
  Amount value;
};

ParsedRow parse_row(const std::vector<std::string>& f) {
  ParsedRow row;
  const std::string& id = f[0];
  const std::string& kind = f[1];
  const std::string& programme = f[2];
  const std::string& creditor = f[3];
  const std::string& debtor = f[4];

  if (kind == "INDICATOR") {
    if (!programme.empty() || !creditor.empty() || !debtor.empty()) {
      throw Error(ErrorCode::SchemaError, "INDICATOR rows take no programme/creditor/debtor");
    }
    if (id.empty() || id.find("->") != std::string::npos) {
      throw Error(ErrorCode::SchemaError, "invalid indicator series_id '" + id + "'");
    }
    row.key = SeriesKey::indicator(id);
  } else if (kind == "APP") {
    const Programme p = programme.empty() ? Programme::Total : parse_programme(programme);
    if (p == Programme::Total && !programme.empty()) {
      throw Error(ErrorCode::SchemaError, "programme must be CBPP3, ABSPP, PSPP, CSPP or empty");
    }
    const Sector c = creditor.empty() ? Sector::EcbNcb : parse_sector(creditor);
    const Sector d = debtor.empty() ? Sector::MfiExcl : parse_sector(debtor);
    if (c != Sector::EcbNcb || d != Sector::MfiExcl) {
      throw Error(ErrorCode::SchemaError, "APP holdings run from ECB_NCB to MFI_EXCL");
    }
    row.key = SeriesKey::exposure(Instrument::app(p), c, d);
  } else {
    if (!programme.empty()) {
      throw Error(ErrorCode::SchemaError, "programme is only valid with kind APP");
    }
    Instrument instrument = kind == "LOANS" ? Instrument::loans() : Instrument::labeled(kind);
    if (creditor.empty() || debtor.empty()) {
      throw Error(ErrorCode::SchemaError, "exposure rows need creditor and debtor");
    }
    row.key = SeriesKey::exposure(std::move(instrument), parse_sector(creditor),
                                  parse_sector(debtor));
  }

  row.unit = parse_unit(f[5]);
  row.adjustment = parse_adjustment(f[6]);
  if (f[7] == "M") {
    row.freq = Freq::Monthly;
    row.month = Month::parse(f[8]);
  } else if (f[7] == "Q") {
    row.freq = Freq::Quarterly;
    row.quarter = Quarter::parse(f[8]);
  } else {
    throw Error(ErrorCode::SchemaError, "freq must be M or Q, got '" + f[7] + "'");
  }
  row.value = Amount::parse(f[9]);
  return row;
}

template <typename Period>
void record_point(std::map<Period, Amount>& values, std::map<Period, std::size_t>& lines,
                  const Period& period, Amount value, std::size_t line, const SeriesKey& key,
                  DuplicatePolicy policy, IngestReport& report) {
  auto it = lines.find(period);
  if (it != lines.end()) {
    const std::string msg = key.str() + " at " + period.str() + " (first seen on line " +
                            std::to_string(it->second) + ")";
    if (policy == DuplicatePolicy::Strict) {
      add(report, Severity::Error, ErrorCode::DuplicatePoint, line, msg);
      ++report.rows_rejected;
      return;
    }
    add(report, Severity::Warning, ErrorCode::DuplicatePoint, line, msg + ", later row kept");
  }
  values[period] = value;
  lines[period] = line;
}

}  // namespace

SeriesStore ingest_csv(std::istream& source, const IngestOptions& options, IngestReport* out) {
  IngestReport report;
  SeriesStore store;
  std::map<SeriesKey, PendingSeries> pending;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);

    if (!header_seen) {
      header_seen = true;
      std::vector<std::string> header;
      if (!detail::split_csv_line(line, header) || header.size() != kColumns.size() ||
          !std::equal(header.begin(), header.end(), kColumns.begin())) {
        add(report, Severity::Error, ErrorCode::SchemaError, line_no,
            "header must be series_id,kind,programme,creditor,debtor,unit,adjustment,freq,period,"
            "value");
        throw IngestError(std::move(report));
      }
      continue;
    }
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    ++report.rows_read;
    std::vector<std::string> fields;
    if (!detail::split_csv_line(line, fields) || fields.size() != kColumns.size()) {
      add(report, Severity::Error, ErrorCode::SchemaError, line_no,
          "expected " + std::to_string(kColumns.size()) + " fields, got " +
              std::to_string(fields.size()));
      ++report.rows_rejected;
      continue;
    }

    ParsedRow row;
    try {
      row = parse_row(fields);
    } catch (const Error& e) {
      add(report, Severity::Error, e.code(), line_no, e.what());
      ++report.rows_rejected;
      continue;
    }

    if (row.key.is_stock() && row.value < Amount{}) {
      add(report, Severity::Error, ErrorCode::NegativeStock, line_no,
          row.key.str() + " at " + fields[8] + " is " + row.value.str());
      ++report.rows_rejected;
      continue;
    }

    auto [it, fresh] = pending.try_emplace(row.key);
    PendingSeries& p = it->second;
    if (fresh) {
      p.unit = row.unit;
      p.adjustment = row.adjustment;
      p.freq = row.freq;
      p.first_line = line_no;
    } else if (p.unit != row.unit || p.adjustment != row.adjustment || p.freq != row.freq) {
      add(report, Severity::Error, ErrorCode::SchemaError, line_no,
          row.key.str() + " changes unit, adjustment or freq (first defined on line " +
              std::to_string(p.first_line) + ")");
      ++report.rows_rejected;
      continue;
    }

    if (row.month) {
      record_point(p.monthly, p.month_lines, *row.month, row.value, line_no, row.key,
                   options.duplicates, report);
    } else {
      record_point(p.quarterly, p.quarter_lines, *row.quarter, row.value, line_no, row.key,
                   options.duplicates, report);
    }
  }
  if (!header_seen) {
    add(report, Severity::Error, ErrorCode::SchemaError, 1, "empty input, header required");
    throw IngestError(std::move(report));
  }

  for (auto& [key, p] : pending) {
    QuarterlySeries s{key, p.unit, p.adjustment, false, {}};
    if (p.freq == Freq::Monthly) {
      auto reduced = end_of_quarter(p.monthly);
      for (Quarter q : reduced.partial) {
        add(report, Severity::Warning, ErrorCode::PartialQuarter, 0,
            key.str() + " " + q.str() + " lacks its last month; using the latest month present");
      }
      s.values = std::move(reduced.values);
    } else {
      s.values = std::move(p.quarterly);
    }
    check_gaps(s, options.gaps, report);
    store.insert(std::move(s));
  }
  check_composites(store, report);

  if (first_error(report)) throw IngestError(std::move(report));

  store.manifest().sources.push_back(SourceInfo{options.source_name, report.rows_read});
  fill_period(store);
  if (out) *out = std::move(report);
  return store;
}

void merge_store(SeriesStore& into, const SeriesStore& from, const IngestOptions& options,
                 IngestReport* out) {
  IngestReport report;
  SeriesStore merged;
  merged.manifest() = into.manifest();

  std::map<SeriesKey, QuarterlySeries> all = into.series();
  for (const auto& [key, incoming] : from.series()) {
    auto it = all.find(key);
    if (it == all.end()) {
      all.emplace(key, incoming);
      continue;
    }
    QuarterlySeries& existing = it->second;
    if (existing.unit != incoming.unit || existing.adjustment != incoming.adjustment) {
      add(report, Severity::Error, ErrorCode::SchemaError, 0,
          key.str() + " differs in unit or adjustment between sources");
      continue;
    }
    for (const auto& [q, v] : incoming.values) {
      if (existing.values.count(q)) {
        if (options.duplicates == DuplicatePolicy::Strict) {
          add(report, Severity::Error, ErrorCode::DuplicatePoint, 0,
              key.str() + " at " + q.str() + " appears in more than one source");
          continue;
        }
      }
      existing.values[q] = v;
    }
  }
  for (auto& [key, s] : all) {
    check_gaps(s, options.gaps, report);
    merged.insert(std::move(s));
  }
  check_composites(merged, report);
  if (first_error(report)) throw IngestError(std::move(report));

  for (const auto& src : from.manifest().sources) merged.manifest().sources.push_back(src);
  if (!merged.manifest().ingested_at) merged.manifest().ingested_at = from.manifest().ingested_at;
  fill_period(merged);
  into = std::move(merged);
  if (out) *out = std::move(report);
}

// ---------------------------------------------------------------------------
// Queries

Amount get(const SeriesStore& store, const SeriesKey& key, Quarter quarter) {
  const QuarterlySeries& s = store.at(key);
  if (const Amount* v = s.find(quarter)) return *v;
  throw Error(ErrorCode::MissingQuarter, key.str() + " at " + quarter.str());
}

std::vector<Programme> app_programmes_at(const SeriesStore& store, Quarter quarter,
                                         const std::set<Programme>& programmes) {
  std::vector<Programme> out;
  for (Programme p : kAppProgrammes) {
    if (!programmes.count(p)) continue;
    const auto* s = store.find(SeriesKey::exposure(Instrument::app(p), Sector::EcbNcb,
                                                   Sector::MfiExcl));
    if (s && s->find(quarter)) out.push_back(p);
  }
  return out;
}

Amount app_total(const SeriesStore& store, Quarter quarter, const std::set<Programme>& programmes) {
  bool any = false;
  Amount total;
  for (Programme p : kAppProgrammes) {
    const auto* s = store.find(SeriesKey::exposure(Instrument::app(p), Sector::EcbNcb,
                                                   Sector::MfiExcl));
    if (!s) continue;
    any = true;
    if (!programmes.count(p)) continue;
    if (const Amount* v = s->find(quarter)) total += *v;
  }
  if (!any) throw Error(ErrorCode::MissingSeries, "no APP programme series in store");
  return total;
}

}  // namespace macronet
