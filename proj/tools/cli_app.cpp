#include "cli_app.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "macronet/analysis.hpp"
#include "macronet/macronet.hpp"
#include "macronet/series.hpp"

namespace macronet::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string store;
  std::string format;
  bool allow_partial = false;
  bool stamp = false;
  std::string out;

  std::vector<std::string> files;
  bool allow_gaps = false;
  bool last_wins = false;

  std::string quarter;
  std::string instruments = "loans,app";
  std::string app_programmes = "cbpp3,abspp,pspp,cspp";
  bool shares = false;
  bool macro = false;
  std::string denominator = "TOTAL_ASSETS:MFI_EXCL";

  std::string event = "2014-10-20";
  std::string baseline_rule = "last-full-quarter-before";
  std::string keys;
  std::string key;
  std::string from;
  std::string to;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Argument parsers: malformed values are usage errors (exit 2).
template <typename F>
auto usage_guard(const std::string& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Quarter quarter_arg(const std::string& flag, const std::string& text) {
  return usage_guard(flag, [&] { return Quarter::parse(text); });
}

std::optional<Quarter> optional_quarter_arg(const std::string& flag, const std::string& text) {
  if (text.empty()) return std::nullopt;
  return quarter_arg(flag, text);
}

std::set<Programme> programmes_arg(const std::string& text) {
  std::set<Programme> out;
  for (const std::string& token : split_list(text)) {
    std::string upper = token;
    for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const Programme p = usage_guard("--app-programmes", [&] { return parse_programme(upper); });
    if (p == Programme::Total) throw UsageError("--app-programmes: TOTAL is not a programme");
    out.insert(p);
  }
  if (out.empty()) throw UsageError("--app-programmes: empty list");
  return out;
}

// Lowercase tokens: loans, app, or the lowercase name of a labeled layer that
// exists in the store. Anything else is a typo and a usage error.
std::set<Instrument> instruments_arg(const std::string& text, const SeriesStore& store) {
  std::set<Instrument> known = {Instrument::loans(), Instrument::app()};
  for (const auto& [key, s] : store.series()) {
    if (key.is_exposure()) known.insert(key.as_exposure().instrument.layer());
  }
  std::set<Instrument> out;
  for (const std::string& token : split_list(text)) {
    bool matched = false;
    for (const Instrument& layer : known) {
      std::string lower = layer.str();
      for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (lower == token) {
        out.insert(layer);
        matched = true;
      }
    }
    if (!matched) throw UsageError("--instruments: unknown instrument '" + token + "'");
  }
  if (out.empty()) throw UsageError("--instruments: empty list");
  return out;
}

std::vector<SeriesKey> keys_arg(const std::string& text) {
  std::vector<SeriesKey> out;
  for (const std::string& token : split_list(text)) {
    if (token == "loans") {
      for (const ReportRow& row : report_rows()) {
        if (row.key.is_exposure()) out.push_back(row.key);
      }
      continue;
    }
    out.push_back(usage_guard("--keys", [&] { return SeriesKey::parse(token); }));
  }
  if (out.empty()) throw UsageError("--keys: empty list");
  return out;
}

std::string resolve_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  const std::string format = cfg.format.empty() ? *allowed.begin() : cfg.format;
  for (const char* a : allowed) {
    if (format == a) return format;
  }
  throw UsageError("--format " + format + " is not supported by '" + cfg.command + "'");
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_json(const Config& cfg) {
  json c = {{"command", cfg.command},
            {"store", cfg.store},
            {"format", cfg.format},
            {"allow_partial", cfg.allow_partial}};
  if (cfg.command == "snapshot") {
    c["quarter"] = cfg.quarter;
    c["instruments"] = cfg.instruments;
    c["app_programmes"] = cfg.app_programmes;
    c["shares"] = cfg.shares;
    c["macro"] = cfg.macro;
    c["denominator"] = cfg.denominator;
  } else if (cfg.command == "report") {
    c["event"] = cfg.event;
    c["baseline_rule"] = cfg.baseline_rule;
    c["baseline"] = cfg.from;
    c["end"] = cfg.to;
    c["app_programmes"] = cfg.app_programmes;
  } else if (cfg.command == "series") {
    c["keys"] = cfg.keys;
    c["from"] = cfg.from;
    c["to"] = cfg.to;
  } else if (cfg.command == "growth") {
    c["key"] = cfg.key;
    c["event"] = cfg.event;
    c["baseline_rule"] = cfg.baseline_rule;
    c["from"] = cfg.from;
    c["to"] = cfg.to;
  }
  if (cfg.stamp) c["generated_at"] = utc_now();
  return c;
}

void emit(const Config& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write " + cfg.out);
}

SeriesStore open_store(const Config& cfg) {
  if (cfg.store.empty()) throw UsageError("no store: pass --store or set MACRONET_STORE");
  std::ifstream in(cfg.store, std::ios::binary);
  if (!in) throw UsageError("cannot read store " + cfg.store);
  return load_store(in);
}

// ---------------------------------------------------------------------------

int cmd_ingest(const Config& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = resolve_format(cfg, {"text", "json"});
  const std::string dest = cfg.out.empty() ? cfg.store : cfg.out;
  if (dest.empty()) throw UsageError("ingest: pass --out or --store for the store file");

  IngestOptions options;
  options.gaps = cfg.allow_gaps ? GapPolicy::AllowGaps : GapPolicy::Strict;
  options.duplicates = cfg.last_wins ? DuplicatePolicy::LastWins : DuplicatePolicy::Strict;

  std::vector<std::pair<std::string, std::ifstream>> inputs;
  for (const std::string& path : cfg.files) {
    std::ifstream in(path, std::ios::binary);
    if (!in || std::filesystem::is_directory(path)) throw UsageError("cannot read " + path);
    inputs.emplace_back(path, std::move(in));
  }

  auto print = [&](const std::string& source, const Diagnostic& d) {
    err << source;
    if (d.line) err << ":" << d.line;
    err << ": " << (d.severity == Diagnostic::Severity::Error ? "error" : "warning") << ": "
        << to_string(d.code) << ": " << d.message << "\n";
  };

  SeriesStore store;
  std::size_t rows = 0;
  std::size_t warnings = 0;
  // Files are read gap-tolerant; the gap policy applies to the merged series.
  IngestOptions per_file = options;
  per_file.gaps = GapPolicy::AllowGaps;
  for (auto& [path, in] : inputs) {
    per_file.source_name = path;
    IngestReport report;
    SeriesStore part;
    try {
      part = ingest_csv(in, per_file, &report);
    } catch (const IngestError& e) {
      for (const Diagnostic& d : e.report().diagnostics) {
        if (d.code != ErrorCode::GapError) print(path, d);
      }
      err << path << ": " << e.report().rows_rejected << " of " << e.report().rows_read
          << " rows rejected\n";
      return kDataError;
    }
    for (const Diagnostic& d : report.diagnostics) {
      if (d.code == ErrorCode::GapError) continue;
      print(path, d);
      ++warnings;
    }
    rows += report.rows_read;
    try {
      merge_store(store, part, per_file);
    } catch (const IngestError& e) {
      for (const Diagnostic& d : e.report().diagnostics) print(path, d);
      return kDataError;
    }
  }
  // Gap policy applies once every file has contributed its points.
  {
    SeriesStore checked;
    IngestReport merged;
    try {
      merge_store(checked, store, options, &merged);
    } catch (const IngestError& e) {
      for (const Diagnostic& d : e.report().diagnostics) print("store", d);
      return kDataError;
    }
    for (const Diagnostic& d : merged.diagnostics) {
      print("store", d);
      ++warnings;
    }
    store = std::move(checked);
  }
  if (cfg.stamp) store.manifest().ingested_at = utc_now();

  {
    std::ofstream file(dest, std::ios::binary);
    if (!file) throw UsageError("cannot write " + dest);
    save_store(store, file);
  }

  const auto span = store.span();
  const std::string span_text = span ? span->first.str() + ".." + span->second.str() : "empty";
  if (format == "json") {
    json summary = {{"macronet_ingest", 1},
                    {"config", config_json(cfg)},
                    {"series", store.size()},
                    {"span", span_text},
                    {"rows", rows},
                    {"rejected", 0},
                    {"warnings", warnings},
                    {"store", dest}};
    out << summary.dump(2) << "\n";
  } else {
    out << store.size() << " series, " << span_text << "\n"
        << rows << " rows from " << inputs.size() << " file(s), 0 rejected, " << warnings
        << " warning(s)\n";
  }
  return kOk;
}

int cmd_snapshot(const Config& cfg, std::ostream& out, std::ostream& err) {
  const std::string format = resolve_format(cfg, {"text", "json", "dot"});
  if (cfg.quarter.empty()) throw UsageError("snapshot: --quarter is required");
  const Quarter quarter = quarter_arg("--quarter", cfg.quarter);
  SnapshotOptions options;
  options.app_programmes = programmes_arg(cfg.app_programmes);
  const SeriesKey denominator =
      usage_guard("--denominator", [&] { return SeriesKey::parse(cfg.denominator); });

  const SeriesStore store = open_store(cfg);
  const std::set<Instrument> layers = instruments_arg(cfg.instruments, store);

  BuildResult built = build_snapshot(store, quarter, layers, options);
  for (const std::string& note : built.diagnostics) err << "note: " << note << "\n";
  Snapshot snap = std::move(built.snapshot);
  if (cfg.shares) snap = normalize_shares(snap, store, denominator);
  if (cfg.macro) snap = aggregate_to_macro(snap);

  if (format == "dot") {
    emit(cfg, export_dot(snap), out);
  } else if (format == "json") {
    json doc = json::parse(export_json(snap));
    doc["config"] = config_json(cfg);
    emit(cfg, doc.dump(2) + "\n", out);
  } else {
    emit(cfg, export_text(snap), out);
  }
  return kOk;
}

int cmd_report(const Config& cfg, std::ostream& out, std::ostream&) {
  const std::string format = resolve_format(cfg, {"text", "json"});
  ReportOptions options;
  options.event_date = usage_guard("--event", [&] { return Date::parse(cfg.event); });
  options.rule = usage_guard("--baseline-rule", [&] { return parse_baseline_rule(cfg.baseline_rule); });
  options.baseline_override = optional_quarter_arg("--baseline", cfg.from);
  options.end_override = optional_quarter_arg("--end", cfg.to);
  options.snapshot.app_programmes = programmes_arg(cfg.app_programmes);
  options.allow_partial = cfg.allow_partial;

  const SeriesStore store = open_store(cfg);
  const Report report = paper_report(store, options);
  if (format == "json") {
    emit(cfg, render_report_json(report, config_json(cfg).dump()), out);
  } else {
    emit(cfg, render_report_text(report), out);
  }
  return kOk;
}

int cmd_series(const Config& cfg, std::ostream& out, std::ostream&) {
  const std::string format = resolve_format(cfg, {"csv", "json", "text"});
  if (cfg.keys.empty()) throw UsageError("series: --keys is required");
  const std::vector<SeriesKey> keys = keys_arg(cfg.keys);
  std::optional<Quarter> from = optional_quarter_arg("--from", cfg.from);
  std::optional<Quarter> to = optional_quarter_arg("--to", cfg.to);

  const SeriesStore store = open_store(cfg);
  for (const SeriesKey& k : keys) {
    const QuarterlySeries& s = store.at(k);
    if (s.values.empty()) continue;
    if (cfg.from.empty()) from = from ? std::min(*from, s.first()) : s.first();
    if (cfg.to.empty()) to = to ? std::max(*to, s.last()) : s.last();
  }
  if (!from || !to) throw Error(ErrorCode::MissingQuarter, "selected series are empty");

  const SeriesTable table = series_table(store, keys, *from, *to, cfg.allow_partial);
  if (format == "csv") {
    emit(cfg, table.to_csv(), out);
    return kOk;
  }
  if (format == "json") {
    json columns = json::array();
    for (const SeriesKey& k : table.columns) columns.push_back(k.str());
    json rows = json::array();
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      json values = json::array();
      for (const auto& cell : table.cells[r]) values.push_back(cell ? json(cell->str()) : json(nullptr));
      rows.push_back({{"quarter", table.rows[r].str()}, {"values", std::move(values)}});
    }
    json doc = {{"macronet_series", 1},
                {"config", config_json(cfg)},
                {"columns", std::move(columns)},
                {"rows", std::move(rows)}};
    emit(cfg, doc.dump(2) + "\n", out);
    return kOk;
  }
  std::ostringstream text;
  text << "quarter";
  for (const SeriesKey& k : table.columns) text << "  " << k.str();
  text << "\n";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    text << table.rows[r].str();
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      const auto& cell = table.cells[r][c];
      const std::string v = cell ? cell->str() : "-";
      const std::size_t width = std::max<std::size_t>(table.columns[c].str().size(), v.size());
      text << "  " << std::string(width - v.size(), ' ') << v;
    }
    text << "\n";
  }
  emit(cfg, text.str(), out);
  return kOk;
}

int cmd_growth(const Config& cfg, std::ostream& out, std::ostream&) {
  const std::string format = resolve_format(cfg, {"text", "json"});
  if (cfg.key.empty()) throw UsageError("growth: --key is required");
  const SeriesKey key = usage_guard("--key", [&] { return SeriesKey::parse(cfg.key); });
  const Date event = usage_guard("--event", [&] { return Date::parse(cfg.event); });
  const BaselineRule rule =
      usage_guard("--baseline-rule", [&] { return parse_baseline_rule(cfg.baseline_rule); });
  const Quarter baseline = optional_quarter_arg("--from", cfg.from).value_or(baseline_for(event, rule));
  std::optional<Quarter> end = optional_quarter_arg("--to", cfg.to);

  const SeriesStore store = open_store(cfg);
  const QuarterlySeries& series = store.at(key);
  if (!end) {
    if (series.values.empty()) throw Error(ErrorCode::MissingQuarter, key.str() + " is empty");
    end = series.last();
  }
  const GrowthResult g = growth_since(store, key, baseline, *end);
  if (format == "json") {
    json doc = {{"macronet_growth", 1},
                {"config", config_json(cfg)},
                {"key", key.str()},
                {"baseline", g.baseline.str()},
                {"end", g.end.str()},
                {"baseline_value", g.baseline_value.str()},
                {"end_value", g.end_value.str()},
                {"growth_pct", format_pct(g.growth_pct)}};
    emit(cfg, doc.dump(2) + "\n", out);
  } else {
    std::string pct = format_pct(g.growth_pct);
    if (pct.front() != '-') pct = "+" + pct;
    emit(cfg,
         key.str() + " " + g.baseline.str() + ".." + g.end.str() + ": " +
             g.baseline_value.str() + " -> " + g.end_value.str() + ", " + pct + "%\n",
         out);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Macro-network of euro-area sector exposures: ingestion, snapshots, QE event study",
               "macronet"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--store", cfg.store, "Store file (JSON)")->envname("MACRONET_STORE");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv", "dot"}));
  app.add_flag("--allow-partial", cfg.allow_partial, "Emit MISSING markers instead of failing");
  app.add_flag("--stamp", cfg.stamp, "Add a wall-clock timestamp to outputs");

  auto* ingest = app.add_subcommand("ingest", "Ingest CSV files into a store");
  ingest->add_option("files", cfg.files, "CSV inputs")->required();
  ingest->add_option("--out", cfg.out, "Store file to write");
  ingest->add_flag("--allow-gaps", cfg.allow_gaps, "Downgrade interior gaps to warnings");
  ingest->add_flag("--last-wins", cfg.last_wins, "Keep the later of duplicate rows");

  auto* snapshot = app.add_subcommand("snapshot", "Build one quarter's macro-network");
  snapshot->add_option("--quarter", cfg.quarter, "Quarter, e.g. 2017Q2");
  snapshot->add_option("--instruments", cfg.instruments, "Comma list: loans,app,...");
  snapshot->add_option("--app-programmes", cfg.app_programmes, "Comma list of APP programmes");
  snapshot->add_flag("--shares", cfg.shares, "Express weights as % of banking total assets");
  snapshot->add_option("--denominator", cfg.denominator, "Share base series key");
  snapshot->add_flag("--macro", cfg.macro, "Aggregate to macro-sectors");
  snapshot->add_option("--out", cfg.out, "Write output to a file");

  auto* report = app.add_subcommand("report", "Event-study growth and share report");
  report->add_option("--event", cfg.event, "Event date YYYY-MM-DD");
  report->add_option("--baseline-rule", cfg.baseline_rule,
                     "last-full-quarter-before | quarter-of-event");
  report->add_option("--baseline", cfg.from, "Override the baseline quarter");
  report->add_option("--end", cfg.to, "Override the end quarter");
  report->add_option("--app-programmes", cfg.app_programmes, "Comma list of APP programmes");
  report->add_option("--out", cfg.out, "Write output to a file");

  auto* series = app.add_subcommand("series", "Emit stored series as a table");
  series->add_option("--keys", cfg.keys, "Comma list of series keys, or 'loans'");
  series->add_option("--from", cfg.from, "First quarter");
  series->add_option("--to", cfg.to, "Last quarter");
  series->add_option("--out", cfg.out, "Write output to a file");

  auto* growth = app.add_subcommand("growth", "Percent change of one series");
  growth->add_option("--key", cfg.key, "Series key");
  growth->add_option("--from", cfg.from, "Baseline quarter (default: from --event)");
  growth->add_option("--to", cfg.to, "End quarter (default: series end)");
  growth->add_option("--event", cfg.event, "Event date YYYY-MM-DD");
  growth->add_option("--baseline-rule", cfg.baseline_rule,
                     "last-full-quarter-before | quarter-of-event");
  growth->add_option("--out", cfg.out, "Write output to a file");

  std::vector<const char*> args;
  for (const std::string& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*ingest) {
      cfg.command = "ingest";
      return cmd_ingest(cfg, out, err);
    }
    if (*snapshot) {
      cfg.command = "snapshot";
      return cmd_snapshot(cfg, out, err);
    }
    if (*report) {
      cfg.command = "report";
      return cmd_report(cfg, out, err);
    }
    if (*series) {
      cfg.command = "series";
      return cmd_series(cfg, out, err);
    }
    cfg.command = "growth";
    return cmd_growth(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
}

}  // namespace macronet::cli
