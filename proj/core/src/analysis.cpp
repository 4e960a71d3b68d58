#include "macronet/analysis.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace macronet {

std::string_view baseline_rule_name(BaselineRule rule) {
  return rule == BaselineRule::LastFullQuarterBefore ? "last-full-quarter-before"
                                                     : "quarter-of-event";
}

BaselineRule parse_baseline_rule(std::string_view text) {
  if (text == "last-full-quarter-before") return BaselineRule::LastFullQuarterBefore;
  if (text == "quarter-of-event") return BaselineRule::QuarterOfEvent;
  throw Error(ErrorCode::InvalidArgument, "unknown baseline rule '" + std::string(text) + "'");
}

// The quarter containing the event always ends on or after the event date, so
// the latest quarter ending strictly before it is its predecessor.
Quarter baseline_for(const Date& event_date, BaselineRule rule) {
  const Quarter containing = Quarter::of(event_date);
  return rule == BaselineRule::QuarterOfEvent ? containing : containing.prev();
}

GrowthResult growth_since(const SeriesStore& store, const SeriesKey& key, Quarter baseline,
                          Quarter end) {
  if (!(baseline < end)) {
    throw Error(ErrorCode::InvertedWindow, baseline.str() + " .. " + end.str());
  }
  const Amount b = get(store, key, baseline);
  const Amount e = get(store, key, end);
  if (b <= Amount{}) {
    throw Error(ErrorCode::NonPositiveBaseline, key.str() + " at " + baseline.str() + " is " + b.str());
  }
  const double ratio = static_cast<double>(e.cents()) / static_cast<double>(b.cents());
  return GrowthResult{key, baseline, end, b, e, (ratio - 1.0) * 100.0};
}

const std::vector<ReportRow>& report_rows() {
  static const std::vector<ReportRow> rows = {
      {"MFI", SeriesKey::loans(Sector::Mfi)},
      {"HH", SeriesKey::loans(Sector::Hh)},
      {"NFC", SeriesKey::loans(Sector::Nfc)},
      {"GG", SeriesKey::loans(Sector::Gg)},
      {"ICPF", SeriesKey::loans(Sector::Icpf)},
      {"FC_EXCL", SeriesKey::loans(Sector::FcExcl)},
      {"GDP", SeriesKey::indicator("GDP")},
      {"HICP", SeriesKey::indicator("HICP")},
  };
  return rows;
}

bool Report::complete() const {
  for (const auto& g : growth) {
    if (!g.result) return false;
  }
  const auto ok = [](const ShareCell& c) { return c.share_pct.has_value(); };
  if (!ok(shares.app) || !ok(shares.intra_financial) || !ok(shares.real_sector)) return false;
  for (const auto& c : shares.loans) {
    if (!ok(c)) return false;
  }
  return true;
}

namespace {

const std::set<Node> kIntraFinancial = {Sector::Mfi, Sector::Icpf, Sector::FcExcl};
const std::set<Node> kRealSector = {Sector::Hh, Sector::Nfc};

void fill_shares(ReportShares& shares, const SeriesStore& store, const ReportOptions& options) {
  const Snapshot snap = normalize_shares(
      build_snapshot(store, shares.quarter, {Instrument::loans(), Instrument::app()},
                     options.snapshot)
          .snapshot,
      store);
  shares.denominator = snap.denominator();

  auto edge_share = [&](ShareCell& cell, const Node& creditor, const Node& debtor,
                        const Instrument& layer) {
    if (const Edge* e = snap.find(creditor, debtor, layer)) {
      cell.share_pct = e->share_pct;
    } else {
      cell.missing_reason = "no " + layer.str() + " edge " + node_id(creditor) + " -> " +
                            node_id(debtor) + " at " + shares.quarter.str();
    }
  };

  edge_share(shares.app, Sector::EcbNcb, Sector::MfiExcl, Instrument::app());
  for (ShareCell& cell : shares.loans) {
    edge_share(cell, Sector::MfiExcl, parse_sector(cell.label), Instrument::loans());
  }

  // Aggregates are reported only when every member edge is present.
  auto aggregate = [&](ShareCell& cell, const std::set<Node>& debtors) {
    for (const Node& d : debtors) {
      if (!snap.find(Sector::MfiExcl, d, Instrument::loans())) {
        cell.missing_reason = "no LOANS edge MFI_EXCL -> " + node_id(d);
        return;
      }
    }
    cell.share_pct = sum_outgoing(snap, Sector::MfiExcl, Instrument::loans(), debtors).share_pct;
  };
  aggregate(shares.intra_financial, kIntraFinancial);
  aggregate(shares.real_sector, kRealSector);
}

}  // namespace

Report paper_report(const SeriesStore& store, const ReportOptions& options) {
  Report report;
  report.window.event_date = options.event_date;
  report.window.rule = options.rule;
  report.window.baseline = options.baseline_override.value_or(baseline_for(options.event_date, options.rule));
  if (options.end_override) {
    report.window.end = *options.end_override;
  } else if (auto common = store.latest_common_quarter()) {
    report.window.end = *common;
  } else {
    throw Error(ErrorCode::MissingSeries, "store is empty");
  }
  if (!(report.window.baseline < report.window.end)) {
    throw Error(ErrorCode::InvertedWindow,
                report.window.baseline.str() + " .. " + report.window.end.str());
  }

  for (const ReportRow& row : report_rows()) {
    GrowthCell cell{row.label, row.key, std::nullopt, {}};
    try {
      cell.result = growth_since(store, row.key, report.window.baseline, report.window.end);
    } catch (const Error& e) {
      if (!options.allow_partial) throw;
      cell.missing_reason = e.what();
    }
    report.growth.push_back(std::move(cell));
  }

  ReportShares& shares = report.shares;
  shares.quarter = report.window.end;
  shares.app.label = "APP";
  shares.intra_financial.label = "INTRA_FINANCIAL";
  shares.real_sector.label = "REAL_SECTOR";
  for (const ReportRow& row : report_rows()) {
    if (row.key.is_exposure()) shares.loans.push_back(ShareCell{row.label, std::nullopt, {}});
  }
  try {
    fill_shares(shares, store, options);
  } catch (const Error& e) {
    if (!options.allow_partial) throw;
    for (ShareCell* c : {&shares.app, &shares.intra_financial, &shares.real_sector}) {
      c->share_pct.reset();
      c->missing_reason = e.what();
    }
    for (ShareCell& c : shares.loans) {
      c.share_pct.reset();
      c.missing_reason = e.what();
    }
  }

  if (!options.allow_partial) {
    for (const ShareCell* c : {&shares.app, &shares.intra_financial, &shares.real_sector}) {
      if (!c->share_pct) throw Error(ErrorCode::MissingSeries, c->missing_reason);
    }
    for (const ShareCell& c : shares.loans) {
      if (!c.share_pct) throw Error(ErrorCode::MissingSeries, c.missing_reason);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string signed_pct(double v) {
  std::string s = format_pct(v);
  return s.front() == '-' ? s : "+" + s;
}

std::string share_text(const ShareCell& c) {
  return c.share_pct ? format_pct(*c.share_pct) : "MISSING";
}

std::string loan_caption(const std::string& label) {
  return "Loans to " + std::string(canonical_acronym(parse_sector(label)));
}

}  // namespace

std::string render_report_text(const Report& report) {
  std::ostringstream out;
  char line[200];
  const EventWindow& w = report.window;
  out << "QE event study: event " << w.event_date.str() << ", baseline rule "
      << baseline_rule_name(w.rule) << "\n";
  out << "window " << w.baseline.str() << " .. " << w.end.str() << "\n\n";

  std::snprintf(line, sizeof line, "%-9s %-8s %-8s %16s %16s %10s\n", "series", "baseline", "end",
                "baseline value", "end value", "growth %");
  out << line;
  for (const GrowthCell& g : report.growth) {
    if (g.result) {
      const GrowthResult& r = *g.result;
      std::snprintf(line, sizeof line, "%-9s %-8s %-8s %16s %16s %10s\n", g.label.c_str(),
                    r.baseline.str().c_str(), r.end.str().c_str(), r.baseline_value.str().c_str(),
                    r.end_value.str().c_str(), signed_pct(r.growth_pct).c_str());
    } else {
      std::snprintf(line, sizeof line, "%-9s %-8s %-8s %16s %16s %10s\n", g.label.c_str(), "-",
                    "-", "-", "-", "MISSING");
    }
    out << line;
  }

  const ReportShares& s = report.shares;
  out << "\nshares of banking total assets at " << s.quarter.str();
  if (s.denominator) out << " (" << s.denominator->description << " = " << s.denominator->amount.str() << ")";
  out << "\n";
  auto share_line = [&](const std::string& caption, const ShareCell& c) {
    std::snprintf(line, sizeof line, "%-44s %10s\n", caption.c_str(), share_text(c).c_str());
    out << line;
  };
  share_line("APP holdings (ECB&NCB -> MFI excl. ECB&NCB)", s.app);
  for (const ShareCell& c : s.loans) share_line(loan_caption(c.label), c);
  share_line("Intra-financial loans (MFI, IC&PF, FC excl.)", s.intra_financial);
  share_line("Real-sector loans (HH&NPISH, NFC)", s.real_sector);

  bool header = false;
  for (const GrowthCell& g : report.growth) {
    if (g.result) continue;
    if (!header) out << "\nmissing:\n";
    header = true;
    out << "  " << g.label << ": " << g.missing_reason << "\n";
  }
  return out.str();
}

std::string render_report_json(const Report& report, const std::string& config_json) {
  using nlohmann::json;
  json doc;
  doc["macronet_report"] = 1;
  doc["config"] = json::parse(config_json);
  doc["event"] = {
      {"date", report.window.event_date.str()},
      {"baseline_rule", baseline_rule_name(report.window.rule)},
      {"baseline", report.window.baseline.str()},
      {"end", report.window.end.str()},
  };

  json growth = json::array();
  for (const GrowthCell& g : report.growth) {
    json cell = {{"label", g.label}, {"key", g.key.str()}};
    if (g.result) {
      cell["status"] = "OK";
      cell["baseline"] = g.result->baseline.str();
      cell["end"] = g.result->end.str();
      cell["baseline_value"] = g.result->baseline_value.str();
      cell["end_value"] = g.result->end_value.str();
      cell["growth_pct"] = format_pct(g.result->growth_pct);
    } else {
      cell["status"] = "MISSING";
      cell["reason"] = g.missing_reason;
    }
    growth.push_back(std::move(cell));
  }
  doc["growth"] = std::move(growth);

  const ReportShares& s = report.shares;
  json loans = json::object();
  for (const ShareCell& c : s.loans) loans[c.label] = share_text(c);
  doc["shares"] = {
      {"quarter", s.quarter.str()},
      {"denominator", s.denominator ? json{{"key", s.denominator->description},
                                           {"amount", s.denominator->amount.str()}}
                                    : json(nullptr)},
      {"app", share_text(s.app)},
      {"loans", std::move(loans)},
      {"intra_financial", share_text(s.intra_financial)},
      {"real_sector", share_text(s.real_sector)},
  };
  doc["complete"] = report.complete();
  return doc.dump(2) + "\n";
}

SeriesTable series_table(const SeriesStore& store, const std::vector<SeriesKey>& keys,
                         Quarter from, Quarter to, bool allow_partial) {
  if (to < from) throw Error(ErrorCode::InvertedWindow, from.str() + " .. " + to.str());
  SeriesTable table;
  std::vector<const QuarterlySeries*> columns;
  for (const SeriesKey& key : keys) {
    columns.push_back(&store.at(key));
    table.columns.push_back(key);
  }
  for (Quarter q = from; q <= to; q = q.next()) {
    std::vector<std::optional<Amount>> row;
    for (const QuarterlySeries* s : columns) {
      if (const Amount* v = s->find(q)) {
        row.emplace_back(*v);
      } else if (allow_partial) {
        row.emplace_back(std::nullopt);
      } else {
        throw Error(ErrorCode::MissingQuarter, s->key.str() + " at " + q.str());
      }
    }
    table.rows.push_back(q);
    table.cells.push_back(std::move(row));
  }
  return table;
}

std::string SeriesTable::to_csv() const {
  std::ostringstream out;
  out << "quarter";
  for (const SeriesKey& k : columns) out << "," << k.str();
  out << "\n";
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << rows[r].str();
    for (const auto& cell : cells[r]) {
      out << ",";
      if (cell) out << cell->str();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace macronet
