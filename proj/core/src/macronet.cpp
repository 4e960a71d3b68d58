#include "macronet/macronet.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

namespace macronet {

std::string_view level_name(Level level) { return level == Level::Sector ? "SECTOR" : "MACRO"; }

std::string node_id(const Node& node) {
  if (const auto* s = std::get_if<Sector>(&node)) return std::string(sector_id(*s));
  return std::string(macro_name(std::get<MacroSector>(node)));
}

std::string node_display(const Node& node) {
  if (const auto* s = std::get_if<Sector>(&node)) return std::string(canonical_acronym(*s));
  return std::string(macro_name(std::get<MacroSector>(node)));
}

Node parse_node(std::string_view text, Level level) {
  if (level == Level::Sector) return parse_sector(text);
  return parse_macro(text);
}

// ---------------------------------------------------------------------------
// Snapshot

void Snapshot::check_level(const Node& node) const {
  const bool sector_node = std::holds_alternative<Sector>(node);
  if (sector_node != (level_ == Level::Sector)) {
    throw Error(ErrorCode::InvalidArgument,
                "node " + node_id(node) + " does not belong to a " +
                    std::string(level_name(level_)) + " snapshot");
  }
}

void Snapshot::add_edge(Edge edge) {
  check_level(edge.creditor);
  check_level(edge.debtor);
  if (edge.weight < Amount{}) {
    throw Error(ErrorCode::InvalidArgument, "negative edge weight " + edge.weight.str());
  }
  edge.instrument = edge.instrument.layer();
  EdgeId id{edge.creditor, edge.debtor, edge.instrument};
  nodes_.try_emplace(edge.creditor);
  nodes_.try_emplace(edge.debtor);
  if (!edges_.emplace(std::move(id), edge).second) {
    throw Error(ErrorCode::InvalidArgument, "duplicate edge " + node_id(edge.creditor) + " -> " +
                                                node_id(edge.debtor) + " " + edge.instrument.str());
  }
}

void Snapshot::set_node(const Node& node, NodeAttrs attrs) {
  check_level(node);
  nodes_[node] = std::move(attrs);
}

const Edge* Snapshot::find(const Node& creditor, const Node& debtor,
                           const Instrument& layer) const {
  auto it = edges_.find(EdgeId{creditor, debtor, layer.layer()});
  return it == edges_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Construction

namespace {

SeriesKey total_assets_key(Sector s) {
  return SeriesKey::indicator("TOTAL_ASSETS:" + std::string(sector_id(s)));
}

double share_of(Amount weight, Amount denominator) {
  return static_cast<double>(weight.cents()) / static_cast<double>(denominator.cents()) * 100.0;
}

}  // namespace

BuildResult build_snapshot(const SeriesStore& store, Quarter quarter,
                           const std::set<Instrument>& layers, const SnapshotOptions& options) {
  BuildResult out{Snapshot(quarter, Level::Sector), {}};
  Snapshot& snap = out.snapshot;

  for (const auto& [key, series] : store.series()) {
    if (!key.is_exposure()) continue;
    const ExposureKey& e = key.as_exposure();
    const Instrument layer = e.instrument.layer();
    if (layer.kind() == InstrumentKind::App || !layers.count(layer)) continue;
    if (const Amount* v = series.find(quarter)) {
      snap.add_edge(Edge{e.creditor, e.debtor, layer, {}, *v, std::nullopt});
    } else {
      out.diagnostics.push_back(key.str() + " has no value at " + quarter.str());
    }
  }

  if (layers.count(Instrument::app())) {
    const auto present = app_programmes_at(store, quarter, options.app_programmes);
    if (!present.empty()) {
      snap.add_edge(Edge{Sector::EcbNcb, Sector::MfiExcl, Instrument::app(), present,
                         app_total(store, quarter, options.app_programmes), std::nullopt});
    } else {
      out.diagnostics.push_back("no APP programme holdings at " + quarter.str());
    }
  }

  if (snap.edges().empty()) {
    throw Error(ErrorCode::EmptySnapshot, "no requested series covers " + quarter.str());
  }

  const auto nodes = snap.nodes();
  for (const auto& [node, attrs] : nodes) {
    const auto* ta = store.find(total_assets_key(std::get<Sector>(node)));
    if (!ta) continue;
    if (const Amount* v = ta->find(quarter)) snap.set_node(node, NodeAttrs{*v});
  }
  return out;
}

Snapshot normalize_shares(const Snapshot& snapshot, const SeriesStore& store,
                          const SeriesKey& denominator_key) {
  const Amount denominator = get(store, denominator_key, snapshot.quarter());
  if (denominator <= Amount{}) {
    throw Error(ErrorCode::ZeroDenominator,
                denominator_key.str() + " at " + snapshot.quarter().str() + " is " +
                    denominator.str());
  }

  Snapshot out(snapshot.quarter(), snapshot.level());
  for (const auto& [node, attrs] : snapshot.nodes()) out.set_node(node, attrs);
  for (const auto& [id, edge] : snapshot.edges()) {
    Edge e = edge;
    e.share_pct = share_of(e.weight, denominator);
    out.add_edge(std::move(e));
  }
  out.set_denominator(Denominator{denominator_key.str(), denominator});

  // Record the share base on its own node when it is a sector's total assets.
  if (!denominator_key.is_exposure() && snapshot.level() == Level::Sector) {
    const std::string& name = denominator_key.as_indicator().name;
    if (name.rfind("TOTAL_ASSETS:", 0) == 0) {
      try {
        const Sector s = parse_sector(name.substr(13));
        if (out.nodes().count(s)) out.set_node(s, NodeAttrs{denominator});
      } catch (const Error&) {
      }
    }
  }
  return out;
}

Snapshot aggregate_to_macro(const Snapshot& snapshot) {
  if (snapshot.level() == Level::Macro) {
    throw Error(ErrorCode::AlreadyAggregated, "snapshot " + snapshot.quarter().str());
  }
  std::map<EdgeId, Edge> merged;
  for (const auto& [id, edge] : snapshot.edges()) {
    const Node c = macro_sector_of(std::get<Sector>(edge.creditor));
    const Node d = macro_sector_of(std::get<Sector>(edge.debtor));
    auto [it, fresh] = merged.try_emplace(EdgeId{c, d, edge.instrument},
                                          Edge{c, d, edge.instrument, {}, Amount{}, std::nullopt});
    Edge& m = it->second;
    m.weight += edge.weight;
    if (edge.share_pct) m.share_pct = m.share_pct.value_or(0.0) + *edge.share_pct;
    for (Programme p : edge.programmes) {
      if (std::find(m.programmes.begin(), m.programmes.end(), p) == m.programmes.end()) {
        m.programmes.push_back(p);
      }
    }
    std::sort(m.programmes.begin(), m.programmes.end());
  }

  Snapshot out(snapshot.quarter(), Level::Macro);
  for (auto& [id, edge] : merged) out.add_edge(std::move(edge));
  if (snapshot.denominator()) out.set_denominator(*snapshot.denominator());
  return out;
}

OutgoingSum sum_outgoing(const Snapshot& snapshot, const Node& creditor, const Instrument& layer,
                         const std::set<Node>& debtors) {
  OutgoingSum out;
  if (snapshot.denominator()) out.share_pct = 0.0;
  const Instrument wanted = layer.layer();
  for (const auto& [id, edge] : snapshot.edges()) {
    if (edge.creditor != creditor || edge.instrument != wanted || !debtors.count(edge.debtor)) {
      continue;
    }
    out.weight += edge.weight;
    if (out.share_pct && edge.share_pct) *out.share_pct += *edge.share_pct;
  }
  return out;
}

std::map<Instrument, Amount> layer_totals(const Snapshot& snapshot) {
  std::map<Instrument, Amount> out;
  for (const auto& [id, edge] : snapshot.edges()) out[edge.instrument] += edge.weight;
  return out;
}

// ---------------------------------------------------------------------------
// Export / import

namespace {

using nlohmann::json;

constexpr int kSnapshotVersion = 1;

[[noreturn]] void bad_snapshot(const std::string& what) {
  throw Error(ErrorCode::SchemaError, "snapshot: " + what);
}

const json& need(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name)) bad_snapshot(std::string("missing '") + name + "'");
  return obj.at(name);
}

std::string need_string(const json& obj, const char* name) {
  const json& v = need(obj, name);
  if (!v.is_string()) bad_snapshot(std::string("'") + name + "' is not a string");
  return v.get<std::string>();
}

// Shares travel as percent strings; only the sign and digits are checked.
double parse_pct(const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size() || v < 0) bad_snapshot("bad share_pct '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    bad_snapshot("bad share_pct '" + text + "'");
  }
}

}  // namespace

std::string export_json(const Snapshot& snapshot) {
  json doc;
  doc["macronet_snapshot"] = kSnapshotVersion;
  doc["quarter"] = snapshot.quarter().str();
  doc["level"] = level_name(snapshot.level());
  if (const auto& d = snapshot.denominator()) {
    doc["denominator"] = {{"key", d->description}, {"amount", d->amount.str()}};
  } else {
    doc["denominator"] = nullptr;
  }

  json nodes = json::array();
  for (const auto& [node, attrs] : snapshot.nodes()) {
    nodes.push_back({{"sector", node_id(node)},
                     {"total_assets",
                      attrs.total_assets ? json(attrs.total_assets->str()) : json(nullptr)}});
  }
  doc["nodes"] = std::move(nodes);

  json edges = json::array();
  for (const auto& [id, e] : snapshot.edges()) {
    json programmes = nullptr;
    if (e.instrument.kind() == InstrumentKind::App) {
      programmes = json::array();
      for (Programme p : e.programmes) programmes.push_back(programme_name(p));
    }
    edges.push_back({
        {"creditor", node_id(e.creditor)},
        {"debtor", node_id(e.debtor)},
        {"instrument", e.instrument.str()},
        {"programmes", std::move(programmes)},
        {"weight", e.weight.str()},
        {"share_pct", e.share_pct ? json(format_pct(*e.share_pct)) : json(nullptr)},
    });
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

Snapshot import_snapshot(std::string_view json_text) {
  json doc = json::parse(json_text.begin(), json_text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) bad_snapshot("not a JSON object");
  if (!doc.contains("macronet_snapshot") || doc["macronet_snapshot"] != kSnapshotVersion) {
    throw Error(ErrorCode::FormatVersionError, "unsupported or missing macronet_snapshot header");
  }

  try {
    const std::string level_text = need_string(doc, "level");
    Level level;
    if (level_text == "SECTOR") {
      level = Level::Sector;
    } else if (level_text == "MACRO") {
      level = Level::Macro;
    } else {
      bad_snapshot("unknown level '" + level_text + "'");
    }

    Snapshot snap(Quarter::parse(need_string(doc, "quarter")), level);
    const json& denom = need(doc, "denominator");
    if (!denom.is_null()) {
      snap.set_denominator(Denominator{need_string(denom, "key"),
                                       Amount::parse(need_string(denom, "amount"))});
    }
    for (const json& n : need(doc, "nodes")) {
      NodeAttrs attrs;
      const json& ta = need(n, "total_assets");
      if (!ta.is_null()) attrs.total_assets = Amount::parse(need_string(n, "total_assets"));
      snap.set_node(parse_node(need_string(n, "sector"), level), attrs);
    }
    for (const json& e : need(doc, "edges")) {
      Edge edge{parse_node(need_string(e, "creditor"), level),
                parse_node(need_string(e, "debtor"), level),
                Instrument::parse(need_string(e, "instrument")),
                {},
                Amount::parse(need_string(e, "weight")),
                std::nullopt};
      const json& programmes = need(e, "programmes");
      if (!programmes.is_null()) {
        for (const json& p : programmes) {
          if (!p.is_string()) bad_snapshot("programme is not a string");
          edge.programmes.push_back(parse_programme(p.get<std::string>()));
        }
      }
      const json& share = need(e, "share_pct");
      if (!share.is_null()) {
        if (!snap.denominator()) bad_snapshot("share_pct without denominator");
        edge.share_pct = parse_pct(need_string(e, "share_pct"));
      }
      snap.add_edge(std::move(edge));
    }
    return snap;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    bad_snapshot(e.what());
  }
}

std::string export_dot(const Snapshot& snapshot) {
  std::ostringstream out;
  out << "digraph macronet_" << snapshot.quarter().str() << " {\n";
  for (const auto& [node, attrs] : snapshot.nodes()) {
    out << "  \"" << node_id(node) << "\" [label=\"" << node_display(node) << "\"];\n";
  }
  for (const auto& [id, e] : snapshot.edges()) {
    out << "  \"" << node_id(e.creditor) << "\" -> \"" << node_id(e.debtor)
        << "\" [instrument=\"" << e.instrument.str() << "\", label=\"" << e.weight.str();
    if (e.share_pct) out << " (" << format_pct(*e.share_pct) << "%)";
    out << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string export_text(const Snapshot& snapshot) {
  std::ostringstream out;
  out << "macro-network " << snapshot.quarter().str() << " (" << level_name(snapshot.level())
      << ")\n";
  if (const auto& d = snapshot.denominator()) {
    out << "share base: " << d->description << " = " << d->amount.str() << "\n";
  }
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-10s %-10s %16s %9s\n", "creditor", "debtor",
                "instrument", "weight", "share%");
  out << line;
  for (const auto& [id, e] : snapshot.edges()) {
    std::snprintf(line, sizeof line, "%-10s %-10s %-10s %16s %9s\n", node_id(e.creditor).c_str(),
                  node_id(e.debtor).c_str(), e.instrument.str().c_str(), e.weight.str().c_str(),
                  e.share_pct ? format_pct(*e.share_pct).c_str() : "-");
    out << line;
  }
  return out.str();
}

}  // namespace macronet
