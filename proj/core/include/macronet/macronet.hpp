#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "macronet/amount.hpp"
#include "macronet/calendar.hpp"
#include "macronet/series.hpp"
#include "macronet/taxonomy.hpp"

namespace macronet {

enum class Level { Sector, Macro };

std::string_view level_name(Level level);

// A network node: an institutional sector at SECTOR level, a macro-sector
// at MACRO level.
using Node = std::variant<Sector, MacroSector>;

std::string node_id(const Node& node);
std::string node_display(const Node& node);
Node parse_node(std::string_view text, Level level);

struct Edge {
  Node creditor;
  Node debtor;
  Instrument instrument;             // layer only; APP programme tags live below
  std::vector<Programme> programmes; // APP edges: programmes summed into weight
  Amount weight;
  std::optional<double> share_pct;

  bool operator==(const Edge&) const = default;
};

struct NodeAttrs {
  std::optional<Amount> total_assets;
  bool operator==(const NodeAttrs&) const = default;
};

struct Denominator {
  std::string description;  // series key text of the share base
  Amount amount;
  bool operator==(const Denominator&) const = default;
};

using EdgeId = std::tuple<Node, Node, Instrument>;

// One quarter of the multiplex weighted directed network. Links follow the
// direction of the money: creditor -> debtor for loans, Eurosystem -> banks for
// APP purchases. At most one edge per (creditor, debtor, instrument layer).
class Snapshot {
 public:
  Snapshot(Quarter quarter, Level level) : quarter_(quarter), level_(level) {}

  Quarter quarter() const { return quarter_; }
  Level level() const { return level_; }
  const std::map<EdgeId, Edge>& edges() const { return edges_; }
  const std::map<Node, NodeAttrs>& nodes() const { return nodes_; }
  const std::optional<Denominator>& denominator() const { return denominator_; }

  // Throws Error(InvalidArgument) on a duplicate id or a node of the wrong level.
  void add_edge(Edge edge);
  void set_node(const Node& node, NodeAttrs attrs);
  void set_denominator(Denominator d) { denominator_ = std::move(d); }

  const Edge* find(const Node& creditor, const Node& debtor, const Instrument& layer) const;

  bool operator==(const Snapshot&) const = default;

 private:
  void check_level(const Node& node) const;

  Quarter quarter_;
  Level level_;
  std::map<EdgeId, Edge> edges_;
  std::map<Node, NodeAttrs> nodes_;
  std::optional<Denominator> denominator_;
};

struct SnapshotOptions {
  std::set<Programme> app_programmes{kAppProgrammes.begin(), kAppProgrammes.end()};
};

struct BuildResult {
  Snapshot snapshot;
  // Requested series that have no value at the quarter.
  std::vector<std::string> diagnostics;
};

// One edge per exposure series of a requested layer that has a value at
// `quarter`; APP collapses to a single Eurosystem -> MFI excl. edge weighted by
// app_total. Throws Error(EmptySnapshot) when no requested series covers it.
BuildResult build_snapshot(const SeriesStore& store, Quarter quarter,
                           const std::set<Instrument>& layers,
                           const SnapshotOptions& options = {});

Snapshot normalize_shares(const Snapshot& snapshot, const SeriesStore& store,
                          const SeriesKey& denominator_key = kTotalAssetsKey);

Snapshot aggregate_to_macro(const Snapshot& snapshot);

struct OutgoingSum {
  Amount weight;
  std::optional<double> share_pct;
};

OutgoingSum sum_outgoing(const Snapshot& snapshot, const Node& creditor,
                         const Instrument& layer, const std::set<Node>& debtors);

// Total weight per instrument layer.
std::map<Instrument, Amount> layer_totals(const Snapshot& snapshot);

std::string export_json(const Snapshot& snapshot);
std::string export_dot(const Snapshot& snapshot);
std::string export_text(const Snapshot& snapshot);
Snapshot import_snapshot(std::string_view json_text);

}  // namespace macronet
