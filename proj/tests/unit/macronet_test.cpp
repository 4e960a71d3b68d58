#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "macronet/macronet.hpp"
#include "test_support.hpp"

namespace macronet {
namespace {

const std::set<Instrument> kLoansAndApp{Instrument::loans(), Instrument::app()};
const Quarter k2017q2(2017, 2);

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::InvalidArgument;
}

const SeriesStore& store() {
  static const SeriesStore s = testing::fixture_store();
  return s;
}

TEST(Snapshot, FixtureQuarterHasSixLoanEdgesAndOneAppEdge) {
  const BuildResult r = build_snapshot(store(), k2017q2, kLoansAndApp);
  EXPECT_EQ(r.snapshot.edges().size(), 7u);
  EXPECT_TRUE(r.diagnostics.empty());
  const Edge* app = r.snapshot.find(Sector::EcbNcb, Sector::MfiExcl, Instrument::app());
  ASSERT_NE(app, nullptr);
  EXPECT_EQ(app->weight, Amount::parse("1860000.00"));
  EXPECT_EQ(app->programmes.size(), 4u);
  const Edge* hh = r.snapshot.find(Sector::MfiExcl, Sector::Hh, Instrument::loans());
  ASSERT_NE(hh, nullptr);
  EXPECT_EQ(hh->weight, get(store(), SeriesKey::loans(Sector::Hh), k2017q2));
}

TEST(Snapshot, BeforeQeThereIsNoAppEdge) {
  const BuildResult r = build_snapshot(store(), Quarter(2010, 1), kLoansAndApp);
  EXPECT_EQ(r.snapshot.edges().size(), 6u);
  for (const auto& [id, e] : r.snapshot.edges()) EXPECT_EQ(e.instrument, Instrument::loans());
}

TEST(Snapshot, AppOnlyBeforeQeIsEmpty) {
  EXPECT_EQ(error_of([] { build_snapshot(store(), Quarter(2003, 1), {Instrument::app()}); }),
            ErrorCode::EmptySnapshot);
  EXPECT_EQ(error_of([] { build_snapshot(store(), Quarter(1999, 1), kLoansAndApp); }),
            ErrorCode::EmptySnapshot);
}

TEST(Snapshot, ProgrammeSubsetChangesAppWeight) {
  SnapshotOptions three;
  three.app_programmes = {Programme::Cbpp3, Programme::Abspp, Programme::Pspp};
  const BuildResult r = build_snapshot(store(), k2017q2, {Instrument::app()}, three);
  const Edge* app = r.snapshot.find(Sector::EcbNcb, Sector::MfiExcl, Instrument::app());
  ASSERT_NE(app, nullptr);
  EXPECT_EQ(app->weight, Amount::parse("1760000.00"));
}

TEST(Normalize, ShareOfDenominator) {
  const SeriesStore s2 = testing::ingest_text(
      "a,APP,CBPP3,,,EUR_MILLIONS,NSA,Q,2017Q2,60.00\n"
      "TOTAL_ASSETS:MFI_EXCL,INDICATOR,,,,EUR_MILLIONS,NSA,Q,2017Q2,1000.00\n");
  const Snapshot snap =
      normalize_shares(build_snapshot(s2, k2017q2, {Instrument::app()}).snapshot, s2);
  const Edge& e = snap.edges().begin()->second;
  ASSERT_TRUE(e.share_pct);
  EXPECT_EQ(format_pct(*e.share_pct), "6.00");
  ASSERT_TRUE(snap.denominator());
  EXPECT_EQ(snap.denominator()->amount, Amount::parse("1000.00"));
}

TEST(Normalize, ZeroOrMissingDenominator) {
  const SeriesStore zero = testing::ingest_text(
      "a,APP,CBPP3,,,EUR_MILLIONS,NSA,Q,2017Q2,60.00\n"
      "TOTAL_ASSETS:MFI_EXCL,INDICATOR,,,,EUR_MILLIONS,NSA,Q,2017Q2,0.00\n");
  const Snapshot snap = build_snapshot(zero, k2017q2, {Instrument::app()}).snapshot;
  EXPECT_EQ(error_of([&] { normalize_shares(snap, zero); }), ErrorCode::ZeroDenominator);
  const SeriesStore none = testing::ingest_text("a,APP,CBPP3,,,EUR_MILLIONS,NSA,Q,2017Q2,60.00\n");
  EXPECT_EQ(error_of([&] { normalize_shares(snap, none); }), ErrorCode::MissingSeries);
}

TEST(Normalize, FixtureAggregateShares) {
  const Snapshot snap =
      normalize_shares(build_snapshot(store(), k2017q2, kLoansAndApp).snapshot, store());
  const auto financial = sum_outgoing(snap, Sector::MfiExcl, Instrument::loans(),
                                      {Sector::Mfi, Sector::Icpf, Sector::FcExcl});
  const auto real = sum_outgoing(snap, Sector::MfiExcl, Instrument::loans(), {Sector::Hh, Sector::Nfc});
  EXPECT_EQ(format_pct(*financial.share_pct), "23.38");
  EXPECT_EQ(format_pct(*real.share_pct), "31.56");
  const Edge* app = snap.find(Sector::EcbNcb, Sector::MfiExcl, Instrument::app());
  EXPECT_EQ(format_pct(*app->share_pct), "6.00");
  const Edge* mfi = snap.find(Sector::MfiExcl, Sector::Mfi, Instrument::loans());
  EXPECT_NEAR(*mfi->share_pct, 20.0, 0.5);
}

TEST(SumOutgoing, EmptyDebtorSetIsZero) {
  const Snapshot snap =
      normalize_shares(build_snapshot(store(), k2017q2, kLoansAndApp).snapshot, store());
  const auto none = sum_outgoing(snap, Sector::MfiExcl, Instrument::loans(), {});
  EXPECT_EQ(none.weight, Amount{});
  ASSERT_TRUE(none.share_pct);
  EXPECT_EQ(*none.share_pct, 0.0);
  const Snapshot raw = build_snapshot(store(), k2017q2, kLoansAndApp).snapshot;
  EXPECT_FALSE(sum_outgoing(raw, Sector::MfiExcl, Instrument::loans(), {}).share_pct);
}

TEST(Aggregate, SumsIntoMacroEdges) {
  Snapshot snap(k2017q2, Level::Sector);
  snap.add_edge({Sector::MfiExcl, Sector::Hh, Instrument::loans(), {}, Amount::parse("50.00"), {}});
  snap.add_edge({Sector::MfiExcl, Sector::Nfc, Instrument::loans(), {}, Amount::parse("30.00"), {}});
  const Snapshot macro = aggregate_to_macro(snap);
  ASSERT_EQ(macro.edges().size(), 1u);
  const Edge& e = macro.edges().begin()->second;
  EXPECT_EQ(e.creditor, Node{MacroSector::Financial});
  EXPECT_EQ(e.debtor, Node{MacroSector::Real});
  EXPECT_EQ(e.weight, Amount::parse("80.00"));
  EXPECT_EQ(macro.level(), Level::Macro);
  EXPECT_EQ(error_of([&] { aggregate_to_macro(macro); }), ErrorCode::AlreadyAggregated);
}

TEST(Aggregate, FixtureKeepsWeightAndHasFinancialSelfLoop) {
  const Snapshot snap =
      normalize_shares(build_snapshot(store(), k2017q2, kLoansAndApp).snapshot, store());
  const Snapshot macro = aggregate_to_macro(snap);
  EXPECT_EQ(macro.nodes().size(), 3u);
  EXPECT_EQ(layer_totals(macro), layer_totals(snap));
  const Edge* loop = macro.find(MacroSector::Financial, MacroSector::Financial, Instrument::loans());
  ASSERT_NE(loop, nullptr);
  EXPECT_EQ(format_pct(*loop->share_pct), "23.38");
  const Edge* app = macro.find(MacroSector::Financial, MacroSector::Financial, Instrument::app());
  ASSERT_NE(app, nullptr);
  EXPECT_EQ(app->weight, Amount::parse("1860000.00"));
}

TEST(Snapshot, RejectsDuplicateAndWrongLevel) {
  Snapshot snap(k2017q2, Level::Sector);
  Edge e{Sector::MfiExcl, Sector::Hh, Instrument::loans(), {}, Amount::parse("1.00"), {}};
  snap.add_edge(e);
  EXPECT_EQ(error_of([&] { snap.add_edge(e); }), ErrorCode::InvalidArgument);
  Edge macro_edge{MacroSector::Real, MacroSector::Real, Instrument::loans(), {}, Amount{}, {}};
  EXPECT_EQ(error_of([&] { snap.add_edge(macro_edge); }), ErrorCode::InvalidArgument);
}

TEST(Export, DotHasOneLinePerEdge) {
  const Snapshot snap = build_snapshot(store(), k2017q2, kLoansAndApp).snapshot;
  const std::string dot = export_dot(snap);
  EXPECT_EQ(count_of(dot, "->"), 7u);
  EXPECT_EQ(dot.rfind("digraph macronet_2017Q2 {", 0), 0u);
}

TEST(Export, EmptySnapshotJsonHasEmptyEdgeArray) {
  const Snapshot empty(k2017q2, Level::Sector);
  const std::string json = export_json(empty);
  EXPECT_NE(json.find("\"edges\": []"), std::string::npos);
  EXPECT_EQ(import_snapshot(json), empty);
}

TEST(Export, JsonRoundTripIsByteStable) {
  const Snapshot snap =
      normalize_shares(build_snapshot(store(), k2017q2, kLoansAndApp).snapshot, store());
  for (const Snapshot& s : {snap, aggregate_to_macro(snap)}) {
    const std::string first = export_json(s);
    EXPECT_EQ(export_json(import_snapshot(first)), first);
  }
  EXPECT_EQ(error_of([] { import_snapshot("{\"macronet_snapshot\": 7}"); }),
            ErrorCode::FormatVersionError);
  EXPECT_EQ(error_of([] { import_snapshot("{"); }), ErrorCode::SchemaError);
}

TEST(Export, TextListsEveryEdge) {
  const Snapshot snap = build_snapshot(store(), k2017q2, kLoansAndApp).snapshot;
  const std::string text = export_text(snap);
  EXPECT_NE(text.find("1860000.00"), std::string::npos);
  EXPECT_NE(text.find("MFI_EXCL   HH"), std::string::npos);
}

}  // namespace
}  // namespace macronet
