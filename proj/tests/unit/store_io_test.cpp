#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "macronet/series.hpp"
#include "test_support.hpp"

namespace macronet {
namespace {

ErrorCode load_error(const std::string& text) {
  try {
    load_store(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "load succeeded";
  return ErrorCode::InvalidArgument;
}

TEST(StoreIo, RoundTripIsLosslessAndByteStable) {
  SeriesStore store = testing::fixture_store();
  store.manifest().ingested_at = "2017-09-30T00:00:00Z";
  const std::string first = save_store(store);
  const SeriesStore back = load_store(first);
  EXPECT_EQ(back, store);
  EXPECT_EQ(save_store(back), first);
}

TEST(StoreIo, GappySeriesKeepTheirFlag) {
  IngestOptions allow;
  allow.gaps = GapPolicy::AllowGaps;
  const SeriesStore store =
      testing::ingest_text("x,LOANS,,MFI_EXCL,NFC,EUR_MILLIONS,SWDA,Q,2017Q1,1.00\n"
                           "x,LOANS,,MFI_EXCL,NFC,EUR_MILLIONS,SWDA,Q,2017Q3,2.00\n",
                           allow);
  const SeriesStore back = load_store(save_store(store));
  EXPECT_TRUE(back.at(SeriesKey::loans(Sector::Nfc)).gappy);
  EXPECT_EQ(back, store);
}

TEST(StoreIo, EmptyStoreRoundTrips) {
  const SeriesStore empty;
  EXPECT_EQ(load_store(save_store(empty)), empty);
}

TEST(StoreIo, UnknownVersionIsRejected) {
  auto doc = nlohmann::json::parse(save_store(testing::fixture_store()));
  doc["macronet_store"] = 2;
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::FormatVersionError);
  doc.erase("macronet_store");
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::FormatVersionError);
}

TEST(StoreIo, TruncatedOrInvalidIsCorrupt) {
  const std::string text = save_store(testing::fixture_store());
  EXPECT_EQ(load_error(text.substr(0, text.size() / 2)), ErrorCode::CorruptStore);
  EXPECT_EQ(load_error(""), ErrorCode::CorruptStore);
  EXPECT_EQ(load_error("[1,2]"), ErrorCode::CorruptStore);

  auto doc = nlohmann::json::parse(text);
  doc["series"][0]["values"]["2003Q1"] = "-1.00";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::CorruptStore);
  doc = nlohmann::json::parse(text);
  doc["series"][0]["key"] = "LOANS:BANKS->NFC";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::CorruptStore);
  doc = nlohmann::json::parse(text);
  doc["series"][0]["values"]["2003Q5"] = "1.00";
  EXPECT_EQ(load_error(doc.dump()), ErrorCode::CorruptStore);
}

TEST(StoreIo, BundledStoreMatchesFreshIngestion) {
  const std::string bundled = testing::read_file(testing::fixture_path("fixture_store.json"));
  ASSERT_FALSE(bundled.empty());
  EXPECT_EQ(save_store(testing::fixture_store()), bundled);
}

}  // namespace
}  // namespace macronet
