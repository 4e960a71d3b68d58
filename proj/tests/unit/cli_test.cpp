#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cli_app.hpp"
#include "test_support.hpp"

namespace macronet {
namespace {

namespace fs = std::filesystem;
using testing::fixture_path;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "macronet");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("macronet_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    store_ = (dir_ / "store.json").string();
    const CliRun r = run({"ingest", fixture_path("paper_2017q2.csv"), fixture_path("app_holdings.csv"),
                       "--out", store_});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string write(const std::string& name, const std::string& text) {
    const std::string path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << text;
    return path;
  }

  static inline fs::path dir_;
  static inline std::string store_;
};

TEST_F(Cli, IngestSummary) {
  const std::string out = (dir_ / "nine.json").string();
  const CliRun r = run({"ingest", fixture_path("paper_2017q2.csv"), "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("9 series, 2003Q1..2017Q2\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("522 rows from 1 file(s), 0 rejected"), std::string::npos);
}

TEST_F(Cli, IngestFailures) {
  EXPECT_EQ(run({"ingest", (dir_ / "nope.csv").string(), "--out", store_ + ".x"}).code, 2);
  const std::string bad = write("neg.csv", testing::kHeader +
                                               "x,LOANS,,MFI_EXCL,NFC,EUR_MILLIONS,SWDA,Q,2017Q1,1.00\n"
                                               "x,LOANS,,MFI_EXCL,NFC,EUR_MILLIONS,SWDA,Q,2017Q2,-1.00\n");
  const CliRun r = run({"ingest", bad, "--out", (dir_ / "neg.json").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find(bad + ":3: error: NegativeStock"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "neg.json"));
}

TEST_F(Cli, GapsAcrossFilesAreCheckedAfterMerge) {
  const std::string a = write("q1.csv", testing::kHeader +
                                            "x,LOANS,,MFI_EXCL,NFC,EUR_MILLIONS,SWDA,Q,2017Q1,1.00\n");
  const std::string b = write("q3.csv", testing::kHeader +
                                            "x,LOANS,,MFI_EXCL,NFC,EUR_MILLIONS,SWDA,Q,2017Q3,1.00\n");
  const std::string c = write("q2.csv", testing::kHeader +
                                            "x,LOANS,,MFI_EXCL,NFC,EUR_MILLIONS,SWDA,Q,2017Q2,1.00\n");
  const std::string out = (dir_ / "gaps.json").string();
  EXPECT_EQ(run({"ingest", a, b, "--out", out}).code, 1);
  EXPECT_EQ(run({"ingest", a, b, "--allow-gaps", "--out", out}).code, 0);
  EXPECT_EQ(run({"ingest", a, b, c, "--out", out}).code, 0);
}

TEST_F(Cli, SnapshotDotAndMacroJson) {
  const CliRun dot = run({"--store", store_, "--format", "dot", "snapshot", "--quarter", "2017Q2"});
  ASSERT_EQ(dot.code, 0) << dot.err;
  EXPECT_EQ(count_of(dot.out, "->"), 7u);

  const CliRun macro = run({"--store", store_, "--format", "json", "snapshot", "--quarter", "2017Q2",
                         "--shares", "--macro"});
  ASSERT_EQ(macro.code, 0) << macro.err;
  EXPECT_EQ(count_of(macro.out, "\"sector\":"), 3u);
  EXPECT_NE(macro.out.find("\"creditor\": \"FINANCIAL\",\n      \"debtor\": \"FINANCIAL\""),
            std::string::npos);

  EXPECT_EQ(run({"--store", store_, "snapshot", "--quarter", "1999Q1"}).code, 1);
  EXPECT_EQ(run({"--store", store_, "snapshot", "--quarter", "2017Q5"}).code, 2);
  EXPECT_EQ(run({"--store", store_, "snapshot", "--quarter", "2017Q2", "--instruments", "lones"}).code, 2);
}

TEST_F(Cli, ReportText) {
  const CliRun r = run({"--store", store_, "report"});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* n : {"19.19", "5.48", "0.27", "9.38", "1.44", "6.00", "23.38", "31.56"}) {
    EXPECT_NE(r.out.find(n), std::string::npos) << n;
  }
}

TEST_F(Cli, ReportWithoutHicpFails) {
  const SeriesStore full = testing::fixture_store();
  SeriesStore partial;
  for (const auto& [key, s] : full.series()) {
    if (key != SeriesKey::indicator("HICP")) partial.insert(s);
  }
  const std::string path = write("nohicp.json", save_store(partial));
  const CliRun r = run({"--store", path, "report"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("HICP"), std::string::npos) << r.err;
  const CliRun p = run({"--store", path, "--allow-partial", "report"});
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("MISSING"), std::string::npos) << p.out;
}

TEST_F(Cli, SeriesTables) {
  const CliRun all = run({"--store", store_, "series", "--keys", "loans"});
  ASSERT_EQ(all.code, 0) << all.err;
  EXPECT_EQ(count_of(all.out, "\n"), 59u);
  const CliRun gdp =
      run({"--store", store_, "series", "--keys", "GDP", "--from", "2014Q3", "--to", "2017Q2"});
  EXPECT_EQ(count_of(gdp.out, "\n"), 13u);
  EXPECT_EQ(run({"--store", store_, "series", "--keys", "UNEMPLOYMENT"}).code, 1);
}

TEST_F(Cli, GrowthCommand) {
  const CliRun r = run({"--store", store_, "growth", "--key", "LOANS:MFI_EXCL->MFI"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("+19.19%"), std::string::npos) << r.out;
}

TEST_F(Cli, OutputIsDeterministic) {
  for (std::vector<std::string> args :
       {std::vector<std::string>{"--format", "json", "report"},
        std::vector<std::string>{"--format", "json", "snapshot", "--quarter", "2017Q2", "--shares"},
        std::vector<std::string>{"--format", "csv", "series", "--keys", "loans"}}) {
    args.insert(args.begin(), {"--store", store_});
    EXPECT_EQ(run(args).out, run(args).out);
  }
  const std::string again = (dir_ / "again.json").string();
  run({"ingest", fixture_path("paper_2017q2.csv"), fixture_path("app_holdings.csv"), "--out", again});
  EXPECT_EQ(testing::read_file(again), testing::read_file(store_));
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"--store", store_, "--format", "dot", "report"}).code, 2);
  EXPECT_EQ(run({"--store", (dir_ / "missing.json").string(), "report"}).code, 2);
  EXPECT_EQ(run({"--store", store_, "report", "--event", "2014-13-45"}).code, 2);
  const std::string corrupt = write("corrupt.json", "{\"macronet_store\": 1, \"series\": [");
  EXPECT_EQ(run({"--store", corrupt, "report"}).code, 1);
}

}  // namespace
}  // namespace macronet
