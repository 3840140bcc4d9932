#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "magma/results.hpp"
#include "support.hpp"

namespace magma {
namespace {

std::vector<ResultRecord> sample_records() {
  return {
      {1, 2, Status::Refuted, "fmb-500i", 1, 0.0012, "model\n2\n0 0\n1 1\nx=0 y=1"},
      {2, 1, Status::Proven, "satur-500i", 2, 0.5, "proof\naxiom 1: x=y\ngoal: a != b\n"},
      {1, 3, Status::Unsolved, "", 0, 12.25, "none"},
      {3, 1, Status::Refuted, "satur-500i", 2, 0.01, "saturation"},
      {3, 2, Status::Refuted, "closure:R2", 0, 0, "from 1,3 1,2"},
  };
}

TEST(ResultsLog, LineFormatHasSevenKeys) {
  const std::string line = to_log_line(sample_records()[0]);
  for (const char* key : {"\"lhs\"", "\"rhs\"", "\"status\"", "\"method\"", "\"stage\"",
                          "\"seconds\"", "\"witness\""}) {
    EXPECT_NE(line.find(key), std::string::npos) << key;
  }
  EXPECT_EQ(line.find('\n'), std::string::npos);
}

TEST(ResultsLog, WriteThenLoadRoundTrip) {
  const auto dir = testing::scratch_dir("results");
  const auto path = dir / "log.jsonl";
  const auto records = sample_records();
  write_results(path, records);
  const LoadedResults loaded = load_results(path);
  EXPECT_EQ(loaded.records, records);
  EXPECT_EQ(loaded.statuses.status({1, 2}), Status::Refuted);
  EXPECT_EQ(loaded.statuses.status({1, 3}), Status::Unsolved);
  const StatusEntry* derived = loaded.statuses.find({3, 2});
  ASSERT_NE(derived, nullptr);
  ASSERT_TRUE(derived->premises);
  EXPECT_EQ(derived->premises->first, (EquationPair{1, 3}));
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
}

TEST(ResultsLog, TruncatedLastLineNamesLine) {
  std::string text;
  for (const auto& r : sample_records()) text += to_log_line(r) + "\n";
  text.resize(text.size() - 10);
  std::istringstream in(text);
  try {
    read_results(in);
    FAIL();
  } catch (const ResultsFormatError& e) {
    EXPECT_EQ(e.line(), 5u);
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
  }
}

TEST(ResultsLog, DuplicatePairRejected) {
  const auto r = sample_records()[0];
  std::istringstream in(to_log_line(r) + "\n" + to_log_line(r) + "\n");
  try {
    read_results(in);
    FAIL();
  } catch (const ResultsFormatError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("duplicate"), std::string::npos);
  }
}

TEST(ResultsLog, InvalidRecordsRejected) {
  const char* bad[] = {
      R"({"lhs":1,"rhs":2,"status":"Proven","method":"m","stage":1,"seconds":1})",
      R"({"lhs":1,"rhs":2,"status":"Proven","method":"m","stage":1,"seconds":1,"witness":"none","x":1})",
      R"({"lhs":1,"rhs":1,"status":"Proven","method":"m","stage":1,"seconds":1,"witness":"none"})",
      R"({"lhs":1,"rhs":2,"status":"Maybe","method":"m","stage":1,"seconds":1,"witness":"none"})",
      R"({"lhs":1,"rhs":2,"status":"Proven","method":"","stage":1,"seconds":1,"witness":"none"})",
      R"({"lhs":1,"rhs":2,"status":"Proven","method":"m","stage":1,"seconds":-1,"witness":"none"})",
      R"({"lhs":"1","rhs":2,"status":"Proven","method":"m","stage":1,"seconds":1,"witness":"none"})",
      R"([1,2])",
  };
  for (const char* line : bad) EXPECT_THROW(parse_log_line(line, 1), ResultsFormatError) << line;
}

TEST(ResultsLog, CanonicalOrderAndOutcomeComparison) {
  auto records = sample_records();
  const auto sorted = canonical_order(records);
  for (std::size_t i = 1; i < sorted.size(); ++i) EXPECT_LT(sorted[i - 1].pair(), sorted[i].pair());
  ResultRecord slower = records[0];
  slower.seconds = 99;
  EXPECT_TRUE(same_outcome(records[0], slower));
  slower.witness = "none";
  EXPECT_FALSE(same_outcome(records[0], slower));
}

TEST(ResultsLog, ClosureRecordsAndMerge) {
  StatusMap before;
  before.set({1, 2}, {Status::Proven, "satur-500i", std::nullopt});
  before.set({1, 3}, {Status::Refuted, "fmb-500i", std::nullopt});
  const StatusMap after = propagate(before);
  const auto derived = closure_records(before, after);
  ASSERT_EQ(derived.size(), 1u);
  EXPECT_EQ(derived[0].pair(), (EquationPair{2, 3}));
  EXPECT_EQ(derived[0].method, "closure:R2");
  EXPECT_EQ(derived[0].stage, 0u);
  EXPECT_EQ(derived[0].witness, "from 1,2 1,3");
  const std::vector<ResultRecord> direct = {
      {1, 2, Status::Proven, "satur-500i", 2, 0.1, "proof\n"},
      {2, 3, Status::Unsolved, "", 0, 3.0, "none"},
  };
  const auto merged = merge_derived(direct, derived);
  ASSERT_EQ(merged.size(), 2u);
  EXPECT_EQ(merged[1], derived[0]);
}

}  // namespace
}  // namespace magma
