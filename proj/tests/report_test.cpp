#include <gtest/gtest.h>

#include <sstream>

#include "magma/report.hpp"
#include "support.hpp"

namespace magma {
namespace {

ResultRecord rec(EquationId l, EquationId r, Status s, std::string method, std::uint32_t stage,
                 double seconds) {
  return ResultRecord{l, r, s, std::move(method), stage, seconds, "none"};
}

std::vector<ResultRecord> sample() {
  return {
      rec(1, 2, Status::Refuted, "fmb-500i", 1, 0.00005),
      rec(1, 3, Status::Refuted, "fmb-500i", 1, 0.002),
      rec(2, 1, Status::Proven, "satur-500i", 2, 0.05),
      rec(2, 3, Status::Refuted, "satur-500i", 2, 0.5),
      rec(3, 1, Status::Unsolved, "", 0, 1200),
      rec(3, 2, Status::Proven, "closure:R1", 0, 0),
      rec(4, 1, Status::Refuted, "closure:R2", 0, 0),
      rec(4, 2, Status::Refuted, "fmb-60s", 3, 5000),
  };
}

// Minimal CSV reader: no quoting, used to confirm the output is a plain grid.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(Summarize, RowsFollowScheduleWithClosureLast) {
  const SummaryTable t = summarize(sample(), default_schedule());
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_EQ(t.rows[0].method, "fmb-500i");
  EXPECT_EQ(t.rows[4].method, "fmb-600s");
  EXPECT_EQ(t.rows[5].method, "closure");
  EXPECT_EQ(t.rows[0].refuted, 2u);
  EXPECT_EQ(t.rows[1].proven, 1u);
  EXPECT_EQ(t.rows[1].refuted, 1u);
  EXPECT_EQ(t.rows[5].proven, 1u);
  EXPECT_EQ(t.rows[5].refuted, 1u);
  EXPECT_EQ(t.totals.method, "total");
  EXPECT_EQ(t.totals.refuted, 5u);
  EXPECT_EQ(t.totals.proven, 2u);
  EXPECT_EQ(t.totals.total(), 7u);
}

TEST(Summarize, WithoutScheduleUsesStageOrder) {
  const SummaryTable t = summarize(sample());
  ASSERT_EQ(t.rows.size(), 4u);
  EXPECT_EQ(t.rows[0].method, "fmb-500i");
  EXPECT_EQ(t.rows[1].method, "satur-500i");
  EXPECT_EQ(t.rows[2].method, "fmb-60s");
  EXPECT_EQ(t.rows[3].method, "closure");
}

TEST(Summarize, RowSumsAndFooter) {
  const SummaryTable t = summarize(sample(), default_schedule());
  std::uint64_t r = 0, p = 0;
  for (const auto& row : t.rows) {
    EXPECT_EQ(row.total(), row.refuted + row.proven);
    r += row.refuted;
    p += row.proven;
  }
  EXPECT_EQ(r, t.totals.refuted);
  EXPECT_EQ(p, t.totals.proven);
}

TEST(Render, CsvSummaryColumns) {
  const std::string csv = render(summarize(sample(), default_schedule()), Format::Csv);
  const auto rows = read_csv(csv);
  ASSERT_EQ(rows.size(), 8u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"Method", "Refuted", "Proven", "Total"}));
  EXPECT_EQ(rows[1], (std::vector<std::string>{"fmb-500i", "2", "0", "2"}));
  EXPECT_EQ(rows[7], (std::vector<std::string>{"total", "5", "2", "7"}));
  for (const auto& row : rows) EXPECT_EQ(row.size(), 4u);
}

TEST(Render, ZeroSummary) {
  const SummaryTable t = summarize({});
  EXPECT_TRUE(t.rows.empty());
  EXPECT_EQ(render(t, Format::Csv), "Method,Refuted,Proven,Total\ntotal,0,0,0\n");
  const std::string table = render(t, Format::Table);
  EXPECT_EQ(table.rfind("Method", 0), 0u);
  EXPECT_NE(table.find("total"), std::string::npos);
}

TEST(Render, PlainTableIsAligned) {
  const std::string table = render(summarize(sample(), default_schedule()), Format::Table);
  std::istringstream in(table);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("Method", 0), 0u);
  const auto width = line.size();
  while (std::getline(in, line)) EXPECT_EQ(line.size(), width) << line;
}

TEST(Render, Deterministic) {
  const auto records = sample();
  EXPECT_EQ(render(summarize(records), Format::Table), render(summarize(records), Format::Table));
  const auto edges = default_edges();
  EXPECT_EQ(render(histogram(records, edges), Format::Csv), render(histogram(records, edges), Format::Csv));
}

TEST(Histogram, DefaultEdges) {
  const auto e = default_edges();
  ASSERT_EQ(e.size(), 8u);
  EXPECT_DOUBLE_EQ(e.front(), 1e-4);
  EXPECT_DOUBLE_EQ(e.back(), 1e3);
}

TEST(Histogram, BucketsAndConservation) {
  const Histogram h = histogram(sample(), default_edges(), default_schedule());
  EXPECT_EQ(h.total(), 7u);
  ASSERT_EQ(h.rows.size(), 6u);
  for (const auto& row : h.rows) EXPECT_EQ(row.counts.size(), 9u);
  // 5e-5 s lands below the first edge; 2e-3 s in [1e-3, 1e-2), bucket 2.
  EXPECT_EQ(h.rows[0].method, "fmb-500i");
  EXPECT_EQ(h.rows[0].counts[0], 1u);
  EXPECT_EQ(h.rows[0].counts[2], 1u);
  // 5000 s lands in the open top bucket.
  const auto& slow = h.rows[3];
  EXPECT_EQ(slow.method, "fmb-60s");
  EXPECT_EQ(slow.counts[8], 1u);
}

TEST(Histogram, EdgeValuesBelongToUpperBucket) {
  const std::vector<double> edges = {1, 2, 3};
  const Histogram h = histogram({rec(1, 2, Status::Proven, "m", 1, 2.0)}, edges);
  ASSERT_EQ(h.rows.size(), 1u);
  EXPECT_EQ(h.rows[0].counts, (std::vector<std::uint64_t>{0, 0, 1, 0}));
}

TEST(Histogram, RejectsBadEdges) {
  EXPECT_THROW(histogram(sample(), {1.0}), ReportError);
  EXPECT_THROW(histogram(sample(), {}), ReportError);
  EXPECT_THROW(histogram(sample(), {1.0, 1.0}), ReportError);
  EXPECT_THROW(histogram(sample(), {2.0, 1.0, 3.0}), ReportError);
}

TEST(Histogram, CsvGrid) {
  const auto rows = read_csv(render(histogram(sample(), default_edges()), Format::Csv));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0][0], "Method");
  EXPECT_EQ(rows[0][1], "Status");
  for (const auto& row : rows) EXPECT_EQ(row.size(), 11u);
}

TEST(Format, Parse) {
  EXPECT_EQ(parse_format("csv"), Format::Csv);
  EXPECT_EQ(parse_format("table"), Format::Table);
  EXPECT_THROW(parse_format("xml"), ReportError);
}

}  // namespace
}  // namespace magma
