#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "magma/orchestrate.hpp"
#include "magma/results.hpp"

namespace magma {

struct SummaryRow {
  std::string method;
  std::uint64_t refuted = 0;
  std::uint64_t proven = 0;
  std::uint64_t total() const { return refuted + proven; }
};

/// Per-method counts of decided pairs, plus a totals row.
struct SummaryTable {
  std::vector<SummaryRow> rows;
  SummaryRow totals{"total"};
};

// Rows follow `schedule` when given, otherwise stage order; every closure
// derivation is folded into one trailing `closure` row.
SummaryTable summarize(const std::vector<ResultRecord>& records,
                       const std::optional<Schedule>& schedule = std::nullopt);

struct HistogramRow {
  std::string method;
  Status status = Status::Unsolved;
  // edges.size() + 1 buckets: below the first edge, each [e_i, e_{i+1}),
  // and at or above the last edge.
  std::vector<std::uint64_t> counts;
};

struct Histogram {
  std::vector<double> edges;
  std::vector<HistogramRow> rows;
  std::uint64_t total() const;
};

class ReportError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Powers of ten from 1e-4 s to 1e3 s.
std::vector<double> default_edges();

// Decided records only, grouped by (method, status) in first-seen order of
// the summary's method order. Throws ReportError unless edges has at least two
// strictly increasing values.
Histogram histogram(const std::vector<ResultRecord>& records, const std::vector<double>& edges,
                    const std::optional<Schedule>& schedule = std::nullopt);

enum class Format { Table, Csv };

// "table" or "csv"; throws ReportError otherwise.
Format parse_format(const std::string& name);

std::string render(const SummaryTable& summary, Format format);
std::string render(const Histogram& histogram, Format format);

}  // namespace magma
