#include "magma/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace magma {

namespace {

constexpr const char* kClosureRow = "closure";

std::string row_name(const ResultRecord& r) {
  return r.method.starts_with("closure:") ? std::string(kClosureRow) : r.method;
}

// Method names in display order: schedule stages first (when known), then any
// other direct methods by stage number and name, then the closure row.
std::vector<std::string> method_order(const std::vector<ResultRecord>& records,
                                      const std::optional<Schedule>& schedule) {
  std::vector<std::string> order;
  auto known = [&](const std::string& name) {
    return std::find(order.begin(), order.end(), name) != order.end();
  };
  if (schedule) {
    for (const auto& stage : schedule->stages) order.push_back(stage.name);
  }
  std::map<std::pair<std::uint32_t, std::string>, bool> extra;
  bool closure = false;
  for (const auto& r : records) {
    if (!decided(r.status)) continue;
    const std::string name = row_name(r);
    if (name == kClosureRow) {
      closure = true;
    } else if (!known(name)) {
      extra[{r.stage, name}] = true;
    }
  }
  for (const auto& [key, unused] : extra) {
    if (!known(key.second)) order.push_back(key.second);
  }
  if (closure) order.push_back(kClosureRow);
  return order;
}

std::string format_edge(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::vector<std::string> bucket_labels(const std::vector<double>& edges) {
  std::vector<std::string> labels;
  labels.push_back("<" + format_edge(edges.front()));
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    labels.push_back(format_edge(edges[i]) + ".." + format_edge(edges[i + 1]));
  }
  labels.push_back(">=" + format_edge(edges.back()));
  return labels;
}

std::string render_grid(const std::vector<std::vector<std::string>>& grid, Format format,
                        std::size_t footer_from) {
  std::ostringstream out;
  if (format == Format::Csv) {
    for (const auto& row : grid) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
    return out.str();
  }
  std::vector<std::size_t> width(grid.front().size(), 0);
  for (const auto& row : grid) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::size_t line_len = 0;
  for (auto w : width) line_len += w + 2;
  line_len -= 2;
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      const std::string pad(width[c] - row[c].size(), ' ');
      // First column left-aligned, numbers right-aligned.
      line += c == 0 ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == 1 || (i == footer_from && footer_from < grid.size())) {
      out << std::string(line_len, '-') << '\n';
    }
    emit(grid[i]);
  }
  return out.str();
}

}  // namespace

SummaryTable summarize(const std::vector<ResultRecord>& records,
                       const std::optional<Schedule>& schedule) {
  SummaryTable t;
  const auto order = method_order(records, schedule);
  std::map<std::string, std::size_t> index;
  for (const auto& name : order) {
    index[name] = t.rows.size();
    t.rows.push_back(SummaryRow{name});
  }
  for (const auto& r : records) {
    if (!decided(r.status)) continue;
    SummaryRow& row = t.rows[index.at(row_name(r))];
    (r.status == Status::Refuted ? row.refuted : row.proven)++;
    (r.status == Status::Refuted ? t.totals.refuted : t.totals.proven)++;
  }
  return t;
}

std::vector<double> default_edges() {
  std::vector<double> e;
  for (int k = -4; k <= 3; ++k) e.push_back(std::pow(10.0, k));
  return e;
}

std::uint64_t Histogram::total() const {
  std::uint64_t n = 0;
  for (const auto& row : rows) {
    for (auto c : row.counts) n += c;
  }
  return n;
}

Histogram histogram(const std::vector<ResultRecord>& records, const std::vector<double>& edges,
                    const std::optional<Schedule>& schedule) {
  if (edges.size() < 2) throw ReportError("histogram needs at least two edges");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!std::isfinite(edges[i])) throw ReportError("histogram edges must be finite");
    if (i && !(edges[i - 1] < edges[i])) {
      throw ReportError("histogram edges must be strictly increasing");
    }
  }
  Histogram h;
  h.edges = edges;
  std::map<std::pair<std::string, Status>, std::size_t> index;
  for (const auto& name : method_order(records, schedule)) {
    for (Status s : {Status::Refuted, Status::Proven}) {
      const bool present = std::any_of(records.begin(), records.end(), [&](const auto& r) {
        return r.status == s && row_name(r) == name;
      });
      if (!present) continue;
      index[{name, s}] = h.rows.size();
      h.rows.push_back(HistogramRow{name, s, std::vector<std::uint64_t>(edges.size() + 1, 0)});
    }
  }
  for (const auto& r : records) {
    if (!decided(r.status)) continue;
    // upper_bound gives the count of edges <= seconds, which is the bucket.
    const auto bucket = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), r.seconds) - edges.begin());
    h.rows[index.at({row_name(r), r.status})].counts[bucket]++;
  }
  return h;
}

Format parse_format(const std::string& name) {
  if (name == "table") return Format::Table;
  if (name == "csv") return Format::Csv;
  throw ReportError("unknown format '" + name + "' (expected table or csv)");
}

std::string render(const SummaryTable& summary, Format format) {
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"Method", "Refuted", "Proven", "Total"});
  auto add = [&](const SummaryRow& r) {
    grid.push_back({r.method, std::to_string(r.refuted), std::to_string(r.proven),
                    std::to_string(r.total())});
  };
  for (const auto& r : summary.rows) add(r);
  const std::size_t footer = grid.size();
  add(summary.totals);
  return render_grid(grid, format, footer);
}

std::string render(const Histogram& histogram, Format format) {
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header = {"Method", "Status"};
  for (auto& label : bucket_labels(histogram.edges)) header.push_back(std::move(label));
  grid.push_back(std::move(header));
  for (const auto& row : histogram.rows) {
    std::vector<std::string> line = {row.method, to_string(row.status)};
    for (auto c : row.counts) line.push_back(std::to_string(c));
    grid.push_back(std::move(line));
  }
  return render_grid(grid, format, grid.size());
}

}  // namespace magma
