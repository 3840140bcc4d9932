#include "magma/results.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace magma {

using nlohmann::json;

ResultsFormatError::ResultsFormatError(std::size_t line, const std::string& message)
    : std::runtime_error("results line " + std::to_string(line) + ": " + message), line_(line) {}

std::string to_log_line(const ResultRecord& r) {
  json j;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["status"] = to_string(r.status);
  j["method"] = r.method;
  j["stage"] = r.stage;
  j["seconds"] = r.seconds;
  j["witness"] = r.witness;
  return j.dump();
}

ResultRecord parse_log_line(const std::string& line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ResultsFormatError(line_no, std::string("malformed record: ") + e.what());
  }
  static const std::set<std::string> kKeys = {"lhs",   "rhs",     "status", "method",
                                              "stage", "seconds", "witness"};
  if (!j.is_object() || j.size() != kKeys.size()) {
    throw ResultsFormatError(line_no, "record must be an object with exactly 7 keys");
  }
  ResultRecord r;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!kKeys.count(key)) throw ResultsFormatError(line_no, "unknown key '" + key + "'");
    }
    r.lhs = j.at("lhs").get<EquationId>();
    r.rhs = j.at("rhs").get<EquationId>();
    r.status = parse_status(j.at("status").get<std::string>());
    r.method = j.at("method").get<std::string>();
    r.stage = j.at("stage").get<std::uint32_t>();
    r.seconds = j.at("seconds").get<double>();
    r.witness = j.at("witness").get<std::string>();
  } catch (const json::exception& e) {
    throw ResultsFormatError(line_no, std::string("bad field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ResultsFormatError(line_no, e.what());
  }
  if (r.lhs == 0 || r.rhs == 0 || r.lhs == r.rhs) {
    throw ResultsFormatError(line_no, "invalid pair");
  }
  if (r.seconds < 0) throw ResultsFormatError(line_no, "negative elapsed time");
  if (decided(r.status) && r.method.empty()) {
    throw ResultsFormatError(line_no, "decided record without a method");
  }
  return r;
}

LoadedResults read_results(std::istream& in) {
  LoadedResults out;
  std::set<EquationPair> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    ResultRecord r = parse_log_line(line, line_no);
    if (!seen.insert(r.pair()).second) {
      throw ResultsFormatError(line_no, "duplicate record for pair (" + std::to_string(r.lhs) +
                                            "," + std::to_string(r.rhs) + ")");
    }
    out.records.push_back(std::move(r));
  }
  out.statuses = status_map(out.records);
  return out;
}

LoadedResults load_results(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_results(in);
}

void write_results(const std::filesystem::path& path, const std::vector<ResultRecord>& records) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    for (const auto& r : records) out << to_log_line(r) << '\n';
    if (!out) throw std::runtime_error("write failed on " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::optional<std::pair<EquationPair, EquationPair>> parse_premises(const std::string& witness) {
  if (!witness.starts_with(kClosurePrefix)) return std::nullopt;
  std::istringstream in(witness.substr(std::string(kClosurePrefix).size()));
  EquationPair p[2];
  for (auto& pair : p) {
    char comma = 0;
    if (!(in >> pair.first >> comma >> pair.second) || comma != ',') return std::nullopt;
  }
  return std::make_pair(p[0], p[1]);
}

std::string premises_text(const std::pair<EquationPair, EquationPair>& p) {
  return std::string(kClosurePrefix) + std::to_string(p.first.first) + "," +
         std::to_string(p.first.second) + " " + std::to_string(p.second.first) + "," +
         std::to_string(p.second.second);
}

}  // namespace

StatusMap status_map(const std::vector<ResultRecord>& records) {
  StatusMap map;
  for (const auto& r : records) {
    StatusEntry e{r.status, r.method, std::nullopt};
    if (r.method.starts_with("closure:")) e.premises = parse_premises(r.witness);
    map.set(r.pair(), std::move(e));
  }
  return map;
}

std::vector<ResultRecord> canonical_order(std::vector<ResultRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const ResultRecord& a, const ResultRecord& b) { return a.pair() < b.pair(); });
  return records;
}

bool same_outcome(const ResultRecord& a, const ResultRecord& b) {
  return a.lhs == b.lhs && a.rhs == b.rhs && a.status == b.status && a.method == b.method &&
         a.stage == b.stage && a.witness == b.witness;
}

std::vector<ResultRecord> closure_records(const StatusMap& before, const StatusMap& after) {
  std::vector<ResultRecord> out;
  for (const auto& [pair, entry] : after.sorted()) {
    if (!decided(entry.status) || decided(before.status(pair)) || !entry.premises) continue;
    ResultRecord r;
    r.lhs = pair.first;
    r.rhs = pair.second;
    r.status = entry.status;
    r.method = entry.provenance;
    r.stage = 0;
    r.seconds = 0;
    r.witness = premises_text(*entry.premises);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ResultRecord> merge_derived(const std::vector<ResultRecord>& direct,
                                        const std::vector<ResultRecord>& derived) {
  std::set<EquationPair> replaced;
  for (const auto& r : derived) replaced.insert(r.pair());
  std::vector<ResultRecord> out;
  for (const auto& r : direct) {
    if (!replaced.count(r.pair())) out.push_back(r);
  }
  out.insert(out.end(), derived.begin(), derived.end());
  return out;
}

}  // namespace magma
