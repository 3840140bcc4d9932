#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "magma/closure.hpp"
#include "magma/eqcore.hpp"

namespace magma {

/// Final outcome for one ordered pair.
///
/// `stage` is the 1-based schedule stage that decided the pair, or 0 for
/// unsolved and closure-derived records. `witness` is one of:
///   `none`, `saturation`, `model\n<countermodel>`, `proof\n<trace>`,
///   `from i,j k,l` (closure premises), or `error: <message>`.
struct ResultRecord {
  EquationId lhs = 0;
  EquationId rhs = 0;
  Status status = Status::Unsolved;
  std::string method;
  std::uint32_t stage = 0;
  double seconds = 0;
  std::string witness = "none";

  EquationPair pair() const { return {lhs, rhs}; }
  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

inline constexpr const char* kWitnessNone = "none";
inline constexpr const char* kWitnessSaturation = "saturation";
inline constexpr const char* kModelPrefix = "model\n";
inline constexpr const char* kProofPrefix = "proof\n";
inline constexpr const char* kClosurePrefix = "from ";

class ResultsFormatError : public std::runtime_error {
 public:
  ResultsFormatError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// One JSON object per line with keys lhs, rhs, status, method, stage,
// seconds, witness.
std::string to_log_line(const ResultRecord& r);
ResultRecord parse_log_line(const std::string& line, std::size_t line_no);

struct LoadedResults {
  std::vector<ResultRecord> records;
  StatusMap statuses;
};

LoadedResults load_results(const std::filesystem::path& path);
LoadedResults read_results(std::istream& in);
void write_results(const std::filesystem::path& path, const std::vector<ResultRecord>& records);

StatusMap status_map(const std::vector<ResultRecord>& records);

// Sorted by pair; the order used for comparing runs.
std::vector<ResultRecord> canonical_order(std::vector<ResultRecord> records);
// Records equal in everything except measured time.
bool same_outcome(const ResultRecord& a, const ResultRecord& b);

// Records for the entries that `after` decided beyond `before`.
std::vector<ResultRecord> closure_records(const StatusMap& before, const StatusMap& after);

// Replaces unsolved records by derived ones and appends the rest.
std::vector<ResultRecord> merge_derived(const std::vector<ResultRecord>& direct,
                                        const std::vector<ResultRecord>& derived);

}  // namespace magma
