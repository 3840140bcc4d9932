#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "magma/budget.hpp"
#include "magma/eqcore.hpp"
#include "magma/results.hpp"

namespace magma {

enum class Engine { ModelFinder, Saturation };

struct MethodSpec {
  std::string name;
  Engine engine = Engine::ModelFinder;
  Budget budget;
  // Largest domain size tried by the model finder.
  std::uint32_t max_size = 6;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

/// Stages are tried in order; the first one that decides a pair wins.
struct Schedule {
  std::vector<MethodSpec> stages;
};

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultFmbSteps = 50'000;
inline constexpr std::uint64_t kDefaultSaturSteps = 1'000;

// fmb-500i, satur-500i, fmb-60s, satur-600s, fmb-600s.
Schedule default_schedule();

// Nonempty, unique names, positive budgets, max_size >= 2.
void validate(const Schedule& schedule);

// One stage per line: `<name> <fmb|satur> <steps|seconds> <amount> [max_size=<n>]`.
// Blank lines and `#` comments are skipped.
Schedule parse_schedule(std::string_view text);
Schedule load_schedule(const std::filesystem::path& path);

struct RunConfig {
  unsigned workers = 1;
  // Reserved; engines are deterministic.
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> log_path;
  bool resume = false;
  // Saturation without a proof counts as a refutation (witness `saturation`).
  bool saturation_refutes = true;
};

struct AttemptResult {
  Status status = Status::Unsolved;
  std::string witness = kWitnessNone;
  double seconds = 0;
};

AttemptResult attempt(const MethodSpec& method, const Equation& premise,
                      const Equation& conclusion, bool saturation_refutes = true);

// Runs the schedule on one pair; engine exceptions become an unsolved record.
ResultRecord solve_pair(const Corpus& corpus, EquationPair pair, const Schedule& schedule,
                        const RunConfig& config);

/// Decides every ordered pair of the corpus.
///
/// With a log path, each final record is appended as soon as it is known. With
/// `resume`, decided records already in the log are kept and their pairs
/// skipped; unsolved ones are retried. Returns all final records, sorted by pair.
std::vector<ResultRecord> run(const Corpus& corpus, const Schedule& schedule,
                              const RunConfig& config);

}  // namespace magma
