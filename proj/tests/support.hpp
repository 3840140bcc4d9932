#pragma once

// Test-only helpers: random terms, a brute-force magma oracle that shares no
// code with the model finder, and KBO property checks.

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "magma/eqcore.hpp"
#include "magma/term.hpp"

namespace magma::testing {

std::filesystem::path desk_corpus_path();
Corpus desk_corpus();

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

/// Random terms with `size()` at most `max_ops` operations.
class TermGen {
 public:
  explicit TermGen(std::uint64_t seed) : rng_(seed) {}

  Term term(std::uint32_t max_ops, std::uint32_t vars, std::uint32_t consts = 0);
  Term ground(std::uint32_t max_ops, std::uint32_t consts) { return term(max_ops, 0, consts); }
  Equation equation(std::uint32_t max_ops, std::uint32_t vars);
  std::uint32_t below(std::uint32_t n);
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Every ground term over constants {0..consts-1} with depth <= depth.
std::vector<Term> all_ground_terms(std::uint32_t consts, std::uint32_t depth);

/// Enumerates all n^(n*n) tables of sizes 2 and 3 and records, per equation,
/// which ones satisfy it.
class MagmaOracle {
 public:
  explicit MagmaOracle(const std::vector<Equation>& equations);

  // Some table of size <= 3 satisfies equation i and violates equation j
  // (indexes into the constructor argument).
  bool countermodel_exists(std::size_t i, std::size_t j) const;
  bool holds_everywhere(std::size_t i, std::size_t j) const { return !countermodel_exists(i, j); }
  // Smallest violating size, or 0.
  std::uint32_t smallest_countermodel(std::size_t i, std::size_t j) const;
  std::size_t size() const { return sat2_.size(); }

 private:
  std::vector<std::vector<bool>> sat2_;
  std::vector<std::vector<bool>> sat3_;
};

// Plain recursive evaluation on a row-major table.
std::uint32_t oracle_eval(const std::vector<std::uint32_t>& table, std::uint32_t n, const Term& t,
                          const std::vector<std::uint32_t>& env);
bool oracle_holds(const std::vector<std::uint32_t>& table, std::uint32_t n, const Equation& eq);

struct KboPropertyReport {
  std::uint64_t irreflexivity_checked = 0;
  std::uint64_t totality_checked = 0;
  std::uint64_t stability_checked = 0;
  std::uint64_t context_checked = 0;
  std::uint64_t transitivity_checked = 0;
  std::vector<std::string> violations;
};

// Exhaustive irreflexivity and ground totality over {a,b} terms of depth <= 3,
// and `samples` random pairs each for stability, compatibility and
// transitivity.
KboPropertyReport check_kbo_properties(std::uint64_t samples, std::uint64_t seed);

}  // namespace magma::testing
