#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "magma/eqcore.hpp"

namespace magma {

enum class Status { Unsolved, Proven, Refuted };

const char* to_string(Status s);
// Throws std::invalid_argument on an unknown name.
Status parse_status(const std::string& text);

inline bool decided(Status s) { return s != Status::Unsolved; }

struct StatusEntry {
  Status status = Status::Unsolved;
  // Direct method name, or `closure:R1|R2|R3` for derived entries.
  std::string provenance;
  // For derived entries, the two pairs the rule consumed.
  std::optional<std::pair<EquationPair, EquationPair>> premises;

  bool derived() const { return premises.has_value(); }
};

/// Status of ordered implication pairs `lhs -> rhs`.
class StatusMap {
 public:
  void set(EquationPair pair, StatusEntry entry);
  const StatusEntry* find(EquationPair pair) const;
  Status status(EquationPair pair) const;
  std::size_t size() const { return entries_.size(); }

  // Entries sorted by pair.
  std::vector<std::pair<EquationPair, StatusEntry>> sorted() const;

  template <typename F>
  void for_each(F&& f) const {
    for (const auto& [key, entry] : entries_) f(unpack(key), entry);
  }

 private:
  static std::uint64_t pack(EquationPair p) {
    return (std::uint64_t{p.first} << 32) | p.second;
  }
  static EquationPair unpack(std::uint64_t k) {
    return {static_cast<EquationId>(k >> 32), static_cast<EquationId>(k & 0xffffffffu)};
  }

  std::unordered_map<std::uint64_t, StatusEntry> entries_;
};

class ClosureConflict : public std::runtime_error {
 public:
  ClosureConflict(EquationPair pair, const std::string& existing, const std::string& derived);
  EquationPair pair() const { return pair_; }

 private:
  EquationPair pair_;
};

struct PropagateOptions {
  // Nonzero seeds shuffle the initial worklist; the fixpoint is unchanged.
  std::uint64_t shuffle_seed = 0;
};

/// Least fixpoint under
///   R1: A->B, B->C proven         => A->C proven
///   R2: A->B proven, A-/->C refuted => B-/->C refuted
///   R3: B->C proven, A-/->C refuted => A-/->B refuted
/// Decided entries of the input are never overwritten; a derivation that
/// contradicts a decided entry throws ClosureConflict.
StatusMap propagate(const StatusMap& statuses, PropagateOptions options = {});

// Pairs unsolved (or absent) in `before` and decided in `after`.
std::size_t derived_count(const StatusMap& before, const StatusMap& after);

}  // namespace magma
