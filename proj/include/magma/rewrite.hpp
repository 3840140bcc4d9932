#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "magma/eqcore.hpp"
#include "magma/kbo.hpp"

namespace magma {

// Most general unifier with occurs check. Variables of s and t share one
// namespace; rename apart beforehand when they should not.
std::optional<Substitution> unify(const Term& s, const Term& t);

enum class Orientation { LeftToRight, RightToLeft, Unorientable };

/// An equation admitted to the rewrite system, together with its id in the
/// owning derivation (the premise axiom is id 1).
struct ProcessedEq {
  std::uint32_t id = 0;
  Term lhs;
  Term rhs;
  Orientation orientation = Orientation::Unorientable;

  // Orients by KBO; equal sides are left Unorientable (callers discard them).
  static ProcessedEq make(std::uint32_t id, Term lhs, Term rhs);
};

/// One equational replacement inside a larger term. With `reversed` unset
/// the instance of the equation's lhs is replaced by the instance of its rhs.
struct RewriteStep {
  std::uint32_t eq_id = 0;
  Position position;
  Substitution subst;
  bool reversed = false;
};

class RewriteLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultRewriteCap = 1'000'000;

/// Innermost-leftmost normal form under `eqs`.
///
/// Oriented equations rewrite in their direction. Unorientable ones rewrite
/// only when the instantiated replacement is KBO-smaller than the matched
/// instance. On a ground term, variables that occur only on the replacement
/// side are bound to the least constant `a`; on non-ground terms such
/// equations are not applied. Steps are appended to `trace` when given.
Term normalize(const Term& t, std::span<const ProcessedEq> eqs,
               std::vector<RewriteStep>* trace = nullptr,
               std::uint64_t step_cap = kDefaultRewriteCap);

// True if some subterm of t is rewritable by eq in the sense of normalize.
bool reducible_by(const Term& t, const ProcessedEq& eq);

// Applies one step to `t`; throws std::invalid_argument if it does not apply.
Term apply_step(const Term& t, const RewriteStep& step, const Equation& eq);

/// A critical pair together with the two replacements that justify it:
/// `first` turns the pair's lhs into the overlap peak and `second` turns the
/// peak into the pair's rhs. Variables are canonical for the pair.
struct Overlap {
  Equation pair;
  RewriteStep first;
  RewriteStep second;
};

// Overlaps of a rewriting side of `inner` into non-variable positions of a
// rewriting side of `outer`, restricted by orientation and ordering.
// Syntactically trivial pairs are dropped.
std::vector<Overlap> overlaps(const ProcessedEq& inner, const ProcessedEq& outer);

// Both overlap directions, canonicalized and without duplicates.
std::vector<Equation> critical_pairs(const ProcessedEq& e1, const ProcessedEq& e2);

}  // namespace magma
