#pragma once

#include <cstdint>
#include <variant>

#include "magma/budget.hpp"
#include "magma/proof.hpp"
#include "magma/rewrite.hpp"
#include "magma/tptp.hpp"

namespace magma {

struct Proved {
  Proof proof;
  std::uint64_t steps;
};
// No unprocessed equation remains and the goal's normal forms differ: the
// axiom does not entail the goal, though no finite model is produced.
struct Saturated {
  std::uint64_t steps;
};
struct SaturationOutOfBudget {
  std::uint64_t steps;
};
using SaturationOutcome = std::variant<Proved, Saturated, SaturationOutOfBudget>;

/// Unfailing completion of a single unit axiom against a ground goal.
///
/// Given-clause loop: take the lightest unprocessed equation (FIFO among
/// ties), normalize it, drop it if trivial or a variant of an active one,
/// orient it, move active equations it simplifies back to the unprocessed
/// set, add its critical pairs with every active equation, and renormalize
/// the goal. Each iteration is one budget step.
SaturationOutcome saturate(const Equation& axiom, const GroundDiseq& goal, Budget budget);

}  // namespace magma
