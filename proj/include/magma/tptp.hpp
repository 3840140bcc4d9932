#pragma once

#include <stdexcept>
#include <string>

#include "magma/eqcore.hpp"

namespace magma {

/// Negated, skolemized conclusion: `left != right` over constants only.
struct GroundDiseq {
  Term left;
  Term right;

  friend bool operator==(const GroundDiseq&, const GroundDiseq&) = default;
};

class UnsupportedArity : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Variable i becomes skolem constant i; side order is preserved.
GroundDiseq skolemize(const Equation& eq);

std::string print_goal(const GroundDiseq& goal);

// Two-clause CNF problem: the premise as an axiom, the conclusion negated and
// skolemized. At most six variables per side are supported.
std::string export_pair(const Equation& lhs, const Equation& rhs);

std::string tptp_file_name(EquationId lhs, EquationId rhs);

}  // namespace magma
