#pragma once

#include "magma/term.hpp"

namespace magma {

enum class Order { GT, LT, EQ, INC };

const char* to_string(Order o);

/// Knuth-Bendix ordering with every symbol and variable of weight 1 and
/// precedence a < b < c < ... < `*`. Total on ground terms.
Order kbo_compare(const Term& s, const Term& t);

// s >_kbo t.
bool kbo_greater(const Term& s, const Term& t);

}  // namespace magma
