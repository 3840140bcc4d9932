#include "magma/kbo.hpp"

#include <algorithm>
#include <vector>

namespace magma {

const char* to_string(Order o) {
  switch (o) {
    case Order::GT: return "GT";
    case Order::LT: return "LT";
    case Order::EQ: return "EQ";
    case Order::INC: return "INC";
  }
  return "?";
}

namespace {

// Every variable occurs in s at least as often as in t.
bool var_dominates(const Term& s, const Term& t) {
  if (t.ground()) return true;
  std::vector<std::uint32_t> cs, ct;
  count_vars(s, cs);
  count_vars(t, ct);
  for (std::size_t v = 0; v < ct.size(); ++v) {
    if (ct[v] > (v < cs.size() ? cs[v] : 0)) return false;
  }
  return true;
}

// Precedence rank: constants by index, the operation above all of them.
std::uint64_t rank(const Term& t) {
  return t.is_op() ? ~std::uint64_t{0} : t.index();
}

bool greater_same_weight(const Term& s, const Term& t) {
  // Weights are equal and the variable condition holds.
  if (s.is_var()) return false;
  if (t.is_var()) return occurs(t.index(), s) && !(s == t);
  if (rank(s) != rank(t)) return rank(s) > rank(t);
  if (!s.is_op()) return false;
  if (!(s.left() == t.left())) return kbo_greater(s.left(), t.left());
  return kbo_greater(s.right(), t.right());
}

}  // namespace

bool kbo_greater(const Term& s, const Term& t) {
  if (s.is_var()) return false;
  if (s.size() < t.size()) return false;
  if (!var_dominates(s, t)) return false;
  if (s.size() > t.size()) return true;
  return greater_same_weight(s, t);
}

Order kbo_compare(const Term& s, const Term& t) {
  if (s == t) return Order::EQ;
  if (kbo_greater(s, t)) return Order::GT;
  if (kbo_greater(t, s)) return Order::LT;
  return Order::INC;
}

}  // namespace magma
