#include <gtest/gtest.h>

#include "magma/kbo.hpp"
#include "support.hpp"

namespace magma {
namespace {

Term V(std::uint32_t i) { return Term::var(i); }
Term C(std::uint32_t i) { return Term::constant(i); }
Term M(Term l, Term r) { return Term::op(std::move(l), std::move(r)); }

// Textbook ground KBO for unit weights: size, then head precedence, then the
// arguments left to right.
Order reference_ground(const Term& s, const Term& t) {
  if (s.size() != t.size()) return s.size() > t.size() ? Order::GT : Order::LT;
  if (s.is_const() && t.is_const()) {
    if (s.index() == t.index()) return Order::EQ;
    return s.index() > t.index() ? Order::GT : Order::LT;
  }
  if (s.is_op() != t.is_op()) return s.is_op() ? Order::GT : Order::LT;
  const Order l = reference_ground(s.left(), t.left());
  return l != Order::EQ ? l : reference_ground(s.right(), t.right());
}

TEST(Kbo, Examples) {
  EXPECT_EQ(kbo_compare(M(V(0), V(1)), V(0)), Order::GT);
  EXPECT_EQ(kbo_compare(V(0), M(V(0), V(1))), Order::LT);
  EXPECT_EQ(kbo_compare(V(0), V(1)), Order::INC);
  EXPECT_EQ(kbo_compare(M(C(0), C(1)), M(C(1), C(0))), Order::LT);
  EXPECT_EQ(kbo_compare(V(0), V(0)), Order::EQ);
  EXPECT_EQ(kbo_compare(C(1), C(0)), Order::GT);
}

TEST(Kbo, VariableConditionBlocksComparison) {
  // Same weight, but y occurs only on one side.
  EXPECT_EQ(kbo_compare(M(V(0), V(1)), M(V(0), V(0))), Order::INC);
  EXPECT_EQ(kbo_compare(M(V(0), V(0)), V(1)), Order::INC);
  // Commutativity is unorientable.
  EXPECT_EQ(kbo_compare(M(V(0), V(1)), M(V(1), V(0))), Order::INC);
  // Associativity orients left to right.
  EXPECT_EQ(kbo_compare(M(M(V(0), V(1)), V(2)), M(V(0), M(V(1), V(2)))), Order::GT);
}

TEST(Kbo, MatchesReferenceOnGroundDepthTwo) {
  const auto terms = testing::all_ground_terms(2, 2);
  ASSERT_EQ(terms.size(), 38u);
  for (const auto& s : terms) {
    for (const auto& t : terms) {
      EXPECT_EQ(kbo_compare(s, t), reference_ground(s, t)) << print_term(s) << " vs " << print_term(t);
    }
  }
}

TEST(Kbo, MatchesReferenceOnRandomGroundTerms) {
  testing::TermGen gen(21);
  for (int i = 0; i < 20000; ++i) {
    const Term s = gen.ground(6, 3), t = gen.ground(6, 3);
    ASSERT_EQ(kbo_compare(s, t), reference_ground(s, t)) << print_term(s) << " vs " << print_term(t);
  }
}

TEST(Kbo, AntisymmetricOnRandomTerms) {
  testing::TermGen gen(22);
  for (int i = 0; i < 20000; ++i) {
    const Term s = gen.term(5, 3, 2), t = gen.term(5, 3, 2);
    const Order st = kbo_compare(s, t), ts = kbo_compare(t, s);
    switch (st) {
      case Order::GT: EXPECT_EQ(ts, Order::LT); break;
      case Order::LT: EXPECT_EQ(ts, Order::GT); break;
      case Order::EQ: EXPECT_EQ(ts, Order::EQ); EXPECT_EQ(s, t); break;
      case Order::INC: EXPECT_EQ(ts, Order::INC); break;
    }
    EXPECT_EQ(kbo_greater(s, t), st == Order::GT);
  }
}

TEST(Kbo, SubtermProperty) {
  testing::TermGen gen(23);
  for (int i = 0; i < 5000; ++i) {
    const Term t = gen.term(6, 3, 2);
    if (!t.is_op()) continue;
    EXPECT_TRUE(kbo_greater(t, t.left()));
    EXPECT_TRUE(kbo_greater(t, t.right()));
  }
}

TEST(Kbo, PropertySuite) {
  const auto report = testing::check_kbo_properties(10000, 2024);
  EXPECT_EQ(report.totality_checked, 1446u * 1446u);
  EXPECT_GE(report.stability_checked, 10000u);
  EXPECT_GE(report.context_checked, 10000u);
  EXPECT_GE(report.transitivity_checked, 10000u);
  for (const auto& v : report.violations) ADD_FAILURE() << v;
}

TEST(Kbo, OrderNames) {
  EXPECT_STREQ(to_string(Order::GT), "GT");
  EXPECT_STREQ(to_string(Order::INC), "INC");
}

}  // namespace
}  // namespace magma
