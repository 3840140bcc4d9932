#include "magma/tptp.hpp"

#include <string_view>

namespace magma {

namespace {

constexpr std::string_view kTptpVars = "XYZWUV";
constexpr std::string_view kTptpConsts = "abcdef";

Term ground(const Term& t) {
  if (t.is_var()) return Term::constant(t.index());
  if (t.is_const()) return t;
  return Term::op(ground(t.left()), ground(t.right()));
}

void render(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out += kTptpVars[t.index()];
      return;
    case Term::Kind::Const:
      out += kTptpConsts[t.index()];
      return;
    case Term::Kind::Op:
      break;
  }
  out += "m(";
  render(t.left(), out);
  out += ", ";
  render(t.right(), out);
  out += ')';
}

void check_arity(const Equation& eq, const char* role) {
  if (eq.var_count() > kTptpVars.size()) {
    throw UnsupportedArity(std::string(role) + " equation has " +
                           std::to_string(eq.var_count()) +
                           " variables; TPTP export supports at most 6");
  }
}

}  // namespace

GroundDiseq skolemize(const Equation& eq) { return {ground(eq.lhs), ground(eq.rhs)}; }

std::string print_goal(const GroundDiseq& goal) {
  return print_term(goal.left) + " != " + print_term(goal.right);
}

std::string export_pair(const Equation& lhs, const Equation& rhs) {
  check_arity(lhs, "lhs");
  check_arity(rhs, "rhs");
  const GroundDiseq goal = skolemize(rhs);
  std::string out = "cnf(lhs, axiom, ";
  render(lhs.lhs, out);
  out += " = ";
  render(lhs.rhs, out);
  out += ").\ncnf(rhs, negated_conjecture, ";
  render(goal.left, out);
  out += " != ";
  render(goal.right, out);
  out += ").\n";
  return out;
}

std::string tptp_file_name(EquationId lhs, EquationId rhs) {
  return "p" + std::to_string(lhs) + "_" + std::to_string(rhs) + ".p";
}

}  // namespace magma
