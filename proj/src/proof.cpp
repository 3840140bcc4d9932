#include "magma/proof.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace magma {

std::size_t Proof::step_count() const {
  std::size_t n = goal_steps.size();
  for (const auto& l : lemmas) n += l.steps.size();
  return n;
}

namespace {

bool valid_step(const ProofStep& step, const Equation& eq) {
  if (step.before.empty() || step.after.empty()) return false;
  const Term* sub = nullptr;
  try {
    sub = &subterm_at(step.before, step.position);
  } catch (const std::out_of_range&) {
    return false;
  }
  for (int dir = 0; dir < 2; ++dir) {
    const Term& from = dir == 0 ? eq.lhs : eq.rhs;
    const Term& to = dir == 0 ? eq.rhs : eq.lhs;
    if (!(apply(from, step.subst) == *sub)) continue;
    if (replace_at(step.before, step.position, apply(to, step.subst)) == step.after) return true;
  }
  return false;
}

class Replayer {
 public:
  explicit Replayer(const Equation& axiom) { known_.emplace(kAxiomId, axiom); }

  // Empty optional on success, otherwise the failure.
  std::optional<ReplayResult> chain(const Term& from, const Term& to,
                                    const std::vector<ProofStep>& steps, const std::string& what) {
    Term cur = from;
    for (const auto& step : steps) {
      ++counter_;
      if (!(step.before == cur)) return fail(what + ": step does not continue the chain");
      auto it = known_.find(step.eq_id);
      if (it == known_.end()) {
        return fail(what + ": eq " + std::to_string(step.eq_id) + " is not justified yet");
      }
      if (!valid_step(step, it->second)) {
        return fail(what + ": not an instance of eq " + std::to_string(step.eq_id));
      }
      cur = step.after;
    }
    if (!(cur == to)) {
      return ReplayResult{false, steps.empty() ? 0 : counter_, what + ": chain ends at " +
                                                                   print_term(cur)};
    }
    return std::nullopt;
  }

  bool add(std::uint32_t id, const Equation& eq) { return known_.emplace(id, eq).second; }
  std::size_t counter() const { return counter_; }

 private:
  ReplayResult fail(const std::string& reason) const { return {false, counter_, reason}; }

  std::map<std::uint32_t, Equation> known_;
  std::size_t counter_ = 0;
};

std::string print_subst(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (std::uint32_t v = 0; v < s.extent(); ++v) {
    if (!s.bound(v)) continue;
    if (!first) out += ',';
    first = false;
    out += var_name(v) + "=" + print_term(s.get(v));
  }
  return out + "}";
}

void print_steps(const std::vector<ProofStep>& steps, std::string& out) {
  std::size_t k = 0;
  for (const auto& st : steps) {
    out += "step " + std::to_string(++k) + ": rewrite at " + format_position(st.position) +
           " with eq " + std::to_string(st.eq_id) + " under " + print_subst(st.subst) + ": " +
           print_term(st.before) + " ==> " + print_term(st.after) + "\n";
  }
}

[[noreturn]] void bad_line(std::size_t line, const std::string& msg) {
  throw std::invalid_argument("proof line " + std::to_string(line) + ": " + msg);
}

std::uint32_t parse_id(std::string_view text, std::size_t line) {
  if (text.empty() || text.size() > 9) bad_line(line, "bad id");
  std::uint32_t v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') bad_line(line, "bad id");
    v = v * 10 + static_cast<std::uint32_t>(c - '0');
  }
  return v;
}

std::string_view expect_prefix(std::string_view s, std::string_view prefix, std::size_t line) {
  if (s.substr(0, prefix.size()) != prefix) {
    bad_line(line, "expected '" + std::string(prefix) + "'");
  }
  return s.substr(prefix.size());
}

Substitution parse_subst(std::string_view body, std::size_t line) {
  Substitution s;
  while (!body.empty()) {
    const auto comma = body.find(',');
    const std::string_view item = body.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) bad_line(line, "bad binding");
    const Term v = parse_term(item.substr(0, eq));
    if (!v.is_var() || s.bound(v.index())) bad_line(line, "bad binding variable");
    s.bind(v.index(), parse_term(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return s;
}

ProofStep parse_step(std::string_view rest, std::size_t line) {
  rest = expect_prefix(rest, "step ", line);
  const auto colon = rest.find(": rewrite at ");
  if (colon == std::string_view::npos) bad_line(line, "expected ': rewrite at '");
  rest.remove_prefix(colon + std::string_view(": rewrite at ").size());
  const auto with = rest.find(" with eq ");
  if (with == std::string_view::npos) bad_line(line, "expected ' with eq '");
  ProofStep st;
  try {
    st.position = parse_position(std::string(rest.substr(0, with)));
  } catch (const std::invalid_argument& e) {
    bad_line(line, e.what());
  }
  rest.remove_prefix(with + std::string_view(" with eq ").size());
  const auto under = rest.find(" under {");
  if (under == std::string_view::npos) bad_line(line, "expected ' under {'");
  st.eq_id = parse_id(rest.substr(0, under), line);
  rest.remove_prefix(under + std::string_view(" under {").size());
  const auto close = rest.find("}: ");
  if (close == std::string_view::npos) bad_line(line, "expected '}: '");
  st.subst = parse_subst(rest.substr(0, close), line);
  rest.remove_prefix(close + 3);
  const auto arrow = rest.find(" ==> ");
  if (arrow == std::string_view::npos) bad_line(line, "expected ' ==> '");
  st.before = parse_term(rest.substr(0, arrow));
  st.after = parse_term(rest.substr(arrow + 5));
  return st;
}

}  // namespace

ReplayResult replay_proof(const Proof& proof, const Equation& axiom, const GroundDiseq& goal) {
  if (!(proof.axiom == axiom)) return {false, 0, "proof is for a different axiom"};
  if (!(proof.goal == goal)) return {false, 0, "proof is for a different goal"};
  Replayer r(axiom);
  for (const auto& lemma : proof.lemmas) {
    const std::string what = "lemma " + std::to_string(lemma.id);
    if (auto failure = r.chain(lemma.equation.lhs, lemma.equation.rhs, lemma.steps, what)) {
      return *failure;
    }
    if (!r.add(lemma.id, lemma.equation)) return {false, r.counter(), what + ": duplicate id"};
  }
  if (auto failure = r.chain(goal.left, goal.right, proof.goal_steps, "goal")) return *failure;
  return {true, 0, {}};
}

std::string serialize_proof(const Proof& proof) {
  std::string out = "axiom " + std::to_string(kAxiomId) + ": " + print_equation(proof.axiom) + "\n";
  for (const auto& lemma : proof.lemmas) {
    out += "lemma " + std::to_string(lemma.id) + ": " + print_equation(lemma.equation) + "\n";
    print_steps(lemma.steps, out);
  }
  out += "goal: " + print_goal(proof.goal) + "\n";
  print_steps(proof.goal_steps, out);
  return out;
}

Proof parse_proof(std::string_view text) {
  Proof proof;
  std::vector<ProofStep>* steps = nullptr;
  bool have_axiom = false;
  bool have_goal = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty()) continue;
    try {
      if (line.starts_with("axiom ")) {
        if (have_axiom) bad_line(line_no, "second axiom line");
        auto rest = expect_prefix(line, "axiom 1: ", line_no);
        proof.axiom = parse_equation(rest, Syntax::Trace);
        have_axiom = true;
      } else if (line.starts_with("lemma ")) {
        if (!have_axiom || have_goal) bad_line(line_no, "lemma out of place");
        auto rest = line.substr(6);
        const auto colon = rest.find(": ");
        if (colon == std::string_view::npos) bad_line(line_no, "expected ': '");
        ProofLemma lemma;
        lemma.id = parse_id(rest.substr(0, colon), line_no);
        lemma.equation = parse_equation(rest.substr(colon + 2), Syntax::Trace);
        proof.lemmas.push_back(std::move(lemma));
        steps = &proof.lemmas.back().steps;
      } else if (line.starts_with("goal: ")) {
        if (!have_axiom || have_goal) bad_line(line_no, "goal out of place");
        auto rest = line.substr(6);
        const auto ne = rest.find(" != ");
        if (ne == std::string_view::npos) bad_line(line_no, "expected ' != '");
        proof.goal = {parse_term(rest.substr(0, ne)), parse_term(rest.substr(ne + 4))};
        have_goal = true;
        steps = &proof.goal_steps;
      } else if (line.starts_with("step ")) {
        if (!steps) bad_line(line_no, "step outside a lemma or goal");
        steps->push_back(parse_step(line, line_no));
      } else {
        bad_line(line_no, "unrecognized line");
      }
    } catch (const ParseError& e) {
      bad_line(line_no, e.what());
    }
  }
  if (!have_axiom || !have_goal) throw std::invalid_argument("proof lacks axiom or goal line");
  return proof;
}

}  // namespace magma
