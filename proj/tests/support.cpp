#include "support.hpp"

#include <atomic>
#include <sstream>

#include <unistd.h>

#include "magma/kbo.hpp"

namespace magma::testing {

namespace fs = std::filesystem;

fs::path desk_corpus_path() { return fs::path(MAGMA_DATA_DIR) / "desk.eqs"; }

Corpus desk_corpus() { return load_corpus(desk_corpus_path()); }

fs::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  const auto dir = fs::temp_directory_path() /
                   ("magma-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter++));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::uint32_t TermGen::below(std::uint32_t n) {
  return std::uniform_int_distribution<std::uint32_t>(0, n - 1)(rng_);
}

Term TermGen::term(std::uint32_t max_ops, std::uint32_t vars, std::uint32_t consts) {
  const std::uint32_t ops = max_ops == 0 ? 0 : below(max_ops + 1);
  // Grow a random binary tree with `ops` internal nodes, then label leaves.
  auto build = [&](auto& self, std::uint32_t n) -> Term {
    if (n == 0) {
      const std::uint32_t pick = below(vars + consts);
      return pick < vars ? Term::var(pick) : Term::constant(pick - vars);
    }
    const std::uint32_t left = below(n);
    return Term::op(self(self, left), self(self, n - 1 - left));
  };
  return build(build, ops);
}

Equation TermGen::equation(std::uint32_t max_ops, std::uint32_t vars) {
  return canonicalize(Equation{std::nullopt, term(max_ops, vars), term(max_ops, vars)});
}

std::vector<Term> all_ground_terms(std::uint32_t consts, std::uint32_t depth) {
  std::vector<Term> level;
  for (std::uint32_t c = 0; c < consts; ++c) level.push_back(Term::constant(c));
  for (std::uint32_t d = 0; d < depth; ++d) {
    std::vector<Term> next;
    for (std::uint32_t c = 0; c < consts; ++c) next.push_back(Term::constant(c));
    for (const auto& l : level) {
      for (const auto& r : level) next.push_back(Term::op(l, r));
    }
    level = std::move(next);
  }
  return level;
}

std::uint32_t oracle_eval(const std::vector<std::uint32_t>& table, std::uint32_t n, const Term& t,
                          const std::vector<std::uint32_t>& env) {
  switch (t.kind()) {
    case Term::Kind::Var: return env.at(t.index());
    case Term::Kind::Const: return t.index() % n;
    case Term::Kind::Op: break;
  }
  return table[oracle_eval(table, n, t.left(), env) * n + oracle_eval(table, n, t.right(), env)];
}

bool oracle_holds(const std::vector<std::uint32_t>& table, std::uint32_t n, const Equation& eq) {
  const std::uint32_t k = eq.var_count();
  std::vector<std::uint32_t> env(k, 0);
  while (true) {
    if (oracle_eval(table, n, eq.lhs, env) != oracle_eval(table, n, eq.rhs, env)) return false;
    std::uint32_t i = 0;
    while (i < k && ++env[i] == n) env[i++] = 0;
    if (i == k) return true;
  }
}

namespace {

std::vector<bool> satisfying_tables(const Equation& eq, std::uint32_t n) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < n * n; ++i) count *= n;
  std::vector<bool> out(count);
  std::vector<std::uint32_t> table(n * n, 0);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t rest = code;
    for (auto& cell : table) {
      cell = static_cast<std::uint32_t>(rest % n);
      rest /= n;
    }
    out[code] = oracle_holds(table, n, eq);
  }
  return out;
}

bool witness(const std::vector<bool>& premise, const std::vector<bool>& conclusion) {
  for (std::size_t i = 0; i < premise.size(); ++i) {
    if (premise[i] && !conclusion[i]) return true;
  }
  return false;
}

}  // namespace

MagmaOracle::MagmaOracle(const std::vector<Equation>& equations) {
  for (const auto& eq : equations) {
    sat2_.push_back(satisfying_tables(eq, 2));
    sat3_.push_back(satisfying_tables(eq, 3));
  }
}

std::uint32_t MagmaOracle::smallest_countermodel(std::size_t i, std::size_t j) const {
  if (witness(sat2_.at(i), sat2_.at(j))) return 2;
  if (witness(sat3_.at(i), sat3_.at(j))) return 3;
  return 0;
}

bool MagmaOracle::countermodel_exists(std::size_t i, std::size_t j) const {
  return smallest_countermodel(i, j) != 0;
}

KboPropertyReport check_kbo_properties(std::uint64_t samples, std::uint64_t seed) {
  KboPropertyReport report;
  auto fail = [&](const std::string& what, const Term& s, const Term& t) {
    if (report.violations.size() < 20) {
      report.violations.push_back(what + ": " + print_term(s) + " vs " + print_term(t));
    }
  };

  const auto ground = all_ground_terms(2, 3);
  for (const auto& s : ground) {
    ++report.irreflexivity_checked;
    if (kbo_greater(s, s) || kbo_compare(s, s) != Order::EQ) fail("irreflexivity", s, s);
  }
  for (const auto& s : ground) {
    for (const auto& t : ground) {
      ++report.totality_checked;
      const Order o = kbo_compare(s, t);
      const bool gt = kbo_greater(s, t), lt = kbo_greater(t, s), eq = s == t;
      if (gt + lt + eq != 1 || o == Order::INC) fail("ground totality", s, t);
    }
  }

  TermGen gen(seed);
  const std::uint64_t max_tries = samples * 200;
  std::uint64_t tries = 0;
  while (report.stability_checked < samples && tries++ < max_tries) {
    const Term s = gen.term(5, 3, 2), t = gen.term(5, 3, 2);
    ++report.irreflexivity_checked;
    if (kbo_greater(s, s)) fail("irreflexivity", s, s);
    if (!kbo_greater(s, t)) continue;
    Substitution sigma;
    for (std::uint32_t v = 0; v < 3; ++v) sigma.bind(v, gen.term(3, 3, 2));
    ++report.stability_checked;
    if (!kbo_greater(apply(s, sigma), apply(t, sigma))) fail("stability", s, t);
  }
  tries = 0;
  while (report.context_checked < samples && tries++ < max_tries) {
    const Term s = gen.term(4, 3, 2), t = gen.term(4, 3, 2);
    if (!kbo_greater(s, t)) continue;
    // Wrap both sides in the same random context, hole at a random leaf.
    Term ctx_s = s, ctx_t = t;
    const std::uint32_t depth = 1 + gen.below(3);
    for (std::uint32_t d = 0; d < depth; ++d) {
      const Term other = gen.term(3, 3, 2);
      if (gen.below(2)) {
        ctx_s = Term::op(ctx_s, other);
        ctx_t = Term::op(ctx_t, other);
      } else {
        ctx_s = Term::op(other, ctx_s);
        ctx_t = Term::op(other, ctx_t);
      }
    }
    ++report.context_checked;
    if (!kbo_greater(ctx_s, ctx_t)) fail("context compatibility", s, t);
  }
  tries = 0;
  while (report.transitivity_checked < samples && tries++ < max_tries) {
    const Term s = gen.term(4, 2, 2), t = gen.term(4, 2, 2), u = gen.term(4, 2, 2);
    if (!kbo_greater(s, t) || !kbo_greater(t, u)) continue;
    ++report.transitivity_checked;
    if (!kbo_greater(s, u)) fail("transitivity", s, u);
  }
  return report;
}

}  // namespace magma::testing
