#include "magma/modelfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace magma {

MagmaTable::MagmaTable(std::uint32_t n, Element fill) : n_(n), entries_(std::size_t{n} * n, fill) {
  if (n == 0) throw std::invalid_argument("magma size must be at least 1");
  if (fill >= n) throw std::invalid_argument("table entry out of range");
}

MagmaTable::MagmaTable(std::uint32_t n, std::vector<Element> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0) throw std::invalid_argument("magma size must be at least 1");
  if (entries_.size() != std::size_t{n} * n) {
    throw std::invalid_argument("table must have n*n entries");
  }
  for (auto e : entries_) {
    if (e >= n) throw std::invalid_argument("table entry out of range");
  }
}

void MagmaTable::set(Element i, Element j, Element v) {
  if (i >= n_ || j >= n_ || v >= n_) throw std::out_of_range("table index out of range");
  entries_[i * n_ + j] = v;
}

Element MagmaTable::evaluate(const Term& t, std::span<const Element> assignment) const {
  switch (t.kind()) {
    case Term::Kind::Var:
      return assignment[t.index()];
    case Term::Kind::Const:
      throw std::invalid_argument("cannot evaluate a skolem constant");
    case Term::Kind::Op:
      break;
  }
  return at(evaluate(t.left(), assignment), evaluate(t.right(), assignment));
}

namespace {

// Advances a base-n odometer with the first digit most significant.
bool next_assignment(Assignment& a, std::uint32_t n) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (++a[i] < n) return true;
    a[i] = 0;
  }
  return false;
}

std::uint64_t checked_power(std::uint64_t base, std::uint64_t exp, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

/// Postfix form of a term: non-negative entries are variables, kOp applies
/// the operation to the two topmost values.
class CompiledTerm {
 public:
  static constexpr std::int32_t kOp = -1;

  explicit CompiledTerm(const Term& t) { emit(t); }

  // Value of the term, or -(cell + 1) for the first unassigned cell it needs.
  std::int64_t evaluate(std::span<const std::int32_t> table, std::uint32_t n,
                        std::span<const Element> assignment,
                        std::vector<std::int32_t>& stack) const {
    stack.clear();
    for (auto code : code_) {
      if (code != kOp) {
        stack.push_back(static_cast<std::int32_t>(assignment[code]));
        continue;
      }
      const auto r = stack.back();
      stack.pop_back();
      const auto cell = static_cast<std::uint32_t>(stack.back()) * n + static_cast<std::uint32_t>(r);
      const auto v = table[cell];
      if (v < 0) return -static_cast<std::int64_t>(cell) - 1;
      stack.back() = v;
    }
    return stack.back();
  }

 private:
  void emit(const Term& t) {
    if (t.is_var()) {
      code_.push_back(static_cast<std::int32_t>(t.index()));
      return;
    }
    if (!t.is_op()) throw std::invalid_argument("model search requires variable-only terms");
    emit(t.left());
    emit(t.right());
    code_.push_back(kOp);
  }

  std::vector<std::int32_t> code_;
};

constexpr std::uint64_t kMaxInstances = 50'000'000;

enum class SizeResult { Found, Exhausted, OutOfBudget, TooLarge };

class SizeSearch {
 public:
  SizeSearch(const Equation& premise, const Equation& conclusion, std::uint32_t n,
             BudgetMeter& meter)
      : premise_(premise),
        conclusion_(conclusion),
        lhs_(premise.lhs),
        rhs_(premise.rhs),
        n_(n),
        cells_(n * n),
        k_(premise.var_count()),
        meter_(meter),
        table_(cells_, -1),
        watches_(cells_),
        marks_(cells_ + 1, 0),
        next_value_(cells_ + 1, 0),
        max_used_(cells_ + 1, -1),
        assignment_(k_, 0) {}

  SizeResult run() {
    const std::uint64_t instances = checked_power(n_, k_, kMaxInstances);
    if (instances > kMaxInstances) return SizeResult::TooLarge;
    for (std::uint64_t inst = 0; inst < instances; ++inst) {
      const auto blocked = evaluate_instance(inst);
      if (blocked == kViolated) return SizeResult::Exhausted;
      if (blocked != kSatisfied) watches_[blocked].push_back(static_cast<std::uint32_t>(inst));
    }

    std::uint32_t c = 0;
    next_value_[0] = 0;
    while (true) {
      if (c == cells_) {
        if (complete_table()) return SizeResult::Found;
        if (!backtrack(c)) return SizeResult::Exhausted;
        continue;
      }
      const auto i = static_cast<std::int32_t>(c / n_);
      const auto j = static_cast<std::int32_t>(c % n_);
      const std::int32_t used = std::max({max_used_[c], i, j});
      const auto limit = std::min<std::int32_t>(static_cast<std::int32_t>(n_) - 1, used + 1);
      const auto v = next_value_[c];
      if (v > limit) {
        if (!backtrack(c)) return SizeResult::Exhausted;
        continue;
      }
      next_value_[c] = v + 1;
      if (meter_.exhausted()) return SizeResult::OutOfBudget;
      meter_.consume();
      if (!assign(c, v)) {
        unassign(c);
        continue;
      }
      max_used_[c + 1] = std::max(used, v);
      ++c;
      next_value_[c] = 0;
    }
  }

  Countermodel countermodel() const { return {to_table(), violation_}; }

 private:
  static constexpr std::uint32_t kSatisfied = std::numeric_limits<std::uint32_t>::max();
  static constexpr std::uint32_t kViolated = kSatisfied - 1;

  // kSatisfied, kViolated, or the cell the instance is blocked on.
  std::uint32_t evaluate_instance(std::uint64_t inst) {
    for (std::size_t v = k_; v-- > 0;) {
      assignment_[v] = static_cast<Element>(inst % n_);
      inst /= n_;
    }
    const auto l = lhs_.evaluate(table_, n_, assignment_, stack_);
    if (l < 0) return static_cast<std::uint32_t>(-l - 1);
    const auto r = rhs_.evaluate(table_, n_, assignment_, stack_);
    if (r < 0) return static_cast<std::uint32_t>(-r - 1);
    return l == r ? kSatisfied : kViolated;
  }

  bool assign(std::uint32_t c, std::int32_t v) {
    table_[c] = v;
    marks_[c] = trail_.size();
    // Moved instances land on strictly later cells, so watches_[c] is stable.
    for (const auto inst : watches_[c]) {
      const auto r = evaluate_instance(inst);
      if (r == kViolated) return false;
      if (r == kSatisfied) continue;
      watches_[r].push_back(inst);
      trail_.push_back(r);
    }
    return true;
  }

  void unassign(std::uint32_t c) {
    while (trail_.size() > marks_[c]) {
      watches_[trail_.back()].pop_back();
      trail_.pop_back();
    }
    table_[c] = -1;
  }

  bool backtrack(std::uint32_t& c) {
    if (c == 0) return false;
    --c;
    unassign(c);
    return true;
  }

  MagmaTable to_table() const {
    std::vector<Element> entries(table_.begin(), table_.end());
    return MagmaTable(n_, std::move(entries));
  }

  bool complete_table() {
    const MagmaTable model = to_table();
    if (!verify_equation(model, premise_).holds()) {
      throw std::logic_error("model search accepted a table violating the premise");
    }
    auto check = verify_equation(model, conclusion_);
    if (check.holds()) return false;
    violation_ = std::move(*check.violation);
    return true;
  }

  const Equation& premise_;
  const Equation& conclusion_;
  CompiledTerm lhs_;
  CompiledTerm rhs_;
  std::uint32_t n_;
  std::uint32_t cells_;
  std::uint32_t k_;
  BudgetMeter& meter_;
  std::vector<std::int32_t> table_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::uint32_t> trail_;
  std::vector<std::size_t> marks_;
  std::vector<std::int32_t> next_value_;
  // Largest element mentioned by the values and coordinates of cells < c.
  std::vector<std::int32_t> max_used_;
  Assignment assignment_;
  std::vector<std::int32_t> stack_;
  Assignment violation_;
};

}  // namespace

Verification verify_equation(const MagmaTable& model, const Equation& eq) {
  Assignment a(eq.var_count(), 0);
  do {
    if (model.evaluate(eq.lhs, a) != model.evaluate(eq.rhs, a)) return {a};
  } while (next_assignment(a, model.size()));
  return {};
}

SearchOutcome find_countermodel(const Equation& premise, const Equation& conclusion,
                                std::uint32_t max_size, Budget budget) {
  if (max_size < 2) throw std::invalid_argument("max_size must be at least 2");
  BudgetMeter meter(budget, 256);
  bool complete = true;
  // A one-element magma satisfies every equation, so the search starts at 2.
  for (std::uint32_t n = 2; n <= max_size; ++n) {
    SizeSearch search(premise, conclusion, n, meter);
    switch (search.run()) {
      case SizeResult::Found:
        return ModelFound{search.countermodel()};
      case SizeResult::OutOfBudget:
        return ModelSearchOutOfBudget{meter.steps(), meter.elapsed()};
      case SizeResult::TooLarge:
        complete = false;
        break;
      case SizeResult::Exhausted:
        break;
    }
  }
  if (!complete) return ModelSearchOutOfBudget{meter.steps(), meter.elapsed()};
  return ModelSpaceExhausted{max_size};
}

bool check_countermodel(const Countermodel& cm, const Equation& premise,
                        const Equation& conclusion) {
  if (premise.var_count() == 0 || conclusion.var_count() == 0) return false;
  if (cm.violating_assignment.size() != conclusion.var_count()) return false;
  for (auto e : cm.violating_assignment) {
    if (e >= cm.model.size()) return false;
  }
  if (!verify_equation(cm.model, premise).holds()) return false;
  return cm.model.evaluate(conclusion.lhs, cm.violating_assignment) !=
         cm.model.evaluate(conclusion.rhs, cm.violating_assignment);
}

std::uint64_t count_models(const Equation& eq, std::uint32_t n, std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("magma size must be at least 1");
  const std::uint64_t tables = checked_power(n, std::uint64_t{n} * n, cap);
  if (tables > cap) {
    throw EnumerationTooLarge("enumerating all " + std::to_string(n) +
                              "-element tables exceeds the configured cap");
  }
  Assignment cells(std::size_t{n} * n, 0);
  std::uint64_t count = 0;
  do {
    if (verify_equation(MagmaTable(n, cells), eq).holds()) ++count;
  } while (next_assignment(cells, n));
  return count;
}

std::string serialize_countermodel(const Countermodel& cm) {
  const auto n = cm.model.size();
  std::ostringstream out;
  out << n << '\n';
  for (Element i = 0; i < n; ++i) {
    for (Element j = 0; j < n; ++j) out << (j ? " " : "") << cm.model.at(i, j);
    out << '\n';
  }
  for (std::size_t v = 0; v < cm.violating_assignment.size(); ++v) {
    out << (v ? " " : "") << var_name(static_cast<std::uint32_t>(v)) << '='
        << cm.violating_assignment[v];
  }
  return out.str();
}

Countermodel parse_countermodel(std::string_view text) {
  std::istringstream in{std::string(text)};
  long long n = 0;
  if (!(in >> n) || n < 1 || n > 1024) throw std::invalid_argument("bad countermodel size");
  std::vector<Element> entries;
  for (long long c = 0; c < n * n; ++c) {
    long long e = 0;
    if (!(in >> e) || e < 0 || e >= n) throw std::invalid_argument("bad countermodel entry");
    entries.push_back(static_cast<Element>(e));
  }
  MagmaTable model(static_cast<std::uint32_t>(n), std::move(entries));
  Assignment assignment;
  std::string binding;
  while (in >> binding) {
    const auto eq = binding.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad assignment '" + binding + "'");
    const std::string name = binding.substr(0, eq);
    if (name != var_name(static_cast<std::uint32_t>(assignment.size()))) {
      throw std::invalid_argument("assignment variables out of order at '" + binding + "'");
    }
    try {
      std::size_t used = 0;
      const auto value = std::stoll(binding.substr(eq + 1), &used);
      if (used != binding.size() - eq - 1 || value < 0 || value >= n) throw std::out_of_range("");
      assignment.push_back(static_cast<Element>(value));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad assignment '" + binding + "'");
    }
  }
  return {std::move(model), std::move(assignment)};
}

}  // namespace magma
