#include "magma/saturate.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>

namespace magma {

namespace {

// Prefix encoding with variables numbered by first occurrence across both
// sides, so two equations get the same key exactly when they are variants.
struct VarNames {
  std::vector<std::uint32_t> of;
  std::uint32_t next = 0;
  std::uint32_t operator()(std::uint32_t v) {
    if (v >= of.size()) of.resize(v + 1, UINT32_MAX);
    if (of[v] == UINT32_MAX) of[v] = next++;
    return of[v];
  }
};

void push_index(std::uint32_t i, std::string& out) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<char>((i >> shift) & 0xff));
}

void encode(const Term& t, VarNames& names, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Op:
      out.push_back('*');
      encode(t.left(), names, out);
      encode(t.right(), names, out);
      return;
    case Term::Kind::Const:
      out.push_back('c');
      push_index(t.index(), out);
      return;
    case Term::Kind::Var:
      out.push_back('v');
      push_index(names(t.index()), out);
      return;
  }
}

std::string variant_key(const Term& l, const Term& r) {
  std::string a, b;
  VarNames left_first, right_first;
  encode(l, left_first, a);
  a.push_back('=');
  encode(r, left_first, a);
  encode(r, right_first, b);
  b.push_back('=');
  encode(l, right_first, b);
  return std::min(a, b);
}

void append_reversed(const std::vector<RewriteStep>& steps, std::vector<RewriteStep>& out) {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    RewriteStep s = *it;
    s.reversed = !s.reversed;
    out.push_back(std::move(s));
  }
}

class Completion {
 public:
  Completion(const Equation& axiom, const GroundDiseq& goal)
      : axiom_(axiom), goal_(goal), goal_left_(goal.left), goal_right_(goal.right) {
    const auto id = store(Equation{std::nullopt, axiom.lhs, axiom.rhs}, {});
    seen_.insert(variant_key(axiom.lhs, axiom.rhs));
    enqueue(id);
  }

  SaturationOutcome run(Budget budget) {
    BudgetMeter meter(budget);
    if (goal_left_ == goal_right_) return Proved{extract_proof(), 0};
    if (meter.exhausted()) return SaturationOutOfBudget{0};
    while (true) {
      if (meter.exhausted()) return SaturationOutOfBudget{meter.steps()};
      if (passive_.empty()) return Saturated{meter.steps()};
      meter.consume();
      if (step()) return Proved{extract_proof(), meter.steps()};
    }
  }

 private:
  struct Stored {
    Equation eq;
    std::vector<RewriteStep> justification;
  };

  struct Queued {
    std::uint32_t weight;
    std::uint64_t seq;
    std::uint32_t id;
    bool operator>(const Queued& o) const {
      return weight != o.weight ? weight > o.weight : seq > o.seq;
    }
  };

  std::uint32_t store(Equation eq, std::vector<RewriteStep> justification) {
    store_.push_back({std::move(eq), std::move(justification)});
    return static_cast<std::uint32_t>(store_.size());
  }

  const Equation& eq_of(std::uint32_t id) const { return store_[id - 1].eq; }

  void enqueue(std::uint32_t id) {
    const auto& eq = eq_of(id);
    passive_.push({eq.lhs.size() + eq.rhs.size(), seq_++, id});
  }

  // One given-equation iteration; true once the goal is closed.
  bool step() {
    const std::uint32_t given = passive_.top().id;
    passive_.pop();
    const Equation raw = eq_of(given);

    std::vector<RewriteStep> lsteps, rsteps;
    Term l = normalize(raw.lhs, active_, &lsteps);
    Term r = normalize(raw.rhs, active_, &rsteps);
    if (l == r) return false;

    std::uint32_t id = given;
    if (!lsteps.empty() || !rsteps.empty()) {
      std::vector<RewriteStep> just;
      append_reversed(lsteps, just);
      just.push_back({given, {}, {}, false});
      just.insert(just.end(), rsteps.begin(), rsteps.end());
      id = store(Equation{std::nullopt, l, r}, std::move(just));
    }
    const std::string key = variant_key(l, r);
    if (active_keys_.count(key)) return false;

    ProcessedEq added = ProcessedEq::make(id, std::move(l), std::move(r));
    interreduce(added);
    active_.push_back(added);
    active_keys_.insert(key);

    for (std::size_t i = 0; i < active_.size(); ++i) {
      add_pairs(overlaps(added, active_[i]));
      if (active_[i].id != added.id) add_pairs(overlaps(active_[i], added));
    }

    goal_left_ = normalize(goal_left_, active_, &goal_left_steps_);
    goal_right_ = normalize(goal_right_, active_, &goal_right_steps_);
    return goal_left_ == goal_right_;
  }

  void interreduce(const ProcessedEq& added) {
    auto keep = active_.begin();
    for (auto it = active_.begin(); it != active_.end(); ++it) {
      if (reducible_by(it->lhs, added) || reducible_by(it->rhs, added)) {
        active_keys_.erase(variant_key(it->lhs, it->rhs));
        enqueue(it->id);
      } else {
        if (keep != it) *keep = std::move(*it);
        ++keep;
      }
    }
    active_.erase(keep, active_.end());
  }

  void add_pairs(std::vector<Overlap> found) {
    for (auto& ov : found) {
      if (!seen_.insert(variant_key(ov.pair.lhs, ov.pair.rhs)).second) continue;
      enqueue(store(std::move(ov.pair), {std::move(ov.first), std::move(ov.second)}));
    }
  }

  std::vector<ProofStep> expand(const Term& start, const std::vector<RewriteStep>& steps) const {
    std::vector<ProofStep> out;
    Term cur = start;
    for (const auto& s : steps) {
      Term next = apply_step(cur, s, eq_of(s.eq_id));
      out.push_back({cur, s.position, s.eq_id, s.subst, next});
      cur = std::move(next);
    }
    return out;
  }

  Proof extract_proof() const {
    std::vector<RewriteStep> goal_chain = goal_left_steps_;
    append_reversed(goal_right_steps_, goal_chain);

    std::vector<bool> needed(store_.size() + 1, false);
    std::vector<std::uint32_t> work;
    auto mark = [&](const std::vector<RewriteStep>& steps) {
      for (const auto& s : steps) {
        if (!needed[s.eq_id]) {
          needed[s.eq_id] = true;
          work.push_back(s.eq_id);
        }
      }
    };
    mark(goal_chain);
    while (!work.empty()) {
      const auto id = work.back();
      work.pop_back();
      mark(store_[id - 1].justification);
    }

    Proof proof;
    proof.axiom = Equation{std::nullopt, axiom_.lhs, axiom_.rhs};
    proof.goal = goal_;
    for (std::uint32_t id = kAxiomId + 1; id <= store_.size(); ++id) {
      if (!needed[id]) continue;
      const auto& st = store_[id - 1];
      proof.lemmas.push_back(
          {id, Equation{std::nullopt, st.eq.lhs, st.eq.rhs}, expand(st.eq.lhs, st.justification)});
    }
    proof.goal_steps = expand(goal_.left, goal_chain);
    return proof;
  }

  const Equation& axiom_;
  GroundDiseq goal_;
  std::vector<Stored> store_;
  std::priority_queue<Queued, std::vector<Queued>, std::greater<>> passive_;
  std::uint64_t seq_ = 0;
  std::vector<ProcessedEq> active_;
  std::unordered_set<std::string> active_keys_;
  std::unordered_set<std::string> seen_;
  Term goal_left_;
  Term goal_right_;
  std::vector<RewriteStep> goal_left_steps_;
  std::vector<RewriteStep> goal_right_steps_;
};

}  // namespace

SaturationOutcome saturate(const Equation& axiom, const GroundDiseq& goal, Budget budget) {
  return Completion(axiom, goal).run(budget);
}

}  // namespace magma
