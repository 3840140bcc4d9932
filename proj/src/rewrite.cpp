#include "magma/rewrite.hpp"

#include <algorithm>
#include <string>

namespace magma {

namespace {

Term walk(Term t, const Substitution& s) {
  while (t.is_var() && s.bound(t.index())) t = s.get(t.index());
  return t;
}

bool occurs_bound(std::uint32_t v, const Term& t, const Substitution& s) {
  const Term w = walk(t, s);
  if (w.is_var()) return w.index() == v;
  if (!w.is_op()) return false;
  return occurs_bound(v, w.left(), s) || occurs_bound(v, w.right(), s);
}

bool unify_into(const Term& a, const Term& b, Substitution& s) {
  const Term x = walk(a, s);
  const Term y = walk(b, s);
  if (x == y) return true;
  if (x.is_var()) {
    if (occurs_bound(x.index(), y, s)) return false;
    s.bind(x.index(), y);
    return true;
  }
  if (y.is_var()) {
    if (occurs_bound(y.index(), x, s)) return false;
    s.bind(y.index(), x);
    return true;
  }
  if (!x.is_op() || !y.is_op()) return false;
  return unify_into(x.left(), y.left(), s) && unify_into(x.right(), y.right(), s);
}

Term resolve(const Term& t, const Substitution& s) {
  const Term w = walk(t, s);
  if (!w.is_op() || w.ground()) return w;
  return Term::op(resolve(w.left(), s), resolve(w.right(), s));
}

struct Direction {
  const Term* from;
  const Term* to;
  bool reversed;
  bool ordered;  // must check that the instance decreases
};

int directions(const ProcessedEq& eq, Direction out[2]) {
  switch (eq.orientation) {
    case Orientation::LeftToRight:
      out[0] = {&eq.lhs, &eq.rhs, false, false};
      return 1;
    case Orientation::RightToLeft:
      out[0] = {&eq.rhs, &eq.lhs, true, false};
      return 1;
    case Orientation::Unorientable:
      break;
  }
  out[0] = {&eq.lhs, &eq.rhs, false, true};
  out[1] = {&eq.rhs, &eq.lhs, true, true};
  return 2;
}

// Binds variables of `to` left unbound by matching. Returns false when the
// step must not fire.
bool bind_extra(const Term& to, const Term& subject, Substitution& s) {
  if (to.ground()) return true;
  if (to.is_var()) {
    if (s.bound(to.index())) return true;
    if (!subject.ground()) return false;
    s.bind(to.index(), Term::constant(0));
    return true;
  }
  return bind_extra(to.left(), subject, s) && bind_extra(to.right(), subject, s);
}

std::optional<Term> try_direction(const Term& t, const Direction& d, Substitution& s) {
  if (d.from->size() > t.size()) return std::nullopt;
  if (d.from->is_op() && !t.is_op()) return std::nullopt;
  s.clear();
  if (!match(*d.from, t, s)) return std::nullopt;
  if (!bind_extra(*d.to, t, s)) return std::nullopt;
  Term replacement = apply(*d.to, s);
  if (d.ordered && !kbo_greater(t, replacement)) return std::nullopt;
  return replacement;
}

class Normalizer {
 public:
  Normalizer(std::span<const ProcessedEq> eqs, std::vector<RewriteStep>* trace,
             std::uint64_t cap)
      : eqs_(eqs), trace_(trace), cap_(cap) {}

  Term run(const Term& t) {
    Position pos;
    return norm(t, pos);
  }

 private:
  Term norm(const Term& t, Position& pos) {
    Term cur = t;
    while (true) {
      if (cur.is_op()) {
        pos.push_back(0);
        Term l = norm(cur.left(), pos);
        pos.back() = 1;
        Term r = norm(cur.right(), pos);
        pos.pop_back();
        if (!(l == cur.left()) || !(r == cur.right())) cur = Term::op(std::move(l), std::move(r));
      }
      auto next = rewrite_root(cur, pos);
      if (!next) return cur;
      cur = std::move(*next);
    }
  }

  std::optional<Term> rewrite_root(const Term& t, const Position& pos) {
    Substitution s;
    for (const auto& eq : eqs_) {
      Direction dirs[2];
      const int n = directions(eq, dirs);
      for (int k = 0; k < n; ++k) {
        auto r = try_direction(t, dirs[k], s);
        if (!r) continue;
        if (++count_ > cap_) {
          throw RewriteLimitExceeded("normalization exceeded " + std::to_string(cap_) +
                                     " rewrite steps");
        }
        if (trace_) trace_->push_back({eq.id, pos, s, dirs[k].reversed});
        return r;
      }
    }
    return std::nullopt;
  }

  std::span<const ProcessedEq> eqs_;
  std::vector<RewriteStep>* trace_;
  std::uint64_t cap_;
  std::uint64_t count_ = 0;
};

bool reducible_at_or_below(const Term& t, const ProcessedEq& eq, Substitution& s) {
  Direction dirs[2];
  const int n = directions(eq, dirs);
  for (int k = 0; k < n; ++k) {
    if (try_direction(t, dirs[k], s)) return true;
  }
  return t.is_op() &&
         (reducible_at_or_below(t.left(), eq, s) || reducible_at_or_below(t.right(), eq, s));
}

void collect_renaming(const Term& t, Substitution& ren, std::uint32_t& next) {
  if (t.ground()) return;
  if (t.is_var()) {
    if (!ren.bound(t.index())) ren.bind(t.index(), Term::var(next++));
    return;
  }
  collect_renaming(t.left(), ren, next);
  collect_renaming(t.right(), ren, next);
}

Substitution rename_subst(const Substitution& s, const Substitution& ren) {
  Substitution out;
  for (std::uint32_t v = 0; v < s.extent(); ++v) {
    if (s.bound(v)) out.bind(v, apply(s.get(v), ren));
  }
  return out;
}

}  // namespace

std::optional<Substitution> unify(const Term& s, const Term& t) {
  Substitution tri;
  if (!unify_into(s, t, tri)) return std::nullopt;
  Substitution out;
  for (std::uint32_t v = 0; v < tri.extent(); ++v) {
    if (tri.bound(v)) out.bind(v, resolve(tri.get(v), tri));
  }
  return out;
}

ProcessedEq ProcessedEq::make(std::uint32_t id, Term lhs, Term rhs) {
  Orientation o = Orientation::Unorientable;
  switch (kbo_compare(lhs, rhs)) {
    case Order::GT: o = Orientation::LeftToRight; break;
    case Order::LT: o = Orientation::RightToLeft; break;
    default: break;
  }
  return ProcessedEq{id, std::move(lhs), std::move(rhs), o};
}

Term normalize(const Term& t, std::span<const ProcessedEq> eqs, std::vector<RewriteStep>* trace,
               std::uint64_t step_cap) {
  return Normalizer(eqs, trace, step_cap).run(t);
}

bool reducible_by(const Term& t, const ProcessedEq& eq) {
  Substitution s;
  return reducible_at_or_below(t, eq, s);
}

Term apply_step(const Term& t, const RewriteStep& step, const Equation& eq) {
  const Term& from = step.reversed ? eq.rhs : eq.lhs;
  const Term& to = step.reversed ? eq.lhs : eq.rhs;
  if (!(subterm_at(t, step.position) == apply(from, step.subst))) {
    throw std::invalid_argument("rewrite step does not match its redex");
  }
  return replace_at(t, step.position, apply(to, step.subst));
}

std::vector<Overlap> overlaps(const ProcessedEq& inner, const ProcessedEq& outer) {
  std::vector<Overlap> out;
  const std::uint32_t offset = std::max(inner.lhs.var_bound(), inner.rhs.var_bound());
  const ProcessedEq shifted{outer.id, shift_vars(outer.lhs, offset),
                            shift_vars(outer.rhs, offset), outer.orientation};
  const std::uint32_t outer_bound = std::max(outer.lhs.var_bound(), outer.rhs.var_bound());
  const bool same = inner.id == outer.id;

  Direction in_dirs[2], out_dirs[2];
  const int n_in = directions(inner, in_dirs);
  const int n_out = directions(shifted, out_dirs);
  for (int a = 0; a < n_in; ++a) {
    const Term& l1 = *in_dirs[a].from;
    const Term& r1 = *in_dirs[a].to;
    for (int b = 0; b < n_out; ++b) {
      const Term& l2 = *out_dirs[b].from;
      const Term& r2 = *out_dirs[b].to;
      for (const auto& p : nonvar_positions(l2)) {
        if (same && a == b && p.empty()) continue;
        auto sigma = unify(l1, subterm_at(l2, p));
        if (!sigma) continue;
        const Term sl1 = apply(l1, *sigma);
        const Term sr1 = apply(r1, *sigma);
        if (in_dirs[a].ordered) {
          const Order o = kbo_compare(sr1, sl1);
          if (o == Order::GT || o == Order::EQ) continue;
        }
        const Term peak = apply(l2, *sigma);
        const Term sr2 = apply(r2, *sigma);
        if (out_dirs[b].ordered) {
          const Order o = kbo_compare(sr2, peak);
          if (o == Order::GT || o == Order::EQ) continue;
        }
        const Term s = replace_at(peak, p, sr1);
        if (s == sr2) continue;

        Substitution inner_subst, outer_subst;
        for (std::uint32_t v = 0; v < offset; ++v) inner_subst.bind(v, apply(Term::var(v), *sigma));
        for (std::uint32_t v = 0; v < outer_bound; ++v) {
          outer_subst.bind(v, apply(Term::var(v + offset), *sigma));
        }

        Substitution ren;
        std::uint32_t next = 0;
        collect_renaming(s, ren, next);
        collect_renaming(sr2, ren, next);
        for (std::uint32_t v = 0; v < inner_subst.extent(); ++v) {
          collect_renaming(inner_subst.get(v), ren, next);
        }
        for (std::uint32_t v = 0; v < outer_subst.extent(); ++v) {
          collect_renaming(outer_subst.get(v), ren, next);
        }

        Overlap ov;
        ov.pair = Equation{std::nullopt, apply(s, ren), apply(sr2, ren)};
        ov.first = {inner.id, p, rename_subst(inner_subst, ren), !in_dirs[a].reversed};
        ov.second = {outer.id, {}, rename_subst(outer_subst, ren), out_dirs[b].reversed};
        out.push_back(std::move(ov));
      }
    }
  }
  return out;
}

std::vector<Equation> critical_pairs(const ProcessedEq& e1, const ProcessedEq& e2) {
  std::vector<Equation> out;
  auto add = [&out](std::vector<Overlap> found) {
    for (auto& ov : found) {
      if (std::find(out.begin(), out.end(), ov.pair) == out.end()) out.push_back(std::move(ov.pair));
    }
  };
  add(overlaps(e1, e2));
  if (e1.id != e2.id || !(e1.lhs == e2.lhs && e1.rhs == e2.rhs)) add(overlaps(e2, e1));
  return out;
}

}  // namespace magma
