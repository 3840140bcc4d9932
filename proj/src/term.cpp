#include "magma/term.hpp"

#include <algorithm>
#include <stdexcept>

namespace magma {

namespace {

constexpr std::size_t kVarSeed = 0x9e3779b97f4a7c15ULL;
constexpr std::size_t kConstSeed = 0xc2b2ae3d27d4eb4fULL;

std::size_t mix(std::size_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  return h;
}

}  // namespace

Term Term::var(std::uint32_t index) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Var, index, 1, index + 1, mix(kVarSeed + index), {}, {}}));
}

Term Term::constant(std::uint32_t index) {
  return Term(std::make_shared<const Node>(
      Node{Kind::Const, index, 1, 0, mix(kConstSeed + index), {}, {}}));
}

Term Term::op(Term left, Term right) {
  const std::uint32_t size = 1 + left.size() + right.size();
  const std::uint32_t bound = std::max(left.var_bound(), right.var_bound());
  const std::size_t h = mix(left.hash() * 31 + mix(right.hash() + 0x51ed2701));
  return Term(std::make_shared<const Node>(
      Node{Kind::Op, 0, size, bound, h, std::move(left), std::move(right)}));
}

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind()) {
    return false;
  }
  if (a.kind() != Term::Kind::Op) return a.index() == b.index();
  return a.left() == b.left() && a.right() == b.right();
}

std::string format_position(const Position& pos) {
  if (pos.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i) out += '.';
    out += pos[i] == 0 ? '1' : '2';
  }
  return out;
}

Position parse_position(const std::string& text) {
  Position pos;
  if (text == "root") return pos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool want_digit = i % 2 == 0;
    const char c = text[i];
    if (want_digit && (c == '1' || c == '2')) {
      pos.push_back(c == '1' ? 0 : 1);
    } else if (!want_digit && c == '.') {
      continue;
    } else {
      throw std::invalid_argument("malformed position '" + text + "'");
    }
  }
  if (text.empty() || text.back() == '.') {
    throw std::invalid_argument("malformed position '" + text + "'");
  }
  return pos;
}

const Term& subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (auto step : pos) {
    if (!cur->is_op()) throw std::out_of_range("position outside term");
    cur = step == 0 ? &cur->left() : &cur->right();
  }
  return *cur;
}

namespace {

Term replace_from(const Term& t, const Position& pos, std::size_t depth,
                  const Term& replacement) {
  if (depth == pos.size()) return replacement;
  if (!t.is_op()) throw std::out_of_range("position outside term");
  if (pos[depth] == 0) {
    return Term::op(replace_from(t.left(), pos, depth + 1, replacement), t.right());
  }
  return Term::op(t.left(), replace_from(t.right(), pos, depth + 1, replacement));
}

void collect_positions(const Term& t, Position& cur, std::vector<Position>& out) {
  if (t.is_var()) return;
  out.push_back(cur);
  if (!t.is_op()) return;
  cur.push_back(0);
  collect_positions(t.left(), cur, out);
  cur.back() = 1;
  collect_positions(t.right(), cur, out);
  cur.pop_back();
}

}  // namespace

Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  return replace_from(t, pos, 0, replacement);
}

std::vector<Position> nonvar_positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  collect_positions(t, cur, out);
  return out;
}

void Substitution::bind(std::uint32_t v, Term t) {
  if (v >= bindings_.size()) bindings_.resize(v + 1);
  bindings_[v] = std::move(t);
}

bool Substitution::empty() const noexcept {
  return std::all_of(bindings_.begin(), bindings_.end(),
                     [](const Term& t) { return t.empty(); });
}

bool operator==(const Substitution& a, const Substitution& b) {
  const std::uint32_t n = std::max(a.extent(), b.extent());
  for (std::uint32_t v = 0; v < n; ++v) {
    const bool ba = a.bound(v);
    if (ba != b.bound(v)) return false;
    if (ba && !(a.get(v) == b.get(v))) return false;
  }
  return true;
}

Term apply(const Term& t, const Substitution& s) {
  switch (t.kind()) {
    case Term::Kind::Var:
      return s.bound(t.index()) ? s.get(t.index()) : t;
    case Term::Kind::Const:
      return t;
    case Term::Kind::Op:
      break;
  }
  if (t.ground()) return t;
  Term l = apply(t.left(), s);
  Term r = apply(t.right(), s);
  if (l == t.left() && r == t.right()) return t;
  return Term::op(std::move(l), std::move(r));
}

bool match(const Term& pattern, const Term& subject, Substitution& s) {
  switch (pattern.kind()) {
    case Term::Kind::Var:
      if (s.bound(pattern.index())) return s.get(pattern.index()) == subject;
      s.bind(pattern.index(), subject);
      return true;
    case Term::Kind::Const:
      return subject.is_const() && subject.index() == pattern.index();
    case Term::Kind::Op:
      break;
  }
  if (!subject.is_op() || subject.size() < pattern.size()) return false;
  return match(pattern.left(), subject.left(), s) &&
         match(pattern.right(), subject.right(), s);
}

Term shift_vars(const Term& t, std::uint32_t offset) {
  if (offset == 0 || t.ground()) return t;
  if (t.is_var()) return Term::var(t.index() + offset);
  return Term::op(shift_vars(t.left(), offset), shift_vars(t.right(), offset));
}

bool occurs(std::uint32_t var, const Term& t) {
  if (var >= t.var_bound()) return false;
  if (t.is_var()) return t.index() == var;
  return t.is_op() && (occurs(var, t.left()) || occurs(var, t.right()));
}

void count_vars(const Term& t, std::vector<std::uint32_t>& counts) {
  if (t.ground()) return;
  if (t.is_var()) {
    if (counts.size() <= t.index()) counts.resize(t.index() + 1, 0);
    ++counts[t.index()];
    return;
  }
  count_vars(t.left(), counts);
  count_vars(t.right(), counts);
}

}  // namespace magma
