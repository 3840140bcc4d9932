#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace magma {

/// Immutable binary term over the single operation symbol.
///
/// A term is a variable, a (skolem) constant, or an application of the
/// operation to two subterms. Nodes are shared, so copies are cheap and
/// structural equality short-circuits on identity.
class Term {
 public:
  enum class Kind : std::uint8_t { Var, Const, Op };

  Term() = default;

  static Term var(std::uint32_t index);
  static Term constant(std::uint32_t index);
  static Term op(Term left, Term right);

  bool empty() const noexcept { return !node_; }

  Kind kind() const noexcept;
  bool is_var() const noexcept { return kind() == Kind::Var; }
  bool is_const() const noexcept { return kind() == Kind::Const; }
  bool is_op() const noexcept { return kind() == Kind::Op; }

  // Variable or constant index; zero for Op.
  std::uint32_t index() const noexcept;
  const Term& left() const noexcept;
  const Term& right() const noexcept;

  // Number of symbol occurrences (variables included).
  std::uint32_t size() const noexcept;
  // One past the largest variable index, zero for ground terms.
  std::uint32_t var_bound() const noexcept;
  bool ground() const noexcept { return var_bound() == 0; }
  std::size_t hash() const noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  Kind kind;
  std::uint32_t index;
  std::uint32_t size;
  std::uint32_t var_bound;
  std::size_t hash;
  Term left;
  Term right;
};

inline Term::Kind Term::kind() const noexcept { return node_->kind; }
inline std::uint32_t Term::index() const noexcept { return node_->index; }
inline const Term& Term::left() const noexcept { return node_->left; }
inline const Term& Term::right() const noexcept { return node_->right; }
inline std::uint32_t Term::size() const noexcept { return node_->size; }
inline std::uint32_t Term::var_bound() const noexcept { return node_->var_bound; }
inline std::size_t Term::hash() const noexcept { return node_->hash; }

/// Path from the root: 0 descends left, 1 descends right.
using Position = std::vector<std::uint8_t>;

std::string format_position(const Position& pos);
// Inverse of format_position; throws std::invalid_argument.
Position parse_position(const std::string& text);

const Term& subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& replacement);

// Preorder list of positions of non-variable subterms.
std::vector<Position> nonvar_positions(const Term& t);

/// Finite map from variable indexes to terms; unbound variables map to
/// themselves when applied.
class Substitution {
 public:
  bool bound(std::uint32_t v) const noexcept {
    return v < bindings_.size() && !bindings_[v].empty();
  }
  const Term& get(std::uint32_t v) const { return bindings_.at(v); }
  void bind(std::uint32_t v, Term t);
  void clear() noexcept { bindings_.clear(); }
  // One past the largest possibly-bound variable.
  std::uint32_t extent() const noexcept {
    return static_cast<std::uint32_t>(bindings_.size());
  }
  bool empty() const noexcept;

  friend bool operator==(const Substitution& a, const Substitution& b);

 private:
  std::vector<Term> bindings_;
};

Term apply(const Term& t, const Substitution& s);

// One-sided matching: extends `s` so that apply(pattern, s) == subject.
// On failure `s` may hold partial bindings.
bool match(const Term& pattern, const Term& subject, Substitution& s);

Term shift_vars(const Term& t, std::uint32_t offset);
bool occurs(std::uint32_t var, const Term& t);
// Adds 1 to counts[v] for every occurrence of variable v; grows counts.
void count_vars(const Term& t, std::vector<std::uint32_t>& counts);

}  // namespace magma

template <>
struct std::hash<magma::Term> {
  std::size_t operator()(const magma::Term& t) const noexcept { return t.hash(); }
};
