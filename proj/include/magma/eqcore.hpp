#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "magma/term.hpp"

namespace magma {

using EquationId = std::uint32_t;

/// A universally quantified law `lhs = rhs`.
///
/// Equality compares the two sides only; the corpus id is metadata.
struct Equation {
  std::optional<EquationId> id;
  Term lhs;
  Term rhs;

  std::uint32_t var_count() const noexcept {
    return std::max(lhs.var_bound(), rhs.var_bound());
  }

  friend bool operator==(const Equation& a, const Equation& b) noexcept {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t column, const std::string& message);
  // Zero-based byte offset into the parsed text.
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t column_;
  std::string message_;
};

// Renumbers variables by first occurrence: lhs preorder, then rhs preorder.
Equation canonicalize(const Equation& eq);
// Same renumbering for a single term.
Term canonicalize(const Term& t);

/// Surface syntaxes.
///
/// Law: any lowercase identifier is a variable; the result is canonicalized.
/// Trace: the fixed alphabets below, indexes kept as written: variables
/// x,y,z,w,u,v,v6,v7,... and skolem constants a,b,c,d,e,f,a6,a7,...
///
/// Both accept `*` (or U+25C7) for the operation and redundant parentheses;
/// an unparenthesized chain `x*y*z` is rejected.
enum class Syntax { Law, Trace };

Equation parse_equation(std::string_view text, Syntax syntax = Syntax::Law);
Term parse_term(std::string_view text, Syntax syntax = Syntax::Trace);

std::string var_name(std::uint32_t index);
std::string const_name(std::uint32_t index);

std::string print_term(const Term& t);
std::string print_equation(const Equation& eq);

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& message);
  // One-based line number in the file, or 0 for I/O failures.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Ordered list of equations with dense ids 1..m.
class Corpus {
 public:
  Corpus() = default;
  explicit Corpus(std::vector<Equation> equations);

  std::size_t count() const noexcept { return equations_.size(); }
  const Equation& at(EquationId id) const;
  const std::vector<Equation>& equations() const noexcept { return equations_; }

 private:
  std::vector<Equation> equations_;
};

Corpus load_corpus(const std::filesystem::path& path);
// Parses `.eqs` text: one equation per line, `#` comments and blank lines skipped.
Corpus parse_corpus(std::string_view text);

using EquationPair = std::pair<EquationId, EquationId>;

/// All ordered pairs (i, j), i != j, in lexicographic order, generated lazily.
class PairRange {
 public:
  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = EquationPair;
    using difference_type = std::ptrdiff_t;
    using pointer = const EquationPair*;
    using reference = EquationPair;

    iterator() = default;
    iterator(const PairRange* range, std::uint64_t index) : range_(range), index_(index) {}
    EquationPair operator*() const { return range_->at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      iterator tmp = *this;
      ++index_;
      return tmp;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.index_ == b.index_;
    }

   private:
    const PairRange* range_ = nullptr;
    std::uint64_t index_ = 0;
  };

  explicit PairRange(std::uint64_t m) : m_(m) {}

  std::uint64_t size() const noexcept { return m_ < 2 ? 0 : m_ * m_ - m_; }
  EquationPair at(std::uint64_t index) const;
  std::uint64_t index_of(EquationPair pair) const;

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

 private:
  std::uint64_t m_;
};

inline PairRange enumerate_pairs(const Corpus& corpus) { return PairRange(corpus.count()); }

}  // namespace magma
