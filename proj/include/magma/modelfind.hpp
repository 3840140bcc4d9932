#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "magma/budget.hpp"
#include "magma/eqcore.hpp"

namespace magma {

using Element = std::uint32_t;
// Values for variables 0..k-1 of an equation.
using Assignment = std::vector<Element>;

/// Multiplication table over the domain {0..n-1}.
class MagmaTable {
 public:
  explicit MagmaTable(std::uint32_t n, Element fill = 0);
  // Throws std::invalid_argument unless entries has n*n values below n.
  MagmaTable(std::uint32_t n, std::vector<Element> entries);

  std::uint32_t size() const noexcept { return n_; }
  Element at(Element i, Element j) const { return entries_[i * n_ + j]; }
  void set(Element i, Element j, Element v);
  std::span<const Element> entries() const noexcept { return entries_; }

  Element evaluate(const Term& t, std::span<const Element> assignment) const;

  friend bool operator==(const MagmaTable&, const MagmaTable&) = default;

 private:
  std::uint32_t n_;
  std::vector<Element> entries_;
};

struct Verification {
  // Lexicographically first assignment under which the sides differ.
  std::optional<Assignment> violation;
  bool holds() const noexcept { return !violation; }
};

// Exhaustive check over all n^k assignments.
Verification verify_equation(const MagmaTable& model, const Equation& eq);

struct Countermodel {
  MagmaTable model;
  Assignment violating_assignment;
};

struct ModelFound {
  Countermodel countermodel;
};
struct ModelSpaceExhausted {
  std::uint32_t max_size;
};
struct ModelSearchOutOfBudget {
  std::uint64_t steps;
  double seconds;
};
using SearchOutcome = std::variant<ModelFound, ModelSpaceExhausted, ModelSearchOutOfBudget>;

/// Backtracking search for a magma satisfying `premise` and violating
/// `conclusion`, over domain sizes 2..max_size.
///
/// Cells are filled in row-major order. A cell (i,j) may take any value up to
/// one more than the largest element mentioned so far, counting both the
/// values already placed and the coordinates of every cell up to and including
/// (i,j) (least-number heuristic). Each premise instance is checked the moment
/// all cells it reads are assigned. One cell assignment is one budget step.
SearchOutcome find_countermodel(const Equation& premise, const Equation& conclusion,
                                std::uint32_t max_size, Budget budget);

// Independent re-check: premise holds everywhere and the stored assignment
// violates the conclusion.
bool check_countermodel(const Countermodel& cm, const Equation& premise,
                        const Equation& conclusion);

class EnumerationTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 20'000'000;

// Number of tables of size n satisfying eq, by plain enumeration.
std::uint64_t count_models(const Equation& eq, std::uint32_t n,
                           std::uint64_t cap = kDefaultEnumerationCap);

// Text form: size, n rows of n space-separated entries, then `var=elem` pairs.
std::string serialize_countermodel(const Countermodel& cm);
// Throws std::invalid_argument on malformed input.
Countermodel parse_countermodel(std::string_view text);

}  // namespace magma
