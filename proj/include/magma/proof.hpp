#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "magma/eqcore.hpp"
#include "magma/tptp.hpp"

namespace magma {

inline constexpr std::uint32_t kAxiomId = 1;

/// `before` with the subterm at `position` replaced, per one side of
/// equation `eq_id` instantiated by `subst`, gives `after`.
struct ProofStep {
  Term before;
  Position position;
  std::uint32_t eq_id = 0;
  Substitution subst;
  Term after;
};

/// A derived equation, justified by a chain of steps from its lhs to its rhs
/// that only uses the axiom and lemmas with smaller ids.
struct ProofLemma {
  std::uint32_t id = 0;
  Equation equation;
  std::vector<ProofStep> steps;
};

/// Equational proof that the goal's two sides are equal: a chain of steps
/// from goal.left to goal.right.
struct Proof {
  Equation axiom;
  std::vector<ProofLemma> lemmas;
  GroundDiseq goal;
  std::vector<ProofStep> goal_steps;

  std::size_t step_count() const;
};

struct ReplayResult {
  bool accepted = false;
  // One-based over lemma steps then goal steps; 0 when the failure is not
  // tied to a step (header mismatch, chain end mismatch after zero steps).
  std::size_t failed_step = 0;
  std::string reason;
};

/// Re-checks every step by matching and substitution only.
ReplayResult replay_proof(const Proof& proof, const Equation& axiom, const GroundDiseq& goal);

/// Line-oriented trace:
///   axiom 1: <equation>
///   lemma <id>: <equation>
///   step <k>: rewrite at <position> with eq <id> under {<var>=<term>,...}: <before> ==> <after>
///   goal: <left> != <right>
///   step ...
std::string serialize_proof(const Proof& proof);
// Throws ParseError-derived or std::invalid_argument on malformed text.
Proof parse_proof(std::string_view text);

}  // namespace magma
