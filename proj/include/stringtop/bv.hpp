#pragma once

// Exhaustive identity checks for Gerstenhaber and BV structure tables.

#include <optional>
#include <string>
#include <vector>

#include "stringtop/structure.hpp"

namespace stringtop {

struct Violation {
  std::string identity;
  std::vector<std::string> witnesses;
  std::string lhs;
  std::string rhs;
};

std::string to_string(const Violation& v);

struct CheckReport {
  std::vector<std::string> checked;  // identities that held, in order
  std::optional<Violation> violation;

  bool ok() const { return !violation; }
};

/// Graded commutativity and associativity of the product, then antisymmetry,
/// Jacobi and Leibniz for the bracket, over all basis tuples.
CheckReport check_gerstenhaber(const StructureTable& s);

struct BvReport : CheckReport {
  // Verdicts of the two equivalent definitions (null when not reached).
  std::optional<bool> derivation_form;
  std::optional<bool> seven_term_form;

  bool formulations_agree() const { return derivation_form == seven_term_form; }
};

/// Product axioms, Δ² = 0, then the deviation of Δ from a derivation as a
/// derivation in each slot, and the seven-term identity for Δ.
BvReport check_bv(const StructureTable& s);

/// {a,b} = (−1)^{|a|}Δ(ab) − (−1)^{|a|}Δ(a)b − aΔ(b) on basis pairs.
BilinearTable derived_bracket(const StructureTable& s);

/// Copy of `s` whose bracket is the derived bracket.
StructureTable with_derived_bracket(const StructureTable& s);

}  // namespace stringtop
