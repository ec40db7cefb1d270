#pragma once

// String brackets built from (•, E, M), their higher analogues m̄_k, and the
// coderivations m_k they induce on the free graded-commutative coalgebra of
// the string space.
//
// Sign convention: every Koszul sign on the coalgebra side uses the shifted
// parity of a string degree, (|a| + 1) mod 2. shifted_parity() is the single
// place where this is decided.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stringtop/bv.hpp"
#include "stringtop/goldman.hpp"
#include "stringtop/structure.hpp"

namespace stringtop {

int shifted_parity(int degree);

/// Letters of a wedge word as indices into a string basis.
using Word = std::vector<std::size_t>;

/// Shortlex order on words.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

using WedgeVec = std::map<Word, Rational, WordLess>;

void add_to(WedgeVec& y, const WedgeVec& x, const Rational& c = 1);
std::string to_string(const GradedBasis& basis, const Word& w);
std::string to_string(const GradedBasis& basis, const WedgeVec& v);

/// Sorts letters into canonical (non-decreasing) order with the Koszul sign
/// of the sort. Nullopt when a shifted-odd letter repeats.
std::optional<std::pair<int, Word>> normalize_word(const GradedBasis& basis, Word letters);

/// Canonical words of length 1..max_len.
std::vector<Word> canonical_words(const GradedBasis& basis, std::size_t max_len);

/// Shifted degree of a word: the sum of shifted letter degrees.
int shifted_degree(const GradedBasis& basis, const Word& w);

/// m̄_k given on canonical words of length k; graded symmetric in the shifted
/// grading by construction.
struct CoderivationRep {
  std::size_t arity = 2;
  GradedBasis basis;
  std::map<Word, Vec, WordLess> values;

  /// m̄_k on an arbitrary ordered tuple of k letters.
  Vec evaluate(const Word& tuple) const;
};

/// m_k(a_1∧…∧a_n) = Σ_{|S|=k} ε(S) m̄_k(a_S) ∧ a_{S^c}.
WedgeVec extend_coderivation(const CoderivationRep& m, const Word& canonical);
WedgeVec extend_coderivation(const CoderivationRep& m, const WedgeVec& v);

/// Unshuffle coproduct Σ_S ε(S) a_S ⊗ a_{S^c}, including empty parts.
using TensorVec = std::map<std::pair<Word, Word>, Rational>;
TensorVec coproduct(const GradedBasis& basis, const Word& canonical);

/// Coproduct compatibility of the extension on all words of length <= max_len.
std::optional<Violation> check_coderivation_law(const CoderivationRep& m, std::size_t max_len);

struct RelationResult {
  std::string name;
  std::size_t words_checked = 0;
  std::optional<Violation> violation;

  bool holds() const { return !violation; }
};

struct RelationReport {
  std::vector<RelationResult> relations;

  bool ok() const;
};

/// m_k∘m_k = 0, m_k∘m_r + m_r∘m_k = 0, the coderivation law for each rep,
/// and δ_Λ∘δ_Λ = 0 for each Λ (a set of arities present in `reps`), all on
/// words of length <= max_len.
RelationReport coderivation_relations(const std::vector<CoderivationRep>& reps, std::size_t max_len,
                                      const std::vector<std::vector<std::size_t>>& lambdas);

struct StringBracketTable {
  GradedBasis basis;
  BilinearTable bracket;
};

/// Antisymmetry [a,b] = −(−1)^{|a||b|}[b,a] and Jacobi
/// [a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]] on all basis tuples.
CheckReport check_string_bracket(const StringBracketTable& t);

struct StringBrackets {
  std::optional<Violation> precondition;  // set when nothing was computed
  StringBracketTable table;
  std::vector<CoderivationRep> mbar;  // arities 2..max_arity
  CheckReport report;

  bool ok() const { return !precondition && report.ok(); }
};

/// Checks degrees, M∘E = Δ and E∘M = 0, then builds
/// [a,b] = (−1)^{|a|} E(Ma • Mb) and m̄_k(a_1..a_k) = E(Ma_1 • … • Ma_k).
StringBrackets string_brackets(const StructureTable& s, std::size_t max_arity);

/// m̄_2(a,b) = (−1)^{|a|}[a,b].
CoderivationRep mbar2_from_bracket(const StringBracketTable& t);

struct JacobiEquivalence {
  CheckReport direct;  // antisymmetry and Jacobi
  RelationResult square;  // m_2∘m_2 = 0

  bool jacobi_holds() const { return direct.ok(); }
  bool square_zero() const { return square.holds(); }
  bool agree() const { return jacobi_holds() == square_zero(); }
};

JacobiEquivalence jacobi_coderivation_equiv(const StringBracketTable& t, std::size_t max_len);

/// String space ℋ := A / ker Δ with E the projection and M[a] = Δa.
/// The basis is indexed by loop elements whose Δ-images are independent
/// (named "str_<name>").
StructureTable with_kernel_quotient_string_space(const StructureTable& s);

enum class Truncation { Reject, Project };

/// Goldman bracket restricted to a finite class set (string degree −2).
/// Reject throws std::domain_error naming a class outside the set; Project
/// drops such terms and is not faithful to the full bracket.
StringBracketTable goldman_table(const FatGraph& g, const std::vector<CyclicWord>& classes, Truncation mode);

}  // namespace stringtop
