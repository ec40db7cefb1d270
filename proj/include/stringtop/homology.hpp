#pragma once

// Cohomology of free graded-commutative cochain algebras, degree by degree.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "stringtop/gca.hpp"
#include "stringtop/linalg.hpp"

namespace stringtop {

/// Matrix of a linear map between graded pieces, labelled by monomials.
struct RationalMatrixSlice {
  std::vector<Monomial> row_basis;  // target
  std::vector<Monomial> col_basis;  // source
  SparseMatrix entries{0, 0};
};

std::size_t matrix_rank(const RationalMatrixSlice& m);

struct BettiTable {
  int cutoff = 0;
  std::vector<std::size_t> values;  // values[i] = dim H^i, 0 <= i <= cutoff
};

/// d² ≠ 0 was detected on a generator.
class SquareZeroError : public std::runtime_error {
 public:
  SquareZeroError(std::string generator, const std::string& detail)
      : std::runtime_error("d^2 != 0 at " + generator + ": " + detail), generator_(std::move(generator)) {}
  const std::string& generator() const { return generator_; }

 private:
  std::string generator_;
};

/// A map is not compatible with the differentials.
class ChainMapError : public std::runtime_error {
 public:
  ChainMapError(std::string witness, const std::string& detail)
      : std::runtime_error("not a chain map at " + witness + ": " + detail), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// Cochains, cocycle representatives and class coordinates through a cutoff.
///
/// Bases and differentials are assembled through degree cutoff + 1; classes
/// are reported for 0 <= n <= cutoff. Representatives are the first kernel
/// vectors (in monomial order) that are independent modulo the image.
class Cohomology {
 public:
  /// Throws SquareZeroError when d² ≠ 0 on a generator of degree <= cutoff + 1,
  /// std::invalid_argument when d does not have degree +1.
  Cohomology(DerivationTable differential, int cutoff);

  int cutoff() const { return cutoff_; }
  const AlgebraPtr& algebra() const { return differential_.algebra(); }
  const DerivationTable& differential() const { return differential_; }

  /// Degree-n monomials, 0 <= n <= cutoff + 1; empty outside.
  const std::vector<Monomial>& basis(int n) const;
  /// d restricted to C^n → C^{n+1}, 0 <= n <= cutoff.
  RationalMatrixSlice differential_matrix(int n) const;
  std::size_t differential_rank(int n) const;

  std::size_t betti(int n) const;
  BettiTable betti_table() const;
  const std::vector<GradedElement>& representatives(int n) const;

  DenseVector coordinates(const GradedElement& a, int n) const;
  GradedElement element(const DenseVector& v, int n) const;

  bool is_cocycle(const GradedElement& a) const { return differential_.apply(a).is_zero(); }

  /// Coordinates of cocycles in the class basis of degree n (betti(n) rows,
  /// one column per input). Throws std::invalid_argument for non-cocycles.
  DenseMatrix class_coordinates(const std::vector<GradedElement>& cocycles, int n) const;

 private:
  struct Degree {
    std::vector<Monomial> basis;
    std::map<Monomial, std::size_t> index;
    SparseMatrix d{0, 0};  // C^n → C^{n+1}
    std::size_t d_rank = 0;
    std::vector<GradedElement> representatives;
    DenseMatrix class_frame;  // columns: representatives then image basis
    std::size_t frame_cols = 0;
  };
  const Degree* slot(int n) const;

  DerivationTable differential_;
  int cutoff_;
  std::vector<Degree> degrees_;  // index n for 0 <= n <= cutoff + 1
};

BettiTable betti_table(const DerivationTable& differential, int cutoff);

/// A linear map between cochain algebras that should commute with the
/// differentials up to the sign (−1)^{degree}.
class CochainMap {
 public:
  static CochainMap derivation(DerivationTable d);
  static CochainMap algebra_map(AlgebraMap f);
  /// Left multiplication by a homogeneous element.
  static CochainMap multiplication(GradedElement factor);
  static CochainMap compose(const CochainMap& outer, const CochainMap& inner);

  int degree() const { return degree_; }
  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }

  GradedElement operator()(const GradedElement& a) const;

  /// Name of the first generator (or "multiplier", or a monomial for
  /// composites) where d_T∘f ≠ (−1)^{|f|} f∘d_S, checking generators and
  /// monomials of degree <= max_degree.
  std::optional<std::string> chain_violation(const DerivationTable& d_source,
                                             const DerivationTable& d_target, int max_degree) const;

 private:
  struct Composite;
  using Impl = std::variant<DerivationTable, AlgebraMap, GradedElement, std::shared_ptr<const Composite>>;

  CochainMap(Impl impl, int degree, AlgebraPtr source, AlgebraPtr target);

  Impl impl_;
  int degree_;
  AlgebraPtr source_, target_;
};

struct CohomologyMapReport {
  int degree = 0;  // source degree
  std::size_t source_betti = 0;
  std::size_t target_betti = 0;
  std::size_t rank = 0;
  DenseMatrix matrix;  // target_betti × source_betti
  std::vector<GradedElement> representatives;
};

/// Matrix on cohomology of any cocycle-level rule `f` sending degree-i cocycles
/// of `source` to degree-(i + shift) cocycles of `target`.
CohomologyMapReport cohomology_matrix(const std::function<GradedElement(const GradedElement&)>& f,
                                      int shift, const Cohomology& source,
                                      const Cohomology& target, int i);

/// Map induced on H^i. Throws ChainMapError if `f` is not a chain map.
CohomologyMapReport induced_map(const CochainMap& f, const Cohomology& source,
                                const Cohomology& target, int i);

}  // namespace stringtop
