#pragma once

// Free graded-commutative algebras over Q with Koszul signs.
//
// Generators are kept in a fixed total order: degree, then barred before
// unbarred, then name. Monomials are sorted flat factor lists over that order,
// so odd generators appear at most once and even ones may repeat.

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stringtop/rational.hpp"

namespace stringtop {

using GeneratorIndex = std::uint32_t;

/// Suffix marking the generator z̄ attached to z in loop models.
inline constexpr std::string_view kBarSuffix = "bar";

struct GeneratorSpec {
  std::string name;
  int degree = 1;

  bool operator==(const GeneratorSpec&) const = default;
};

/// True when `name` is `<stem>bar` with a non-empty stem.
bool is_barred_name(std::string_view name);

/// Generator total order used for canonical forms.
bool generator_less(const GeneratorSpec& a, const GeneratorSpec& b);

class Algebra {
 public:
  /// Sorts the generators into canonical order. Throws InputError on an
  /// empty or duplicate name or a degree below 1.
  explicit Algebra(std::vector<GeneratorSpec> generators);

  static std::shared_ptr<const Algebra> make(std::vector<GeneratorSpec> generators);

  std::size_t size() const { return generators_.size(); }
  std::span<const GeneratorSpec> generators() const { return generators_; }
  const GeneratorSpec& generator(GeneratorIndex g) const { return generators_.at(g); }
  int degree(GeneratorIndex g) const { return generators_[g].degree; }
  bool is_odd(GeneratorIndex g) const { return generators_[g].degree % 2 != 0; }

  std::optional<GeneratorIndex> find(std::string_view name) const;
  /// Throws InputError for unknown names.
  GeneratorIndex index_of(std::string_view name) const;

  bool operator==(const Algebra& other) const { return generators_ == other.generators_; }

 private:
  std::vector<GeneratorSpec> generators_;
  std::unordered_map<std::string, GeneratorIndex> by_name_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

class Monomial {
 public:
  Monomial() = default;

  /// `factors` must already be sorted; `degree` is their total degree.
  Monomial(std::vector<GeneratorIndex> factors, int degree)
      : factors_(std::move(factors)), degree_(degree) {}

  /// Sorts the factors. Returns nullopt when an odd generator repeats.
  /// The Koszul sign of the sort is discarded; use multiply() for signs.
  static std::optional<Monomial> from_factors(const Algebra& algebra,
                                              std::vector<GeneratorIndex> factors);

  std::span<const GeneratorIndex> factors() const { return factors_; }
  int degree() const { return degree_; }
  bool is_unit() const { return factors_.empty(); }

  /// (generator, exponent) runs in canonical order.
  std::vector<std::pair<GeneratorIndex, int>> powers() const;

  /// Graded order: degree, number of factors, then lexicographic factors.
  std::strong_ordering operator<=>(const Monomial& other) const;
  bool operator==(const Monomial& other) const = default;

 private:
  std::vector<GeneratorIndex> factors_;
  int degree_ = 0;
};

/// Product of monomials with its Koszul sign, or nullopt if an odd generator
/// would repeat.
std::optional<std::pair<int, Monomial>> multiply(const Algebra& algebra, const Monomial& a,
                                                 const Monomial& b);

class GradedElement {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit GradedElement(AlgebraPtr algebra);

  static GradedElement constant(AlgebraPtr algebra, const Rational& c);
  static GradedElement generator(AlgebraPtr algebra, std::string_view name);
  static GradedElement monomial(AlgebraPtr algebra, Monomial m, const Rational& c = 1);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  /// The zero element is homogeneous of every degree.
  bool is_homogeneous() const;
  bool has_degree(int degree) const;
  /// Unique degree of a nonzero homogeneous element.
  std::optional<int> degree() const;

  void add_term(const Monomial& m, const Rational& c);

  GradedElement& operator+=(const GradedElement& other);
  GradedElement& operator-=(const GradedElement& other);
  GradedElement& operator*=(const Rational& c);

  friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
  friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
  friend GradedElement operator-(GradedElement a) { return a *= Rational(-1); }
  friend GradedElement operator*(const Rational& c, GradedElement a) { return a *= c; }

  /// Equal algebras and identical canonical terms.
  bool operator==(const GradedElement& other) const;

 private:
  void require_same_algebra(const GradedElement& other) const;

  AlgebraPtr algebra_;
  Terms terms_;
};

/// Graded-commutative product. Throws std::invalid_argument when the operands
/// live in different algebras.
GradedElement multiply(const GradedElement& a, const GradedElement& b);
GradedElement operator*(const GradedElement& a, const GradedElement& b);

/// A derivation of fixed degree given by its values on generators.
class DerivationTable {
 public:
  DerivationTable(AlgebraPtr algebra, int degree);

  const AlgebraPtr& algebra() const { return algebra_; }
  int degree() const { return degree_; }

  /// Values are stored as given; degree consistency is checked by validators.
  void set(GeneratorIndex g, GradedElement value);
  void set(std::string_view name, GradedElement value);
  const GradedElement& value(GeneratorIndex g) const { return values_.at(g); }
  const GradedElement& value(std::string_view name) const;

  bool is_zero() const;

  GradedElement apply(const Monomial& m) const;
  GradedElement apply(const GradedElement& a) const;

  bool operator==(const DerivationTable& other) const;

 private:
  AlgebraPtr algebra_;
  int degree_;
  std::vector<GradedElement> values_;
};

/// D(m·m') = D(m)·m' + (−1)^{|D||m|} m·D(m').
GradedElement apply_derivation(const DerivationTable& d, const GradedElement& a);

/// Graded commutator D1∘D2 − (−1)^{|D1||D2|} D2∘D1, returned as a derivation
/// of degree |D1| + |D2| through its values on generators. For two odd
/// derivations this is the anticommutator.
DerivationTable derivation_anticommutator(const DerivationTable& d1, const DerivationTable& d2);

/// All monomials of total degree `n` in graded-lex order; empty for n < 0.
std::vector<Monomial> enumerate_basis(const Algebra& algebra, int n);

/// Degree-preserving algebra homomorphism given by generator images.
class AlgebraMap {
 public:
  AlgebraMap(AlgebraPtr source, AlgebraPtr target);

  /// Sends each source generator to the target generator of the same name,
  /// or to zero when the target has no such generator.
  static AlgebraMap by_name(AlgebraPtr source, AlgebraPtr target);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }

  void set(GeneratorIndex g, GradedElement image);
  const GradedElement& image(GeneratorIndex g) const { return images_.at(g); }

  GradedElement apply(const Monomial& m) const;
  GradedElement apply(const GradedElement& a) const;

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<GradedElement> images_;
};

/// Element syntax: signed sum of terms `c * g1^e1*g2^e2`, `c` an integer or
/// `p/q`, `^1` and `*` optional, `1` for the unit. Whitespace-insensitive.
GradedElement parse_element(const AlgebraPtr& algebra, std::string_view text);
std::string to_string(const GradedElement& a);
std::string to_string(const Algebra& algebra, const Monomial& m);

}  // namespace stringtop
