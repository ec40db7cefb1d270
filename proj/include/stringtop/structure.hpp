#pragma once

// Finite structure tables: a graded loop space with product, bracket and Δ,
// and a graded string space linked to it by E and M. Degrees follow the
// loop-homology convention |a| = (geometric degree) − d, so the product has
// degree 0, the bracket and Δ degree +1, E degree 0 and M degree +1.

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stringtop/rational.hpp"

namespace stringtop {

/// Sparse vector over a basis; no zero coefficients.
using Vec = std::map<std::size_t, Rational>;

void add_to(Vec& y, const Vec& x, const Rational& c = 1);
Vec scaled(const Vec& x, const Rational& c);
Vec unit_vec(std::size_t i);

class GradedBasis {
 public:
  /// Throws InputError on duplicate names.
  std::size_t add(std::string name, int degree);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  std::optional<std::size_t> find(const std::string& name) const;

  /// True when every term has degree `degree` (the zero vector always does).
  bool has_degree(const Vec& v, int degree) const;

 private:
  std::vector<std::string> names_;
  std::vector<int> degrees_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// "0", or terms like "2*a - 1/2*b" in basis order.
std::string to_string(const GradedBasis& basis, const Vec& v);

using BilinearTable = std::map<std::pair<std::size_t, std::size_t>, Vec>;
using LinearTable = std::map<std::size_t, Vec>;

Vec apply_bilinear(const BilinearTable& t, const Vec& a, const Vec& b);
Vec apply_linear(const LinearTable& t, const Vec& a);

struct StructureTable {
  std::optional<int> dimension;
  GradedBasis loop;
  GradedBasis string;
  BilinearTable product;  // loop ⊗ loop → loop
  BilinearTable bracket;  // loop ⊗ loop → loop
  LinearTable delta;      // loop → loop
  LinearTable E;          // loop → string
  LinearTable M;          // string → loop

  Vec mul(const Vec& a, const Vec& b) const { return apply_bilinear(product, a, b); }
  Vec br(const Vec& a, const Vec& b) const { return apply_bilinear(bracket, a, b); }
  Vec d(const Vec& a) const { return apply_linear(delta, a); }
  Vec e(const Vec& a) const { return apply_linear(E, a); }
  Vec m(const Vec& a) const { return apply_linear(M, a); }
};

/// Entries whose degree disagrees with the declared degrees, as
/// "<operation> <args>" labels.
std::vector<std::string> degree_violations(const StructureTable& s);

}  // namespace stringtop
