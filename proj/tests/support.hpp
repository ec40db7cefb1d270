#pragma once

#include <random>
#include <string>
#include <vector>

#include "stringtop/gca.hpp"

namespace testsupport {

using namespace stringtop;

/// p/q in canonical form (GMP arithmetic assumes canonical operands).
inline Rational q(long p, long d) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

/// S² loop model written out by hand: x (2), y (3), xbar (1), ybar (2).
struct S2Loop {
  AlgebraPtr alg = Algebra::make({{"x", 2}, {"y", 3}, {"xbar", 1}, {"ybar", 2}});
  DerivationTable d{alg, 1};
  DerivationTable delta{alg, -1};

  S2Loop() {
    d.set("y", parse_element(alg, "x^2"));
    d.set("ybar", parse_element(alg, "-2*x*xbar"));
    delta.set("x", parse_element(alg, "xbar"));
    delta.set("y", parse_element(alg, "ybar"));
  }
  GradedElement operator()(const std::string& s) const { return parse_element(alg, s); }
};

/// Small random algebra with generators g0.. of degrees in [1, max_degree].
inline AlgebraPtr random_algebra(std::mt19937_64& rng, int generators, int max_degree) {
  std::uniform_int_distribution<int> deg(1, max_degree);
  std::vector<GeneratorSpec> specs;
  for (int i = 0; i < generators; ++i) specs.push_back({"g" + std::to_string(i), deg(rng)});
  return Algebra::make(std::move(specs));
}

/// Random homogeneous element of degree n (possibly zero when the piece is empty).
inline GradedElement random_element(std::mt19937_64& rng, const AlgebraPtr& alg, int n, int terms = 3) {
  GradedElement out(alg);
  const auto basis = enumerate_basis(*alg, n);
  if (basis.empty()) return out;
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  for (int t = 0; t < terms; ++t) out.add_term(basis[pick(rng)], q(coef(rng), den(rng)));
  return out;
}

/// Random derivation of the given degree.
inline DerivationTable random_derivation(std::mt19937_64& rng, const AlgebraPtr& alg, int degree) {
  DerivationTable d(alg, degree);
  for (GeneratorIndex g = 0; g < alg->size(); ++g) d.set(g, random_element(rng, alg, alg->degree(g) + degree, 2));
  return d;
}

}  // namespace testsupport
