#pragma once

// Sullivan-style models for free loop spaces, based loops and the
// circle-equivariant (string) version, plus the long exact sequence relating
// the last two.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stringtop/gca.hpp"
#include "stringtop/homology.hpp"

namespace stringtop {

enum class ViolationKind { SquareNonZero, DeltaSquareNonZero, DegreeMismatch, AnticommutatorNonZero };

std::string to_string(ViolationKind kind);

struct ModelViolation {
  ViolationKind kind;
  std::string generator;
  int degree = 0;  // degree of the offending generator
  std::string detail;
};

struct ValidationReport {
  std::vector<ModelViolation> violations;

  bool ok() const { return violations.empty(); }
  const ModelViolation* first() const { return violations.empty() ? nullptr : &violations.front(); }
};

/// Checks on generators of degree <= cutoff, reported in this order:
/// d² = 0, Δ² = 0, degrees of all derivation values, dΔ + Δd = 0.
ValidationReport validate_model(const DerivationTable& d, const DerivationTable* delta, int cutoff);

class ModelError : public std::runtime_error {
 public:
  explicit ModelError(ModelViolation v);
  const ModelViolation& violation() const { return violation_; }

 private:
  ModelViolation violation_;
};

/// Simply connected minimal model: generators of degree >= 2, d² = 0.
class MinimalModel {
 public:
  /// Throws InputError for generators of degree < 2, ModelError when d fails
  /// validation.
  explicit MinimalModel(DerivationTable d);

  const AlgebraPtr& algebra() const { return d_.algebra(); }
  const DerivationTable& differential() const { return d_; }

 private:
  DerivationTable d_;
};

struct LoopModel {
  DerivationTable d;
  DerivationTable delta;  // degree −1, z ↦ z̄

  const AlgebraPtr& algebra() const { return d.algebra(); }
  int max_generator_degree() const;
};

struct LoopModels {
  LoopModel loop;
  DerivationTable based;  // barred generators, zero differential
};

std::string barred_name(std::string_view name);

/// Adds z̄ for each generator, Δz = z̄, Δz̄ = 0, dz̄ = −Δ(dz). Throws ModelError
/// if the result fails validation (through `check_degree`, default: all
/// generators).
LoopModels build_loop_model(const MinimalModel& m, std::optional<int> check_degree = std::nullopt);

struct EquivariantModel {
  LoopModel loop;
  DerivationTable d;  // d̄ on loop generators plus u
  std::string u;
  AlgebraMap restriction;  // string → loop, u ↦ 0
  AlgebraMap inclusion;    // loop → string

  const AlgebraPtr& algebra() const { return d.algebra(); }
};

/// Adds a closed degree-2 generator u (renamed u_, u__, ... if taken) and
/// d̄z = dz + Δ(z)·u. Throws ModelError when d̄² ≠ 0 on a generator.
EquivariantModel build_equivariant_model(const LoopModel& l);

struct GysinRow {
  int degree = 0;
  std::size_t h_string = 0;
  std::size_t h_loop = 0;
  std::size_t rank_u = 0;      // H^{i-2}(string) → H^i(string)
  std::size_t rank_restr = 0;  // H^i(string) → H^i(loop)
  std::size_t rank_conn = 0;   // H^i(loop) → H^{i-1}(string)
  std::size_t rank_delta = 0;  // H^i(loop) → H^{i-1}(loop)
  bool exact = true;
  bool factorization = true;
};

struct GysinFailure {
  int degree = 0;
  std::string check;
  std::string witness;
};

struct GysinReport {
  int cutoff = 0;
  std::vector<GysinRow> rows;
  std::vector<GysinFailure> failures;

  bool exact() const;
  bool factorization() const;
  bool ok() const { return failures.empty(); }
};

/// Long exact sequence ... → H^{i-2}(S) →u H^i(S) →r H^i(L) →∂ H^{i-1}(S) → ...
/// with ∂[z] = [Δz], checked through degree `cutoff`, together with
/// r∘∂ = Δ on H(L) and ∂∘r = 0.
GysinReport gysin_report(const EquivariantModel& e, int cutoff);

}  // namespace stringtop
