#include "stringtop/loop_models.hpp"

#include <algorithm>

namespace stringtop {

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::SquareNonZero: return "d^2 != 0";
    case ViolationKind::DeltaSquareNonZero: return "Delta^2 != 0";
    case ViolationKind::DegreeMismatch: return "degree inconsistency";
    case ViolationKind::AnticommutatorNonZero: return "d Delta + Delta d != 0";
  }
  return "?";
}

ModelError::ModelError(ModelViolation v)
    : std::runtime_error(to_string(v.kind) + " at " + v.generator + " (" + v.detail + ")"),
      violation_(std::move(v)) {}

ValidationReport validate_model(const DerivationTable& d, const DerivationTable* delta, int cutoff) {
  ValidationReport report;
  const AlgebraPtr& alg = d.algebra();
  if (delta && !same_algebra(delta->algebra(), alg))
    throw std::invalid_argument("d and Delta live on different algebras");

  auto each_generator = [&](auto&& fn) {
    for (GeneratorIndex g = 0; g < alg->size(); ++g)
      if (alg->degree(g) <= cutoff) fn(g, alg->generator(g));
  };
  auto add = [&](ViolationKind k, const GeneratorSpec& g, std::string detail) {
    report.violations.push_back({k, g.name, g.degree, std::move(detail)});
  };

  each_generator([&](GeneratorIndex g, const GeneratorSpec& spec) {
    const auto v = d.apply(d.value(g));
    if (!v.is_zero()) add(ViolationKind::SquareNonZero, spec, "d(d " + spec.name + ") = " + to_string(v));
  });
  if (delta) {
    each_generator([&](GeneratorIndex g, const GeneratorSpec& spec) {
      const auto v = delta->apply(delta->value(g));
      if (!v.is_zero())
        add(ViolationKind::DeltaSquareNonZero, spec, "Delta(Delta " + spec.name + ") = " + to_string(v));
    });
  }
  std::vector<const DerivationTable*> tables{&d};
  if (delta) tables.push_back(delta);
  each_generator([&](GeneratorIndex g, const GeneratorSpec& spec) {
    for (const auto* t : tables) {
      const int want = spec.degree + t->degree();
      if (!t->value(g).has_degree(want)) {
        add(ViolationKind::DegreeMismatch, spec,
            "value " + to_string(t->value(g)) + " is not of degree " + std::to_string(want));
        break;
      }
    }
  });
  if (delta) {
    each_generator([&](GeneratorIndex g, const GeneratorSpec& spec) {
      const auto v = d.apply(delta->value(g)) + delta->apply(d.value(g));
      if (!v.is_zero())
        add(ViolationKind::AnticommutatorNonZero, spec, "(d Delta + Delta d) " + spec.name + " = " + to_string(v));
    });
  }
  return report;
}

namespace {

int max_degree(const Algebra& alg) {
  int m = 0;
  for (const auto& g : alg.generators()) m = std::max(m, g.degree);
  return m;
}

void require_valid(const DerivationTable& d, const DerivationTable* delta, int cutoff) {
  auto report = validate_model(d, delta, cutoff);
  if (!report.ok()) throw ModelError(*report.first());
}

}  // namespace

MinimalModel::MinimalModel(DerivationTable d) : d_(std::move(d)) {
  if (d_.degree() != 1) throw InputError("differential must have degree +1");
  for (const auto& g : algebra()->generators())
    if (g.degree < 2)
      throw InputError("generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                       "; minimal models must be simply connected");
  require_valid(d_, nullptr, max_degree(*algebra()));
}

int LoopModel::max_generator_degree() const { return max_degree(*algebra()); }

std::string barred_name(std::string_view name) { return std::string(name) + std::string(kBarSuffix); }

LoopModels build_loop_model(const MinimalModel& m, std::optional<int> check_degree) {
  const Algebra& base = *m.algebra();
  std::vector<GeneratorSpec> gens;
  std::vector<GeneratorSpec> barred;
  for (const auto& g : base.generators()) {
    const auto bar = barred_name(g.name);
    if (base.find(bar)) throw InputError("generator name '" + bar + "' is reserved for the loop model");
    gens.push_back(g);
    barred.push_back({bar, g.degree - 1});
  }
  gens.insert(gens.end(), barred.begin(), barred.end());
  auto loop_alg = Algebra::make(std::move(gens));
  auto based_alg = Algebra::make(barred);

  DerivationTable delta(loop_alg, -1);
  for (const auto& g : base.generators()) delta.set(g.name, GradedElement::generator(loop_alg, barred_name(g.name)));

  const auto embed = AlgebraMap::by_name(m.algebra(), loop_alg);
  DerivationTable d(loop_alg, 1);
  for (GeneratorIndex g = 0; g < base.size(); ++g) {
    const auto& name = base.generator(g).name;
    const auto dz = embed.apply(m.differential().value(g));
    d.set(name, dz);
    d.set(barred_name(name), -delta.apply(dz));
  }

  LoopModels out{{d, delta}, DerivationTable(based_alg, 1)};
  require_valid(out.loop.d, &out.loop.delta, check_degree.value_or(max_degree(*loop_alg)));
  return out;
}

EquivariantModel build_equivariant_model(const LoopModel& l) {
  const Algebra& la = *l.algebra();
  std::string u = "u";
  while (la.find(u)) u += '_';

  std::vector<GeneratorSpec> gens(la.generators().begin(), la.generators().end());
  gens.push_back({u, 2});
  auto sa = Algebra::make(std::move(gens));

  auto inclusion = AlgebraMap::by_name(l.algebra(), sa);
  const auto uu = GradedElement::generator(sa, u);
  DerivationTable dbar(sa, 1);
  for (GeneratorIndex g = 0; g < la.size(); ++g)
    dbar.set(la.generator(g).name, inclusion.apply(l.d.value(g)) + inclusion.apply(l.delta.value(g)) * uu);

  EquivariantModel e{l, dbar, u, AlgebraMap::by_name(sa, l.algebra()), inclusion};
  const auto report = validate_model(e.d, nullptr, max_degree(*sa));
  for (const auto& v : report.violations)
    if (v.kind == ViolationKind::SquareNonZero || v.kind == ViolationKind::DegreeMismatch) throw ModelError(v);
  return e;
}

// ------------------------------------------------------------------ Gysin

bool GysinReport::exact() const {
  return std::all_of(rows.begin(), rows.end(), [](const GysinRow& r) { return r.exact; });
}

bool GysinReport::factorization() const {
  return std::all_of(rows.begin(), rows.end(), [](const GysinRow& r) { return r.factorization; });
}

namespace {

std::string first_rep(const std::vector<GradedElement>& reps) { return reps.empty() ? "-" : to_string(reps.front()); }

/// Representative of the first source class where two maps differ.
std::string differing_class(const DenseMatrix& a, const DenseMatrix& b, const std::vector<GradedElement>& reps) {
  for (std::size_t c = 0; c < reps.size(); ++c)
    for (std::size_t r = 0; r < a.size(); ++r)
      if (a[r][c] != b[r][c]) return to_string(reps[c]);
  return first_rep(reps);
}

}  // namespace

GysinReport gysin_report(const EquivariantModel& e, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
  const Cohomology hs(e.d, cutoff + 1);
  const Cohomology hl(e.loop.d, cutoff);

  const auto times_u = CochainMap::multiplication(GradedElement::generator(e.algebra(), e.u));
  const auto restrict_map = CochainMap::algebra_map(e.restriction);
  const auto delta = CochainMap::derivation(e.loop.delta);
  auto connecting = [&](const GradedElement& z) { return e.inclusion.apply(e.loop.delta.apply(z)); };

  std::vector<CohomologyMapReport> u_maps, r_maps, conn_maps, delta_maps;
  for (int i = 0; i <= cutoff + 1; ++i) {
    u_maps.push_back(i >= 2 ? induced_map(times_u, hs, hs, i - 2)
                            : CohomologyMapReport{i - 2, 0, hs.betti(i), 0, zero_matrix(hs.betti(i), 0), {}});
    if (i <= cutoff) {
      r_maps.push_back(induced_map(restrict_map, hs, hl, i));
      conn_maps.push_back(cohomology_matrix(connecting, -1, hl, hs, i));
      delta_maps.push_back(induced_map(delta, hl, hl, i));
    }
  }

  GysinReport report;
  report.cutoff = cutoff;
  auto fail = [&](GysinRow& row, bool& flag, std::string check, std::string witness) {
    flag = false;
    report.failures.push_back({row.degree, std::move(check), std::move(witness)});
  };

  for (int i = 0; i <= cutoff; ++i) {
    GysinRow row;
    row.degree = i;
    row.h_string = hs.betti(i);
    row.h_loop = hl.betti(i);
    row.rank_u = u_maps[i].rank;
    row.rank_restr = r_maps[i].rank;
    row.rank_conn = conn_maps[i].rank;
    row.rank_delta = delta_maps[i].rank;

    const std::size_t prev_conn = i >= 1 ? conn_maps[i - 1].rank : 0;
    if (i >= 2 && prev_conn + row.rank_u != hs.betti(i - 2))
      fail(row, row.exact, "exactness at H^" + std::to_string(i - 2) + "(string)", first_rep(hs.representatives(i - 2)));
    if (row.rank_u + row.rank_restr != row.h_string)
      fail(row, row.exact, "exactness at H^" + std::to_string(i) + "(string)", first_rep(hs.representatives(i)));
    if (row.rank_restr + row.rank_conn != row.h_loop)
      fail(row, row.exact, "exactness at H^" + std::to_string(i) + "(loop)", first_rep(hl.representatives(i)));

    // Consecutive maps compose to zero.
    const auto& ru = r_maps[i];
    const auto& uu = u_maps[i];
    if (!is_zero(matmul(ru.matrix, uu.matrix, row.h_string, uu.source_betti)))
      fail(row, row.exact, "restriction after u", first_rep(uu.representatives));
    const auto& cn = conn_maps[i];
    if (!is_zero(matmul(cn.matrix, ru.matrix, row.h_loop, row.h_string)))
      fail(row, row.exact, "connecting after restriction", first_rep(ru.representatives));
    const auto& un = u_maps[i + 1];
    if (!is_zero(matmul(un.matrix, cn.matrix, cn.target_betti, row.h_loop)))
      fail(row, row.exact, "u after connecting", first_rep(cn.representatives));

    // Restriction after connecting equals Delta on loop cohomology.
    if (i >= 1) {
      const auto composite = matmul(r_maps[i - 1].matrix, cn.matrix, cn.target_betti, row.h_loop);
      if (composite != delta_maps[i].matrix)
        fail(row, row.factorization, "restriction after connecting != Delta",
             differing_class(composite, delta_maps[i].matrix, cn.representatives));
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace stringtop
