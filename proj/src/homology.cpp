#include "stringtop/homology.hpp"

#include <algorithm>

namespace stringtop {

std::size_t matrix_rank(const RationalMatrixSlice& m) { return rank(m.entries); }

// -------------------------------------------------------------- Cohomology

Cohomology::Cohomology(DerivationTable differential, int cutoff)
    : differential_(std::move(differential)), cutoff_(cutoff) {
  if (cutoff_ < 0) throw std::invalid_argument("cutoff must be >= 0");
  if (differential_.degree() != 1) throw std::invalid_argument("differential must have degree +1");
  const Algebra& alg = *algebra();

  for (GeneratorIndex g = 0; g < alg.size(); ++g) {
    if (alg.degree(g) > cutoff_ + 1) continue;
    const auto dd = differential_.apply(differential_.value(g));
    if (!dd.is_zero()) throw SquareZeroError(alg.generator(g).name, "d(d(g)) = " + to_string(dd));
  }

  degrees_.resize(static_cast<std::size_t>(cutoff_) + 2);
  for (int n = 0; n <= cutoff_ + 1; ++n) {
    auto& deg = degrees_[n];
    deg.basis = enumerate_basis(alg, n);
    for (std::size_t k = 0; k < deg.basis.size(); ++k) deg.index.emplace(deg.basis[k], k);
  }
  for (int n = 0; n <= cutoff_; ++n) {
    auto& deg = degrees_[n];
    const auto& next = degrees_[n + 1];
    deg.d = SparseMatrix(next.basis.size(), deg.basis.size());
    for (std::size_t c = 0; c < deg.basis.size(); ++c) {
      const auto image = differential_.apply(deg.basis[c]);
      for (const auto& [m, v] : image.terms()) {
        auto it = next.index.find(m);
        if (it == next.index.end())
          throw std::invalid_argument("differential leaves degree " + std::to_string(n + 1) +
                                      " on " + to_string(alg, deg.basis[c]));
        deg.d.set(it->second, c, v);
      }
    }
    deg.d_rank = rank(deg.d);
  }

  for (int n = 0; n <= cutoff_; ++n) {
    auto& deg = degrees_[n];
    const std::size_t dim = deg.basis.size();
    IncrementalSpan span(dim);
    std::vector<DenseVector> image;
    if (n > 0) {
      const auto& prev = degrees_[n - 1].d;
      for (std::size_t c = 0; c < prev.cols(); ++c) {
        auto col = prev.column(c);
        if (span.insert(col)) image.push_back(std::move(col));
      }
    }
    std::vector<DenseVector> reps;
    for (auto& z : kernel_basis(deg.d.to_dense(), dim))
      if (span.insert(z)) reps.push_back(std::move(z));

    deg.frame_cols = reps.size() + image.size();
    deg.class_frame = zero_matrix(dim, deg.frame_cols);
    std::size_t col = 0;
    for (const auto* group : {&reps, &image})
      for (const auto& v : *group) {
        for (std::size_t r = 0; r < dim; ++r) deg.class_frame[r][col] = v[r];
        ++col;
      }
    for (const auto& v : reps) deg.representatives.push_back(element(v, n));
  }
}

const Cohomology::Degree* Cohomology::slot(int n) const {
  if (n < 0 || n >= static_cast<int>(degrees_.size())) return nullptr;
  return &degrees_[n];
}

const std::vector<Monomial>& Cohomology::basis(int n) const {
  static const std::vector<Monomial> empty;
  const auto* s = slot(n);
  return s ? s->basis : empty;
}

RationalMatrixSlice Cohomology::differential_matrix(int n) const {
  if (n < 0 || n > cutoff_) throw std::out_of_range("differential_matrix degree");
  return {degrees_[n + 1].basis, degrees_[n].basis, degrees_[n].d};
}

std::size_t Cohomology::differential_rank(int n) const {
  if (n < 0) return 0;
  if (n > cutoff_) throw std::out_of_range("differential_rank degree");
  return degrees_[n].d_rank;
}

std::size_t Cohomology::betti(int n) const {
  if (n < 0) return 0;
  if (n > cutoff_) throw std::out_of_range("betti degree beyond cutoff");
  return degrees_[n].basis.size() - differential_rank(n) - differential_rank(n - 1);
}

BettiTable Cohomology::betti_table() const {
  BettiTable t{cutoff_, {}};
  for (int n = 0; n <= cutoff_; ++n) t.values.push_back(betti(n));
  return t;
}

const std::vector<GradedElement>& Cohomology::representatives(int n) const {
  static const std::vector<GradedElement> empty;
  if (n < 0) return empty;
  if (n > cutoff_) throw std::out_of_range("representatives degree beyond cutoff");
  return degrees_[n].representatives;
}

DenseVector Cohomology::coordinates(const GradedElement& a, int n) const {
  const auto* s = slot(n);
  DenseVector v(s ? s->basis.size() : 0, Rational(0));
  for (const auto& [m, c] : a.terms()) {
    if (!s) throw std::invalid_argument("element outside the assembled degrees");
    auto it = s->index.find(m);
    if (it == s->index.end()) throw std::invalid_argument("element is not homogeneous of degree " + std::to_string(n));
    v[it->second] = c;
  }
  return v;
}

GradedElement Cohomology::element(const DenseVector& v, int n) const {
  GradedElement out(algebra());
  const auto& b = basis(n);
  for (std::size_t k = 0; k < v.size(); ++k) out.add_term(b.at(k), v[k]);
  return out;
}

DenseMatrix Cohomology::class_coordinates(const std::vector<GradedElement>& cocycles, int n) const {
  const std::size_t betti_n = betti(n);
  if (n < 0) return zero_matrix(0, cocycles.size());
  const auto& deg = degrees_[n];
  DenseMatrix rhs = zero_matrix(deg.basis.size(), cocycles.size());
  for (std::size_t j = 0; j < cocycles.size(); ++j) {
    if (!is_cocycle(cocycles[j])) throw std::invalid_argument("not a cocycle: " + to_string(cocycles[j]));
    const auto v = coordinates(cocycles[j], n);
    for (std::size_t r = 0; r < v.size(); ++r) rhs[r][j] = v[r];
  }
  auto x = solve(deg.class_frame, deg.frame_cols, rhs, cocycles.size());
  if (!x) throw std::logic_error("cocycle outside kernel span");
  x->resize(betti_n);
  return *x;
}

BettiTable betti_table(const DerivationTable& differential, int cutoff) {
  return Cohomology(differential, cutoff).betti_table();
}

// -------------------------------------------------------------- CochainMap

struct CochainMap::Composite {
  CochainMap outer;
  CochainMap inner;
};

CochainMap::CochainMap(Impl impl, int degree, AlgebraPtr source, AlgebraPtr target)
    : impl_(std::move(impl)), degree_(degree), source_(std::move(source)), target_(std::move(target)) {}

CochainMap CochainMap::derivation(DerivationTable d) {
  const int deg = d.degree();
  auto alg = d.algebra();
  return CochainMap(std::move(d), deg, alg, alg);
}

CochainMap CochainMap::algebra_map(AlgebraMap f) {
  auto s = f.source(), t = f.target();
  return CochainMap(std::move(f), 0, s, t);
}

CochainMap CochainMap::multiplication(GradedElement factor) {
  const auto deg = factor.degree();
  if (!deg) throw std::invalid_argument("multiplier must be nonzero and homogeneous");
  auto alg = factor.algebra();
  return CochainMap(std::move(factor), *deg, alg, alg);
}

CochainMap CochainMap::compose(const CochainMap& outer, const CochainMap& inner) {
  if (!same_algebra(outer.source_, inner.target_))
    throw std::invalid_argument("composition of incompatible cochain maps");
  return CochainMap(std::make_shared<const Composite>(Composite{outer, inner}),
                    outer.degree_ + inner.degree_, inner.source_, outer.target_);
}

GradedElement CochainMap::operator()(const GradedElement& a) const {
  return std::visit(
      [&](const auto& impl) -> GradedElement {
        using T = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<T, DerivationTable>) {
          return impl.apply(a);
        } else if constexpr (std::is_same_v<T, AlgebraMap>) {
          return impl.apply(a);
        } else if constexpr (std::is_same_v<T, GradedElement>) {
          return multiply(impl, a);
        } else {
          return impl->outer(impl->inner(a));
        }
      },
      impl_);
}

std::optional<std::string> CochainMap::chain_violation(const DerivationTable& d_source,
                                                       const DerivationTable& d_target,
                                                       int max_degree) const {
  if (!same_algebra(d_source.algebra(), source_) || !same_algebra(d_target.algebra(), target_))
    throw std::invalid_argument("differentials do not match the map's algebras");
  const Rational sign = degree_ % 2 == 0 ? 1 : -1;
  auto defect = [&](const GradedElement& x) { return d_target.apply((*this)(x)) - sign * (*this)(d_source.apply(x)); };

  if (const auto* m = std::get_if<GradedElement>(&impl_)) {
    if (!d_target.apply(*m).is_zero()) return std::string("multiplier");
    return std::nullopt;
  }
  const Algebra& alg = *source_;
  if (std::holds_alternative<std::shared_ptr<const Composite>>(impl_)) {
    for (int n = 0; n <= max_degree; ++n)
      for (const auto& m : enumerate_basis(alg, n))
        if (!defect(GradedElement::monomial(source_, m)).is_zero()) return to_string(alg, m);
    return std::nullopt;
  }
  for (GeneratorIndex g = 0; g < alg.size(); ++g) {
    if (alg.degree(g) > max_degree) continue;
    if (!defect(GradedElement::generator(source_, alg.generator(g).name)).is_zero())
      return alg.generator(g).name;
  }
  return std::nullopt;
}

// ------------------------------------------------------- maps on cohomology

CohomologyMapReport cohomology_matrix(const std::function<GradedElement(const GradedElement&)>& f,
                                      int shift, const Cohomology& source,
                                      const Cohomology& target, int i) {
  CohomologyMapReport r;
  r.degree = i;
  r.source_betti = source.betti(i);
  const int j = i + shift;
  r.target_betti = j < 0 ? 0 : target.betti(j);
  r.representatives = source.representatives(i);
  if (r.source_betti == 0 || r.target_betti == 0) {
    r.matrix = zero_matrix(r.target_betti, r.source_betti);
    return r;
  }
  std::vector<GradedElement> images;
  for (const auto& z : r.representatives) images.push_back(f(z));
  r.matrix = target.class_coordinates(images, j);
  r.rank = bareiss_rank(r.matrix);
  return r;
}

CohomologyMapReport induced_map(const CochainMap& f, const Cohomology& source,
                                const Cohomology& target, int i) {
  if (!same_algebra(f.source(), source.algebra()) || !same_algebra(f.target(), target.algebra()))
    throw std::invalid_argument("cochain map does not match the complexes");
  if (auto bad = f.chain_violation(source.differential(), target.differential(), source.cutoff() + 1))
    throw ChainMapError(*bad, "d f != (-1)^|f| f d");
  return cohomology_matrix([&](const GradedElement& z) { return f(z); }, f.degree(), source, target, i);
}

}  // namespace stringtop
