#include "stringtop/gca.hpp"

#include <algorithm>
#include <stdexcept>

#include "term_parser.hpp"

namespace stringtop {

bool is_barred_name(std::string_view name) {
  return name.size() > kBarSuffix.size() && name.ends_with(kBarSuffix);
}

bool generator_less(const GeneratorSpec& a, const GeneratorSpec& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  const bool ba = is_barred_name(a.name), bb = is_barred_name(b.name);
  if (ba != bb) return ba;
  return a.name < b.name;
}

Algebra::Algebra(std::vector<GeneratorSpec> generators) : generators_(std::move(generators)) {
  std::sort(generators_.begin(), generators_.end(), generator_less);
  for (GeneratorIndex i = 0; i < generators_.size(); ++i) {
    const auto& g = generators_[i];
    if (g.name.empty()) throw InputError("generator with empty name");
    if (g.degree < 1) throw InputError("generator '" + g.name + "' has degree < 1");
    if (!by_name_.emplace(g.name, i).second) throw InputError("duplicate generator '" + g.name + "'");
  }
}

std::shared_ptr<const Algebra> Algebra::make(std::vector<GeneratorSpec> generators) {
  return std::make_shared<const Algebra>(std::move(generators));
}

std::optional<GeneratorIndex> Algebra::find(std::string_view name) const {
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

GeneratorIndex Algebra::index_of(std::string_view name) const {
  if (auto g = find(name)) return *g;
  throw InputError("unknown generator '" + std::string(name) + "'");
}

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- Monomial

std::optional<Monomial> Monomial::from_factors(const Algebra& algebra,
                                               std::vector<GeneratorIndex> factors) {
  std::sort(factors.begin(), factors.end());
  int degree = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0 && factors[i] == factors[i - 1] && algebra.is_odd(factors[i])) return std::nullopt;
    degree += algebra.degree(factors[i]);
  }
  return Monomial(std::move(factors), degree);
}

std::vector<std::pair<GeneratorIndex, int>> Monomial::powers() const {
  std::vector<std::pair<GeneratorIndex, int>> runs;
  for (GeneratorIndex g : factors_) {
    if (!runs.empty() && runs.back().first == g)
      ++runs.back().second;
    else
      runs.emplace_back(g, 1);
  }
  return runs;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const {
  if (auto c = degree_ <=> other.degree_; c != 0) return c;
  if (auto c = factors_.size() <=> other.factors_.size(); c != 0) return c;
  return factors_ <=> other.factors_;
}

std::optional<std::pair<int, Monomial>> multiply(const Algebra& algebra, const Monomial& a,
                                                 const Monomial& b) {
  const auto fa = a.factors(), fb = b.factors();
  // odd_after[i]: odd factors of `a` at positions >= i.
  std::vector<int> odd_after(fa.size() + 1, 0);
  for (std::size_t i = fa.size(); i-- > 0;) odd_after[i] = odd_after[i + 1] + (algebra.is_odd(fa[i]) ? 1 : 0);

  std::vector<GeneratorIndex> out;
  out.reserve(fa.size() + fb.size());
  int swaps = 0;
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i] <= fb[j])) {
      if (j < fb.size() && fa[i] == fb[j] && algebra.is_odd(fa[i])) return std::nullopt;
      out.push_back(fa[i++]);
    } else {
      if (algebra.is_odd(fb[j])) swaps += odd_after[i];
      out.push_back(fb[j++]);
    }
  }
  return std::pair{swaps % 2 == 0 ? 1 : -1, Monomial(std::move(out), a.degree() + b.degree())};
}

// ----------------------------------------------------------- GradedElement

GradedElement::GradedElement(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw std::invalid_argument("GradedElement requires an algebra");
}

GradedElement GradedElement::constant(AlgebraPtr algebra, const Rational& c) {
  GradedElement e(std::move(algebra));
  e.add_term(Monomial{}, c);
  return e;
}

GradedElement GradedElement::generator(AlgebraPtr algebra, std::string_view name) {
  const GeneratorIndex g = algebra->index_of(name);
  Monomial m({g}, algebra->degree(g));
  return monomial(std::move(algebra), std::move(m));
}

GradedElement GradedElement::monomial(AlgebraPtr algebra, Monomial m, const Rational& c) {
  GradedElement e(std::move(algebra));
  e.add_term(m, c);
  return e;
}

Rational GradedElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool GradedElement::is_homogeneous() const {
  return terms_.empty() || terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

bool GradedElement::has_degree(int degree) const {
  return terms_.empty() ||
         (is_homogeneous() && terms_.begin()->first.degree() == degree);
}

std::optional<int> GradedElement::degree() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return terms_.begin()->first.degree();
}

void GradedElement::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void GradedElement::require_same_algebra(const GradedElement& other) const {
  if (!same_algebra(algebra_, other.algebra_))
    throw std::invalid_argument("operands belong to different algebras");
}

GradedElement& GradedElement::operator+=(const GradedElement& other) {
  require_same_algebra(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& other) {
  require_same_algebra(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

GradedElement& GradedElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [m, v] : terms_) v *= c;
  }
  return *this;
}

bool GradedElement::operator==(const GradedElement& other) const {
  return same_algebra(algebra_, other.algebra_) && terms_ == other.terms_;
}

GradedElement multiply(const GradedElement& a, const GradedElement& b) {
  if (!same_algebra(a.algebra(), b.algebra()))
    throw std::invalid_argument("operands belong to different algebras");
  GradedElement out(a.algebra());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      if (auto p = multiply(*a.algebra(), ma, mb)) out.add_term(p->second, p->first * ca * cb);
  return out;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b) { return multiply(a, b); }

// --------------------------------------------------------- DerivationTable

DerivationTable::DerivationTable(AlgebraPtr algebra, int degree)
    : algebra_(std::move(algebra)), degree_(degree) {
  values_.assign(algebra_->size(), GradedElement(algebra_));
}

void DerivationTable::set(GeneratorIndex g, GradedElement value) {
  if (!same_algebra(algebra_, value.algebra()))
    throw std::invalid_argument("derivation value in a different algebra");
  values_.at(g) = std::move(value);
}

void DerivationTable::set(std::string_view name, GradedElement value) {
  set(algebra_->index_of(name), std::move(value));
}

const GradedElement& DerivationTable::value(std::string_view name) const {
  return values_.at(algebra_->index_of(name));
}

bool DerivationTable::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.is_zero(); });
}

GradedElement DerivationTable::apply(const Monomial& m) const {
  const Algebra& alg = *algebra_;
  GradedElement out(algebra_);
  const auto factors = m.factors();
  std::size_t start = 0;
  int prefix_degree = 0;
  for (const auto& [g, e] : m.powers()) {
    const GradedElement& dg = values_[g];
    if (!dg.is_zero()) {
      // prefix · g^{e−1} · D(g) · suffix, times e for even g.
      std::vector<GeneratorIndex> left(factors.begin(), factors.begin() + start + e - 1);
      std::vector<GeneratorIndex> right(factors.begin() + start + e, factors.end());
      int left_degree = prefix_degree + (e - 1) * alg.degree(g);
      int right_degree = m.degree() - prefix_degree - e * alg.degree(g);
      const Monomial lm(std::move(left), left_degree), rm(std::move(right), right_degree);
      const bool odd_sign = (static_cast<long>(degree_) * prefix_degree) % 2 != 0;
      const Rational scale = Rational(odd_sign ? -e : e);
      for (const auto& [t, c] : dg.terms()) {
        auto p1 = multiply(alg, lm, t);
        if (!p1) continue;
        auto p2 = multiply(alg, p1->second, rm);
        if (!p2) continue;
        out.add_term(p2->second, scale * c * (p1->first * p2->first));
      }
    }
    start += e;
    prefix_degree += e * alg.degree(g);
  }
  return out;
}

GradedElement DerivationTable::apply(const GradedElement& a) const {
  if (!same_algebra(algebra_, a.algebra()))
    throw std::invalid_argument("derivation applied to an element of a different algebra");
  GradedElement out(algebra_);
  for (const auto& [m, c] : a.terms()) out += c * apply(m);
  return out;
}

bool DerivationTable::operator==(const DerivationTable& other) const {
  return same_algebra(algebra_, other.algebra_) && degree_ == other.degree_ &&
         values_ == other.values_;
}

GradedElement apply_derivation(const DerivationTable& d, const GradedElement& a) { return d.apply(a); }

DerivationTable derivation_anticommutator(const DerivationTable& d1, const DerivationTable& d2) {
  if (!same_algebra(d1.algebra(), d2.algebra()))
    throw std::invalid_argument("derivations on different algebras");
  const bool odd = (static_cast<long>(d1.degree()) * d2.degree()) % 2 != 0;
  DerivationTable out(d1.algebra(), d1.degree() + d2.degree());
  for (GeneratorIndex g = 0; g < d1.algebra()->size(); ++g) {
    GradedElement v = d1.apply(d2.value(g));
    if (odd)
      v += d2.apply(d1.value(g));
    else
      v -= d2.apply(d1.value(g));
    out.set(g, std::move(v));
  }
  return out;
}

std::vector<Monomial> enumerate_basis(const Algebra& algebra, int n) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  std::vector<GeneratorIndex> current;
  auto recurse = [&](auto&& self, GeneratorIndex g, int remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(current, n);
      return;
    }
    if (g >= algebra.size()) return;
    const int dg = algebra.degree(g);
    const int max_exp = algebra.is_odd(g) ? 1 : remaining / dg;
    for (int e = std::min(max_exp, remaining / dg); e >= 0; --e) {
      for (int k = 0; k < e; ++k) current.push_back(g);
      self(self, g + 1, remaining - e * dg);
      current.resize(current.size() - e);
    }
  };
  recurse(recurse, 0, n);
  std::sort(out.begin(), out.end());
  return out;
}

// -------------------------------------------------------------- AlgebraMap

AlgebraMap::AlgebraMap(AlgebraPtr source, AlgebraPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  images_.assign(source_->size(), GradedElement(target_));
}

AlgebraMap AlgebraMap::by_name(AlgebraPtr source, AlgebraPtr target) {
  AlgebraMap f(source, target);
  for (GeneratorIndex g = 0; g < source->size(); ++g)
    if (target->find(source->generator(g).name))
      f.set(g, GradedElement::generator(target, source->generator(g).name));
  return f;
}

void AlgebraMap::set(GeneratorIndex g, GradedElement image) {
  if (!same_algebra(target_, image.algebra()))
    throw std::invalid_argument("algebra map image in the wrong algebra");
  images_.at(g) = std::move(image);
}

GradedElement AlgebraMap::apply(const Monomial& m) const {
  GradedElement out = GradedElement::constant(target_, 1);
  for (GeneratorIndex g : m.factors()) {
    out = multiply(out, images_[g]);
    if (out.is_zero()) break;
  }
  return out;
}

GradedElement AlgebraMap::apply(const GradedElement& a) const {
  if (!same_algebra(source_, a.algebra()))
    throw std::invalid_argument("algebra map applied outside its source");
  GradedElement out(target_);
  for (const auto& [m, c] : a.terms()) out += c * apply(m);
  return out;
}

// ---------------------------------------------------------------- text I/O

GradedElement parse_element(const AlgebraPtr& algebra, std::string_view text) {
  GradedElement out(algebra);
  for (const auto& term : detail::parse_terms(text)) {
    GradedElement t = GradedElement::constant(algebra, term.coefficient);
    for (const auto& [name, exponent] : term.factors) {
      const auto g = GradedElement::generator(algebra, name);
      for (int k = 0; k < exponent; ++k) t = multiply(t, g);
    }
    out += t;
  }
  return out;
}

std::string to_string(const Algebra& algebra, const Monomial& m) {
  if (m.is_unit()) return "1";
  std::string s;
  for (const auto& [g, e] : m.powers()) {
    if (!s.empty()) s += '*';
    s += algebra.generator(g).name;
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string to_string(const GradedElement& a) {
  if (a.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : a.terms()) {
    const bool negative = c < 0;
    const Rational mag = abs(c);
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    if (m.is_unit()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + "*";
      s += to_string(*a.algebra(), m);
    }
    first = false;
  }
  return s;
}

}  // namespace stringtop
