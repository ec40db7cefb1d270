#include "stringtop/coderivation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "stringtop/linalg.hpp"

namespace stringtop {

namespace {

Rational sign(long e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

bool odd(const GradedBasis& b, std::size_t i) { return shifted_parity(b.degree(i)) == 1; }

/// Visits every subset of {0..n-1} of size `k` (all sizes when k < 0) as a
/// membership mask, together with the Koszul sign of moving the chosen
/// letters to the front.
void for_each_subset(const GradedBasis& basis, const Word& w, int k,
                     const std::function<void(const std::vector<bool>&, int)>& visit) {
  const std::size_t n = w.size();
  std::vector<bool> in(n, false);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
    if (pos == n) {
      if (k >= 0 && remaining != 0) return;
      long swaps = 0;
      long odd_outside = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!odd(basis, w[i])) continue;
        if (in[i])
          swaps += odd_outside;
        else
          ++odd_outside;
      }
      visit(in, swaps % 2 == 0 ? 1 : -1);
      return;
    }
    if (k < 0 || remaining > 0) {
      in[pos] = true;
      rec(pos + 1, remaining - 1);
      in[pos] = false;
    }
    if (k < 0 || static_cast<std::size_t>(remaining) < n - pos) rec(pos + 1, remaining);
  };
  rec(0, k);
}

std::pair<Word, Word> split(const Word& w, const std::vector<bool>& in) {
  std::pair<Word, Word> parts;
  for (std::size_t i = 0; i < w.size(); ++i) (in[i] ? parts.first : parts.second).push_back(w[i]);
  return parts;
}

void add_to(TensorVec& y, const std::pair<Word, Word>& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = y.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) y.erase(it);
  }
}

std::string to_string(const GradedBasis& b, const TensorVec& t) {
  if (t.empty()) return "0";
  std::string s;
  for (const auto& [key, c] : t) {
    if (!s.empty()) s += " + ";
    s += "(" + stringtop::to_string(c) + ")*[" + to_string(b, key.first) + "]|[" + to_string(b, key.second) + "]";
  }
  return s;
}

std::vector<std::string> names(const GradedBasis& b, const Word& w) {
  std::vector<std::string> out;
  for (auto i : w) out.push_back(b.name(i));
  return out;
}

/// Runs `op` on every canonical word up to `max_len` and reports the first
/// nonzero result.
RelationResult vanishing(const std::string& name, const GradedBasis& basis, std::size_t max_len,
                         const std::function<WedgeVec(const Word&)>& op) {
  RelationResult r{name, 0, std::nullopt};
  for (const auto& w : canonical_words(basis, max_len)) {
    ++r.words_checked;
    const WedgeVec v = op(w);
    if (!v.empty()) {
      r.violation = Violation{name, names(basis, w), to_string(basis, v), "0"};
      return r;
    }
  }
  return r;
}

std::string arity_list(const std::vector<std::size_t>& ks) {
  std::string s;
  for (auto k : ks) s += (s.empty() ? "" : ",") + std::to_string(k);
  return s;
}

}  // namespace

int shifted_parity(int degree) { return ((degree + 1) % 2 + 2) % 2; }

void add_to(WedgeVec& y, const WedgeVec& x, const Rational& c) {
  if (c == 0) return;
  for (const auto& [w, v] : x) {
    auto [it, inserted] = y.try_emplace(w, c * v);
    if (!inserted) {
      it->second += c * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

std::string to_string(const GradedBasis& basis, const Word& w) {
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "^" : "") + basis.name(w[k]);
  return s.empty() ? "1" : s;
}

std::string to_string(const GradedBasis& basis, const WedgeVec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : v) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")*" + to_string(basis, w);
  }
  return s;
}

std::optional<std::pair<int, Word>> normalize_word(const GradedBasis& basis, Word w) {
  int sgn = 1;
  for (std::size_t i = 1; i < w.size(); ++i)
    for (std::size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
      if (odd(basis, w[j - 1]) && odd(basis, w[j])) sgn = -sgn;
      std::swap(w[j - 1], w[j]);
    }
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1] && odd(basis, w[i])) return std::nullopt;
  return std::pair{sgn, std::move(w)};
}

std::vector<Word> canonical_words(const GradedBasis& basis, std::size_t max_len) {
  std::vector<Word> out;
  Word cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_len) return;
    for (std::size_t i = from; i < basis.size(); ++i) {
      cur.push_back(i);
      rec(odd(basis, i) ? i + 1 : i);
      cur.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), WordLess{});
  return out;
}

int shifted_degree(const GradedBasis& basis, const Word& w) {
  int d = 0;
  for (auto i : w) d += basis.degree(i) + 1;
  return d;
}

Vec CoderivationRep::evaluate(const Word& tuple) const {
  auto n = normalize_word(basis, tuple);
  if (!n) return {};
  auto it = values.find(n->second);
  if (it == values.end()) return {};
  return scaled(it->second, n->first);
}

WedgeVec extend_coderivation(const CoderivationRep& m, const Word& w) {
  WedgeVec out;
  if (w.size() < m.arity) return out;
  for_each_subset(m.basis, w, static_cast<int>(m.arity), [&](const std::vector<bool>& in, int eps) {
    const auto [chosen, rest] = split(w, in);
    for (const auto& [b, c] : m.evaluate(chosen)) {
      Word letters{b};
      letters.insert(letters.end(), rest.begin(), rest.end());
      if (auto n = normalize_word(m.basis, std::move(letters)))
        add_to(out, WedgeVec{{n->second, Rational(1)}}, c * eps * n->first);
    }
  });
  return out;
}

WedgeVec extend_coderivation(const CoderivationRep& m, const WedgeVec& v) {
  WedgeVec out;
  for (const auto& [w, c] : v) add_to(out, extend_coderivation(m, w), c);
  return out;
}

TensorVec coproduct(const GradedBasis& basis, const Word& w) {
  TensorVec out;
  for_each_subset(basis, w, -1, [&](const std::vector<bool>& in, int eps) { add_to(out, split(w, in), eps); });
  return out;
}

std::optional<Violation> check_coderivation_law(const CoderivationRep& m, std::size_t max_len) {
  const auto& b = m.basis;
  for (const auto& w : canonical_words(b, max_len)) {
    TensorVec lhs;
    for (const auto& [u, c] : extend_coderivation(m, w))
      for (const auto& [key, e] : coproduct(b, u)) add_to(lhs, key, c * e);

    TensorVec rhs;
    for_each_subset(b, w, -1, [&](const std::vector<bool>& in, int eps) {
      const auto [x, y] = split(w, in);
      for (const auto& [u, c] : extend_coderivation(m, x)) add_to(rhs, {u, y}, c * eps);
      const Rational s = sign(shifted_degree(b, x)) * eps;
      for (const auto& [u, c] : extend_coderivation(m, y)) add_to(rhs, {x, u}, c * s);
    });
    if (lhs != rhs)
      return Violation{"coderivation law m_" + std::to_string(m.arity), names(b, w), to_string(b, lhs),
                       to_string(b, rhs)};
  }
  return std::nullopt;
}

bool RelationReport::ok() const {
  return std::all_of(relations.begin(), relations.end(), [](const RelationResult& r) { return r.holds(); });
}

RelationReport coderivation_relations(const std::vector<CoderivationRep>& reps, std::size_t max_len,
                                      const std::vector<std::vector<std::size_t>>& lambdas) {
  RelationReport report;
  if (reps.empty()) return report;
  const GradedBasis& basis = reps.front().basis;
  auto by_arity = [&](std::size_t k) -> const CoderivationRep& {
    for (const auto& r : reps)
      if (r.arity == k) return r;
    throw std::invalid_argument("no operation of arity " + std::to_string(k));
  };

  for (const auto& m : reps) {
    const auto k = std::to_string(m.arity);
    report.relations.push_back(vanishing("m_" + k + " o m_" + k + " = 0", basis, max_len, [&](const Word& w) {
      return extend_coderivation(m, extend_coderivation(m, w));
    }));
  }
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j) {
      const auto& a = reps[i];
      const auto& b = reps[j];
      const auto ka = std::to_string(a.arity), kb = std::to_string(b.arity);
      report.relations.push_back(vanishing("m_" + ka + " o m_" + kb + " + m_" + kb + " o m_" + ka + " = 0", basis,
                                           max_len, [&](const Word& w) {
                                             WedgeVec v = extend_coderivation(a, extend_coderivation(b, w));
                                             add_to(v, extend_coderivation(b, extend_coderivation(a, w)));
                                             return v;
                                           }));
    }
  for (const auto& m : reps) {
    RelationResult r{"coderivation law m_" + std::to_string(m.arity), canonical_words(basis, max_len).size(),
                     check_coderivation_law(m, max_len)};
    report.relations.push_back(std::move(r));
  }
  for (const auto& lambda : lambdas) {
    std::vector<const CoderivationRep*> ms;
    for (auto k : lambda) ms.push_back(&by_arity(k));
    auto delta = [&](const WedgeVec& v) {
      WedgeVec out;
      for (const auto* m : ms) add_to(out, extend_coderivation(*m, v));
      return out;
    };
    report.relations.push_back(vanishing("delta_{" + arity_list(lambda) + "}^2 = 0", basis, max_len,
                                         [&](const Word& w) { return delta(delta(WedgeVec{{w, Rational(1)}})); }));
  }
  return report;
}

CheckReport check_string_bracket(const StringBracketTable& t) {
  CheckReport report;
  const auto& b = t.basis;
  const std::size_t n = b.size();
  auto br = [&](const Vec& x, const Vec& y) { return apply_bilinear(t.bracket, x, y); };
  auto fail = [&](const std::string& name, std::vector<std::size_t> args, const Vec& lhs, const Vec& rhs) {
    Violation v{name, {}, to_string(b, lhs), to_string(b, rhs)};
    for (auto a : args) v.witnesses.push_back(b.name(a));
    report.violation = std::move(v);
  };

  for (const auto& [ij, v] : t.bracket)
    if (!b.has_degree(v, b.degree(ij.first) + b.degree(ij.second) + 2)) {
      report.violation = Violation{"degree", {"bracket " + b.name(ij.first) + " " + b.name(ij.second)}, "entry",
                                   "declared degree"};
      return report;
    }
  report.checked.push_back("degree");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Vec lhs = br(unit_vec(i), unit_vec(j));
      const Vec rhs = scaled(br(unit_vec(j), unit_vec(i)), -sign(long(b.degree(i)) * b.degree(j)));
      if (lhs != rhs) {
        fail("antisymmetry", {i, j}, lhs, rhs);
        return report;
      }
    }
  report.checked.push_back("antisymmetry");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Vec x = unit_vec(i), y = unit_vec(j), z = unit_vec(k);
        const Vec lhs = br(x, br(y, z));
        Vec rhs = br(br(x, y), z);
        add_to(rhs, br(y, br(x, z)), sign(long(b.degree(i)) * b.degree(j)));
        if (lhs != rhs) {
          fail("Jacobi", {i, j, k}, lhs, rhs);
          return report;
        }
      }
  report.checked.push_back("Jacobi");
  return report;
}

StringBrackets string_brackets(const StructureTable& s, std::size_t max_arity) {
  StringBrackets out;
  for (const auto& label : degree_violations(s))
    if (!label.starts_with("bracket")) {
      out.precondition = Violation{"degree", {label}, "entry", "declared degree"};
      return out;
    }
  for (std::size_t i = 0; i < s.loop.size(); ++i) {
    const Vec lhs = s.m(s.e(unit_vec(i)));
    const Vec rhs = s.d(unit_vec(i));
    if (lhs != rhs) {
      out.precondition = Violation{"M o E = Delta", {s.loop.name(i)}, to_string(s.loop, lhs), to_string(s.loop, rhs)};
      return out;
    }
  }
  for (std::size_t j = 0; j < s.string.size(); ++j) {
    const Vec lhs = s.e(s.m(unit_vec(j)));
    if (!lhs.empty()) {
      out.precondition = Violation{"E o M = 0", {s.string.name(j)}, to_string(s.string, lhs), "0"};
      return out;
    }
  }

  out.table.basis = s.string;
  const auto& b = s.string;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Vec v = scaled(s.e(s.mul(s.m(unit_vec(i)), s.m(unit_vec(j)))), sign(b.degree(i)));
      if (!v.empty()) out.table.bracket.emplace(std::pair{i, j}, std::move(v));
    }

  for (std::size_t k = 2; k <= max_arity; ++k) {
    CoderivationRep rep{k, b, {}};
    for (const auto& w : canonical_words(b, k)) {
      if (w.size() != k) continue;
      Vec prod = s.m(unit_vec(w[0]));
      for (std::size_t r = 1; r < k && !prod.empty(); ++r) prod = s.mul(prod, s.m(unit_vec(w[r])));
      Vec v = s.e(prod);
      if (!v.empty()) rep.values.emplace(w, std::move(v));
    }
    out.mbar.push_back(std::move(rep));
  }
  out.report = check_string_bracket(out.table);
  return out;
}

CoderivationRep mbar2_from_bracket(const StringBracketTable& t) {
  CoderivationRep rep{2, t.basis, {}};
  for (const auto& w : canonical_words(t.basis, 2)) {
    if (w.size() != 2) continue;
    Vec v = scaled(apply_bilinear(t.bracket, unit_vec(w[0]), unit_vec(w[1])), sign(t.basis.degree(w[0])));
    if (!v.empty()) rep.values.emplace(w, std::move(v));
  }
  return rep;
}

JacobiEquivalence jacobi_coderivation_equiv(const StringBracketTable& t, std::size_t max_len) {
  JacobiEquivalence eq;
  eq.direct = check_string_bracket(t);
  const auto m2 = mbar2_from_bracket(t);
  eq.square = vanishing("m_2 o m_2 = 0", t.basis, max_len,
                        [&](const Word& w) { return extend_coderivation(m2, extend_coderivation(m2, w)); });
  return eq;
}

StructureTable with_kernel_quotient_string_space(const StructureTable& s) {
  const std::size_t n = s.loop.size();
  auto dense = [&](const Vec& v) {
    DenseVector x(n, Rational(0));
    for (const auto& [i, c] : v) x[i] = c;
    return x;
  };

  StructureTable out = s;
  out.string = GradedBasis{};
  out.E.clear();
  out.M.clear();

  // Loop elements whose Δ-images form a basis of im Δ.
  std::vector<std::size_t> chosen;
  IncrementalSpan span(n);
  for (std::size_t i = 0; i < n; ++i)
    if (span.insert(dense(s.d(unit_vec(i))))) chosen.push_back(i);

  const std::size_t r = chosen.size();
  DenseMatrix images = zero_matrix(n, r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t j = out.string.add("str_" + s.loop.name(chosen[k]), s.loop.degree(chosen[k]));
    out.M.emplace(j, s.d(unit_vec(chosen[k])));
    for (const auto& [row, c] : s.d(unit_vec(chosen[k]))) images[row][k] = c;
  }

  DenseMatrix targets = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [row, c] : s.d(unit_vec(i))) targets[row][i] = c;
  const auto coords = solve(images, r, targets, n);
  if (!coords) throw std::logic_error("image of Delta not spanned by chosen images");
  for (std::size_t i = 0; i < n; ++i) {
    Vec e;
    for (std::size_t k = 0; k < r; ++k)
      if ((*coords)[k][i] != 0) e.emplace(k, (*coords)[k][i]);
    if (!e.empty()) out.E.emplace(i, std::move(e));
  }
  return out;
}

StringBracketTable goldman_table(const FatGraph& g, const std::vector<CyclicWord>& classes, Truncation mode) {
  StringBracketTable t;
  std::map<CyclicWord, std::size_t> index;
  for (const auto& c : classes) {
    const std::size_t i = t.basis.add(to_string(g, c), -2);
    index.emplace(c, i);
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = 0; j < classes.size(); ++j) {
      Vec v;
      for (const auto& [w, c] : goldman_bracket(g, classes[i], classes[j])) {
        auto it = index.find(w);
        if (it != index.end()) {
          add_to(v, unit_vec(it->second), c);
        } else if (mode == Truncation::Reject) {
          throw std::domain_error("bracket of '" + to_string(g, classes[i]) + "' and '" + to_string(g, classes[j]) +
                                  "' leaves the class set: '" + to_string(g, w) + "'");
        }
      }
      if (!v.empty()) t.bracket.emplace(std::pair{i, j}, std::move(v));
    }
  return t;
}

}  // namespace stringtop
