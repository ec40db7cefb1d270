#include "stringtop/bv.hpp"

#include <functional>

namespace stringtop {

namespace {

Rational sign(long e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

/// Runs identity checks in order and keeps the first failure.
class Runner {
 public:
  Runner(const StructureTable& s, CheckReport& report) : s_(s), r_(report) {}

  using Args = std::vector<std::size_t>;
  // Returns {lhs, rhs} for the given basis tuple.
  using Sides = std::function<std::pair<Vec, Vec>(const Args&)>;

  bool degrees(bool product, bool bracket, bool delta, bool em) {
    if (r_.violation) return false;
    for (const auto& label : degree_violations(s_)) {
      const bool relevant = (product && label.starts_with("product")) || (bracket && label.starts_with("bracket")) ||
                            (delta && label.starts_with("delta")) ||
                            (em && (label.starts_with("E ") || label.starts_with("M ")));
      if (relevant) {
        r_.violation = Violation{"degree", {label}, "entry", "declared degree"};
        return false;
      }
    }
    r_.checked.push_back("degree");
    return true;
  }

  /// Exhaustive over basis tuples of the given arity. Does not record
  /// anything when a previous check failed unless `force`.
  bool identity(const std::string& name, std::size_t arity, const Sides& sides, bool force = false) {
    if (r_.violation && !force) return false;
    Args args(arity, 0);
    const std::size_t n = s_.loop.size();
    if (n == 0) {
      if (!r_.violation) r_.checked.push_back(name);
      return true;
    }
    for (;;) {
      auto [lhs, rhs] = sides(args);
      if (lhs != rhs) {
        if (!r_.violation) {
          Violation v{name, {}, to_string(s_.loop, lhs), to_string(s_.loop, rhs)};
          for (auto a : args) v.witnesses.push_back(s_.loop.name(a));
          r_.violation = std::move(v);
        }
        return false;
      }
      std::size_t k = 0;
      while (k < arity && ++args[k] == n) args[k++] = 0;
      if (k == arity) break;
    }
    if (!r_.violation) r_.checked.push_back(name);
    return true;
  }

 private:
  const StructureTable& s_;
  CheckReport& r_;
};

struct Ops {
  const StructureTable& s;
  int deg(std::size_t i) const { return s.loop.degree(i); }
  Vec u(std::size_t i) const { return unit_vec(i); }
  Vec mul(const Vec& a, const Vec& b) const { return s.mul(a, b); }
  Vec add(Vec a, const Vec& b, const Rational& c = 1) const {
    add_to(a, b, c);
    return a;
  }
};

void product_axioms(Runner& run, const Ops& o) {
  run.identity("graded commutativity", 2, [&](const Runner::Args& x) {
    return std::pair{o.mul(o.u(x[0]), o.u(x[1])),
                     scaled(o.mul(o.u(x[1]), o.u(x[0])), sign(long(o.deg(x[0])) * o.deg(x[1])))};
  });
  run.identity("associativity", 3, [&](const Runner::Args& x) {
    return std::pair{o.mul(o.mul(o.u(x[0]), o.u(x[1])), o.u(x[2])), o.mul(o.u(x[0]), o.mul(o.u(x[1]), o.u(x[2])))};
  });
}

}  // namespace

std::string to_string(const Violation& v) {
  std::string s = v.identity + " fails at (";
  for (std::size_t k = 0; k < v.witnesses.size(); ++k) s += (k ? ", " : "") + v.witnesses[k];
  return s + "): " + v.lhs + " != " + v.rhs;
}

CheckReport check_gerstenhaber(const StructureTable& s) {
  CheckReport report;
  Runner run(s, report);
  const Ops o{s};
  auto br = [&](const Vec& a, const Vec& b) { return s.br(a, b); };
  // (|a|+1)(|b|+1)
  auto shifted = [&](std::size_t a, std::size_t b) { return sign(long(o.deg(a) + 1) * (o.deg(b) + 1)); };

  run.degrees(true, true, false, false);
  product_axioms(run, o);
  run.identity("bracket antisymmetry", 2, [&](const Runner::Args& x) {
    return std::pair{br(o.u(x[0]), o.u(x[1])), scaled(br(o.u(x[1]), o.u(x[0])), -shifted(x[0], x[1]))};
  });
  run.identity("bracket Jacobi", 3, [&](const Runner::Args& x) {
    const auto a = o.u(x[0]), b = o.u(x[1]), c = o.u(x[2]);
    return std::pair{br(a, br(b, c)), o.add(br(br(a, b), c), br(b, br(a, c)), shifted(x[0], x[1]))};
  });
  run.identity("bracket Leibniz", 3, [&](const Runner::Args& x) {
    const auto a = o.u(x[0]), b = o.u(x[1]), c = o.u(x[2]);
    return std::pair{br(a, o.mul(b, c)),
                     o.add(o.mul(br(a, b), c), o.mul(b, br(a, c)), sign(long(o.deg(x[1])) * (o.deg(x[0]) - 1)))};
  });
  return report;
}

BilinearTable derived_bracket(const StructureTable& s) {
  BilinearTable t;
  for (std::size_t i = 0; i < s.loop.size(); ++i)
    for (std::size_t j = 0; j < s.loop.size(); ++j) {
      const Vec a = unit_vec(i), b = unit_vec(j);
      const Rational sa = sign(s.loop.degree(i));
      Vec v = scaled(s.d(s.mul(a, b)), sa);
      add_to(v, s.mul(s.d(a), b), -sa);
      add_to(v, s.mul(a, s.d(b)), -1);
      if (!v.empty()) t.emplace(std::pair{i, j}, std::move(v));
    }
  return t;
}

StructureTable with_derived_bracket(const StructureTable& s) {
  StructureTable out = s;
  out.bracket = derived_bracket(s);
  return out;
}

BvReport check_bv(const StructureTable& s) {
  BvReport report;
  Runner run(s, report);
  const Ops o{s};
  const auto derived = with_derived_bracket(s);
  auto br = [&](const Vec& a, const Vec& b) { return derived.br(a, b); };

  run.degrees(true, false, true, false);
  product_axioms(run, o);
  run.identity("Delta^2 = 0", 1, [&](const Runner::Args& x) { return std::pair{s.d(s.d(o.u(x[0]))), Vec{}}; });
  if (!report.ok()) return report;

  // Both formulations are always evaluated so their verdicts can be compared.
  const bool right = run.identity("deviation is a derivation (second slot)", 3, [&](const Runner::Args& x) {
    const auto a = o.u(x[0]), b = o.u(x[1]), c = o.u(x[2]);
    return std::pair{br(a, o.mul(b, c)),
                     o.add(o.mul(br(a, b), c), o.mul(b, br(a, c)), sign(long(o.deg(x[1])) * (o.deg(x[0]) + 1)))};
  }, true);
  const bool left = run.identity("deviation is a derivation (first slot)", 3, [&](const Runner::Args& x) {
    const auto a = o.u(x[0]), b = o.u(x[1]), c = o.u(x[2]);
    return std::pair{br(o.mul(a, b), c),
                     o.add(o.mul(a, br(b, c)), o.mul(br(a, c), b), sign(long(o.deg(x[1])) * (o.deg(x[2]) + 1)))};
  }, true);
  report.derivation_form = right && left;

  report.seven_term_form = run.identity("seven-term identity", 3, [&](const Runner::Args& x) {
    const auto a = o.u(x[0]), b = o.u(x[1]), c = o.u(x[2]);
    const long da = o.deg(x[0]), db = o.deg(x[1]);
    Vec rhs = o.mul(s.d(o.mul(a, b)), c);
    add_to(rhs, o.mul(a, s.d(o.mul(b, c))), sign(da));
    add_to(rhs, o.mul(b, s.d(o.mul(a, c))), sign((da - 1) * db));
    add_to(rhs, o.mul(o.mul(s.d(a), b), c), -1);
    add_to(rhs, o.mul(o.mul(a, s.d(b)), c), -sign(da));
    add_to(rhs, o.mul(o.mul(a, b), s.d(c)), -sign(da + db));
    return std::pair{s.d(o.mul(o.mul(a, b), c)), rhs};
  }, true);
  return report;
}

}  // namespace stringtop
