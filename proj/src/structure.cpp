#include "stringtop/structure.hpp"

namespace stringtop {

void add_to(Vec& y, const Vec& x, const Rational& c) {
  if (c == 0) return;
  for (const auto& [i, v] : x) {
    auto [it, inserted] = y.try_emplace(i, c * v);
    if (!inserted) {
      it->second += c * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

Vec scaled(const Vec& x, const Rational& c) {
  Vec out;
  add_to(out, x, c);
  return out;
}

Vec unit_vec(std::size_t i) { return Vec{{i, Rational(1)}}; }

std::size_t GradedBasis::add(std::string name, int degree) {
  if (index_.count(name)) throw InputError("duplicate basis element '" + name + "'");
  index_.emplace(name, names_.size());
  names_.push_back(std::move(name));
  degrees_.push_back(degree);
  return names_.size() - 1;
}

std::optional<std::size_t> GradedBasis::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool GradedBasis::has_degree(const Vec& v, int degree) const {
  for (const auto& [i, c] : v)
    if (degrees_.at(i) != degree) return false;
  return true;
}

std::string to_string(const GradedBasis& basis, const Vec& v) {
  if (v.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : v) {
    const bool negative = c < 0;
    if (first)
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    const Rational mag = abs(c);
    if (mag != 1) s += to_string(mag) + "*";
    s += basis.name(i);
    first = false;
  }
  return s;
}

Vec apply_bilinear(const BilinearTable& t, const Vec& a, const Vec& b) {
  Vec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) {
      auto it = t.find({i, j});
      if (it != t.end()) add_to(out, it->second, x * y);
    }
  return out;
}

Vec apply_linear(const LinearTable& t, const Vec& a) {
  Vec out;
  for (const auto& [i, x] : a) {
    auto it = t.find(i);
    if (it != t.end()) add_to(out, it->second, x);
  }
  return out;
}

std::vector<std::string> degree_violations(const StructureTable& s) {
  std::vector<std::string> bad;
  auto bilinear = [&](const char* op, const BilinearTable& t, int shift) {
    for (const auto& [ij, v] : t)
      if (!s.loop.has_degree(v, s.loop.degree(ij.first) + s.loop.degree(ij.second) + shift))
        bad.push_back(std::string(op) + " " + s.loop.name(ij.first) + " " + s.loop.name(ij.second));
  };
  auto linear = [&](const char* op, const LinearTable& t, const GradedBasis& from, const GradedBasis& to,
                    int shift) {
    for (const auto& [i, v] : t)
      if (!to.has_degree(v, from.degree(i) + shift)) bad.push_back(std::string(op) + " " + from.name(i));
  };
  bilinear("product", s.product, 0);
  bilinear("bracket", s.bracket, 1);
  linear("delta", s.delta, s.loop, s.loop, 1);
  linear("E", s.E, s.loop, s.string, 0);
  linear("M", s.M, s.string, s.loop, 1);
  return bad;
}

}  // namespace stringtop
