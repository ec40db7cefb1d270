#include "stringtop/goldman.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace stringtop {

namespace {

constexpr std::string_view kInverseSuffix = "^-";

bool valid_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

}  // namespace

// ---------------------------------------------------------------- FatGraph

FatGraph::FatGraph(std::vector<std::string> generators, const std::vector<std::string>& cyclic_order)
    : generators_(std::move(generators)) {
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    if (!valid_identifier(generators_[k])) throw InputError("invalid generator name '" + generators_[k] + "'");
    for (std::size_t l = 0; l < k; ++l)
      if (generators_[l] == generators_[k]) throw InputError("duplicate generator '" + generators_[k] + "'");
  }
  const std::size_t letters = 2 * generators_.size();
  position_.assign(letters, letters);
  for (std::size_t p = 0; p < cyclic_order.size(); ++p) {
    const Letter l = parse_letter(cyclic_order[p]);
    if (position_[l] != letters) throw InputError("half-edge '" + cyclic_order[p] + "' repeats in the cyclic order");
    position_[l] = p;
    order_.push_back(l);
  }
  for (Letter l = 0; l < letters; ++l)
    if (position_[l] == letters) throw InputError("half-edge '" + letter_name(l) + "' missing from the cyclic order");
}

std::string FatGraph::letter_name(Letter l) const {
  std::string s = generators_.at(l / 2);
  if (l % 2) s += kInverseSuffix;
  return s;
}

Letter FatGraph::parse_letter(std::string_view token) const {
  bool inv = false;
  if (token.ends_with(kInverseSuffix)) {
    inv = true;
    token.remove_suffix(kInverseSuffix.size());
  }
  for (std::size_t k = 0; k < generators_.size(); ++k)
    if (generators_[k] == token) return static_cast<Letter>(2 * k + (inv ? 1 : 0));
  throw InputError("unknown letter '" + std::string(token) + (inv ? "^-" : "") + "'");
}

std::size_t FatGraph::boundary_components() const {
  // Faces of the ribbon graph: cycles of p ↦ next ccw position after the
  // half-edge paired with p.
  const std::size_t n = order_.size();
  std::vector<bool> seen(n, false);
  std::size_t cycles = 0;
  for (std::size_t p0 = 0; p0 < n; ++p0) {
    if (seen[p0]) continue;
    ++cycles;
    for (std::size_t p = p0; !seen[p];) {
      seen[p] = true;
      p = (position_[inverse(order_[p])] + 1) % n;
    }
  }
  return cycles;
}

std::size_t FatGraph::genus() const {
  // χ = 1 − rank = 2 − 2g − b
  return (1 + rank() - boundary_components()) / 2;
}

// -------------------------------------------------------------- CyclicWord

CyclicWord CyclicWord::reduce(std::vector<Letter> letters) {
  std::vector<Letter> stack;
  for (Letter l : letters) {
    if (!stack.empty() && stack.back() == stringtop::inverse(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  std::size_t lo = 0, hi = stack.size();
  while (hi - lo >= 2 && stack[lo] == stringtop::inverse(stack[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> w(stack.begin() + lo, stack.begin() + hi);

  std::size_t best = 0;
  for (std::size_t r = 1; r < w.size(); ++r) {
    for (std::size_t k = 0; k < w.size(); ++k) {
      const Letter a = w[(r + k) % w.size()], b = w[(best + k) % w.size()];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  CyclicWord c;
  c.letters_ = rotate(w, best);
  return c;
}

CyclicWord CyclicWord::inverse() const {
  std::vector<Letter> w(letters_.rbegin(), letters_.rend());
  for (auto& l : w) l = stringtop::inverse(l);
  return reduce(std::move(w));
}

bool CyclicWord::operator<(const CyclicWord& other) const {
  if (letters_.size() != other.letters_.size()) return letters_.size() < other.letters_.size();
  return letters_ < other.letters_;
}

CyclicWord cyclic_reduce(std::vector<Letter> letters) { return CyclicWord::reduce(std::move(letters)); }

bool is_cyclically_reduced(std::span<const Letter> w) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w.size() > 1 && w[(k + 1) % w.size()] == inverse(w[k])) return false;
  return true;
}

std::vector<Letter> rotate(std::span<const Letter> w, std::size_t i) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out.push_back(w[(i + k) % w.size()]);
  return out;
}

std::vector<Letter> parse_word(const FatGraph& g, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Letter> w;
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    w.push_back(g.parse_letter(token));
  }
  return w;
}

std::string to_string(const FatGraph& g, std::span<const Letter> w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w) {
    if (!s.empty()) s += ' ';
    s += g.letter_name(l);
  }
  return s;
}

std::string to_string(const FatGraph& g, const CyclicWord& w) { return to_string(g, w.letters()); }

void add_term(BracketResult& r, const CyclicWord& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = r.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) r.erase(it);
  }
}

// ----------------------------------------------------------------- bracket

namespace {

void require_word(const FatGraph& g, std::span<const Letter> w) {
  for (Letter l : w)
    if (l >= 2 * g.rank()) throw InputError("letter outside the fat graph's alphabet");
  if (!is_cyclically_reduced(w)) throw InputError("word is not cyclically reduced: " + to_string(g, w));
}

/// A passage of a word through the vertex: arrives along half-edge `in`,
/// leaves along `out` (positions in the cyclic order).
struct Strand {
  std::size_t in, out;
};

class Passages {
 public:
  Passages(const FatGraph& g, std::span<const Letter> w) : g_(g), w_(w) {}
  Strand at(long k) const {
    const long n = static_cast<long>(w_.size());
    const auto idx = [n](long x) { return static_cast<std::size_t>(((x % n) + n) % n); };
    return {g_.position(inverse(w_[idx(k - 1)])), g_.position(w_[idx(k)])};
  }

 private:
  const FatGraph& g_;
  std::span<const Letter> w_;
};

}  // namespace

std::vector<BracketTerm> goldman_terms(const FatGraph& g, std::span<const Letter> w, std::span<const Letter> v) {
  require_word(g, w);
  require_word(g, v);
  std::vector<BracketTerm> terms;
  if (w.empty() || v.empty()) return terms;

  const std::size_t slots = 2 * g.rank();
  // x lies strictly between a and b going counterclockwise.
  auto ccw_open = [slots](std::size_t x, std::size_t a, std::size_t b) {
    const std::size_t dx = (x + slots - a) % slots, db = (b + slots - a) % slots;
    return dx > 0 && dx < db;
  };
  auto left_of = [&](std::size_t x, const Strand& s) { return ccw_open(x, s.out, s.in); };

  const Passages pw(g, w), pv(g, v);
  const long n = static_cast<long>(w.size()), m = static_cast<long>(v.size());
  const long bound = n * m + n + m;

  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < m; ++j) {
      const Strand sw = pw.at(i), sv = pv.at(j);
      // Only the first vertex of a shared segment is considered.
      if (sw.in == sv.in || sw.in == sv.out) continue;

      long t = 0;
      long dir = 0;  // +1: same direction, −1: opposite
      if (sw.out == sv.out)
        dir = 1;
      else if (sw.out == sv.in)
        dir = -1;
      bool forever = false;
      if (dir == 1) {
        do {
          ++t;
          if (t > bound) forever = true;
        } while (!forever && pw.at(i + t).out == pv.at(j + t).out);
      } else if (dir == -1) {
        do {
          ++t;
          if (t > bound) forever = true;
        } while (!forever && pw.at(i + t).out == pv.at(j - t).in);
      }
      if (forever) continue;

      const Strand end_w = pw.at(i + t);
      const Strand end_v = pv.at(j + dir * t);
      const bool tail_left = left_of(sw.in, sv);
      const bool head_left = left_of(end_w.out, end_v);
      if (tail_left == head_left) continue;

      auto composite = rotate(w, static_cast<std::size_t>(i));
      const auto rv = rotate(v, static_cast<std::size_t>(j));
      composite.insert(composite.end(), rv.begin(), rv.end());
      terms.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), tail_left ? 1 : -1,
                       cyclic_reduce(std::move(composite))});
    }
  }
  return terms;
}

BracketResult goldman_bracket(const FatGraph& g, std::span<const Letter> w, std::span<const Letter> v) {
  BracketResult r;
  for (const auto& t : goldman_terms(g, w, v)) add_term(r, t.word, Rational(t.sign));
  return r;
}

BracketResult goldman_bracket(const FatGraph& g, const CyclicWord& w, const CyclicWord& v) {
  return goldman_bracket(g, std::span<const Letter>(w.letters()), std::span<const Letter>(v.letters()));
}

BracketResult goldman_bracket(const FatGraph& g, const BracketResult& a, const BracketResult& b) {
  BracketResult r;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b)
      for (const auto& [w, c] : goldman_bracket(g, wa, wb)) add_term(r, w, ca * cb * c);
  return r;
}

// ------------------------------------------------------------------- fuzz

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (trial + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

JacobiFuzzResult jacobi_fuzz(const FatGraph& g, std::size_t trials, std::size_t max_len, std::uint64_t seed) {
  if (max_len == 0) throw std::invalid_argument("maximum word length must be >= 1");
  JacobiFuzzResult result;
  auto single = [](const CyclicWord& w) { return BracketResult{{w, Rational(1)}}; };
  for (std::size_t t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    const auto u = random_cyclic_word(g, rng, max_len);
    const auto v = random_cyclic_word(g, rng, max_len);
    const auto w = random_cyclic_word(g, rng, max_len);
    const auto U = single(u), V = single(v), W = single(w);

    const auto lhs = goldman_bracket(g, U, goldman_bracket(g, V, W));
    auto rhs = goldman_bracket(g, goldman_bracket(g, U, V), W);
    for (const auto& [x, c] : goldman_bracket(g, V, goldman_bracket(g, U, W))) add_term(rhs, x, c);
    ++result.trials;
    if (lhs != rhs) {
      result.pass = false;
      result.counterexample = std::vector<CyclicWord>{u, v, w};
      result.lhs = lhs;
      result.rhs = rhs;
      break;
    }
  }
  return result;
}

}  // namespace stringtop
