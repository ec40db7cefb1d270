#pragma once

// Goldman bracket of free homotopy classes on a surface with boundary,
// presented as a thickened one-vertex ribbon graph. Classes are cyclically
// reduced words in the free group on the edges.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stringtop/rational.hpp"

namespace stringtop {

/// Letter code: 2k for generator k, 2k+1 for its inverse.
using Letter = std::uint32_t;

inline Letter inverse(Letter l) { return l ^ 1u; }

class FatGraph {
 public:
  /// `cyclic_order` lists every letter exactly once, counterclockwise, using
  /// `name` and `name^-`. Throws InputError otherwise.
  FatGraph(std::vector<std::string> generators, const std::vector<std::string>& cyclic_order);

  std::size_t rank() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  /// Position of a letter's half-edge in the counterclockwise order.
  std::size_t position(Letter l) const { return position_[l]; }
  const std::vector<Letter>& cyclic_order() const { return order_; }

  std::string letter_name(Letter l) const;
  /// Throws InputError for unknown letters.
  Letter parse_letter(std::string_view token) const;

  std::size_t boundary_components() const;
  std::size_t genus() const;

 private:
  std::vector<std::string> generators_;
  std::vector<Letter> order_;
  std::vector<std::size_t> position_;
};

/// A cyclically reduced word stored in its least rotation. Ordered shortlex.
class CyclicWord {
 public:
  CyclicWord() = default;

  /// Free and cyclic reduction, then canonical rotation.
  static CyclicWord reduce(std::vector<Letter> letters);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }

  CyclicWord inverse() const;

  bool operator==(const CyclicWord&) const = default;
  bool operator<(const CyclicWord& other) const;

 private:
  std::vector<Letter> letters_;
};

CyclicWord cyclic_reduce(std::vector<Letter> letters);

/// True when no adjacent letters cancel, including across the wrap.
bool is_cyclically_reduced(std::span<const Letter> w);

std::vector<Letter> rotate(std::span<const Letter> w, std::size_t i);

/// Space-separated letters; empty text or "1" is the trivial word.
std::vector<Letter> parse_word(const FatGraph& g, std::string_view text);
std::string to_string(const FatGraph& g, std::span<const Letter> w);
std::string to_string(const FatGraph& g, const CyclicWord& w);

/// Rational combination of classes; no zero coefficients.
using BracketResult = std::map<CyclicWord, Rational>;

void add_term(BracketResult& r, const CyclicWord& w, const Rational& c);

struct BracketTerm {
  std::size_t i = 0;  // passage in the first word, before letter i
  std::size_t j = 0;  // passage in the second word
  int sign = 0;
  CyclicWord word;
};

/// One term per crossing of the two curves. Inputs must be cyclically
/// reduced over g's alphabet (InputError otherwise).
std::vector<BracketTerm> goldman_terms(const FatGraph& g, std::span<const Letter> w,
                                       std::span<const Letter> v);

BracketResult goldman_bracket(const FatGraph& g, std::span<const Letter> w, std::span<const Letter> v);
BracketResult goldman_bracket(const FatGraph& g, const CyclicWord& w, const CyclicWord& v);
/// Bilinear extension.
BracketResult goldman_bracket(const FatGraph& g, const BracketResult& a, const BracketResult& b);

struct JacobiFuzzResult {
  bool pass = true;
  std::size_t trials = 0;
  // First failing triple, with both sides of [u,[v,w]] = [[u,v],w] + [v,[u,w]].
  std::optional<std::vector<CyclicWord>> counterexample;
  BracketResult lhs, rhs;
};

/// Random nonempty reduced cyclic word of length at most max_len.
template <class Rng>
CyclicWord random_cyclic_word(const FatGraph& g, Rng& rng, std::size_t max_len);

JacobiFuzzResult jacobi_fuzz(const FatGraph& g, std::size_t trials, std::size_t max_len, std::uint64_t seed);

/// Per-trial seed derived from (seed, trial) with the splitmix64 finalizer.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

template <class Rng>
CyclicWord random_cyclic_word(const FatGraph& g, Rng& rng, std::size_t max_len) {
  const Letter letters = static_cast<Letter>(2 * g.rank());
  if (letters == 0 || max_len == 0) return {};
  for (;;) {
    const std::size_t len = 1 + rng() % max_len;
    std::vector<Letter> w;
    while (w.size() < len) {
      const Letter l = static_cast<Letter>(rng() % letters);
      if (!w.empty() && l == inverse(w.back())) continue;
      w.push_back(l);
    }
    auto c = cyclic_reduce(std::move(w));
    if (!c.empty()) return c;
  }
}

}  // namespace stringtop
