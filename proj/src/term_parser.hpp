#pragma once

// Shared tokenizer for the element syntax used by every file format.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stringtop/rational.hpp"

namespace stringtop::detail {

struct ParsedTerm {
  Rational coefficient{1};
  std::vector<std::pair<std::string, int>> factors;  // (name, exponent)
};

std::vector<ParsedTerm> parse_terms(std::string_view text);

}  // namespace stringtop::detail
