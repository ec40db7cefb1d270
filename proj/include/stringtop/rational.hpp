#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace stringtop {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for malformed user input: bad syntax, unknown names, violated
/// structural constraints on files. Mathematical violations are reported
/// through result types instead.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

}  // namespace stringtop
