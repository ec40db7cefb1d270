#include "stringtop/rational.hpp"

#include <cctype>

namespace stringtop {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const auto num = body.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw InputError("malformed rational '" + std::string(text) + "'");
  Rational q;
  q.get_num() = Integer(std::string(num));
  q.get_den() = Integer(std::string(den));
  if (q.get_den() == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  if (text.front() == '-') q = -q;
  return q;
}

}  // namespace stringtop
