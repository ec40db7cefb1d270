#include "term_parser.hpp"

#include <cctype>

namespace stringtop::detail {
namespace {

class TermLexer {
 public:
  explicit TermLexer(std::string_view text) {
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
  }

  std::vector<ParsedTerm> run() {
    if (s_.empty()) fail("empty expression");
    std::vector<ParsedTerm> terms;
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      ParsedTerm t = term();
      if (sign < 0) t.coefficient = -t.coefficient;
      terms.push_back(std::move(t));
      first = false;
    }
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("element '" + s_ + "': " + what + " at offset " + std::to_string(pos_));
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string digits() {
    std::string d;
    while (std::isdigit(static_cast<unsigned char>(peek()))) d.push_back(get());
    return d;
  }

  ParsedTerm term() {
    ParsedTerm t;
    bool has_number = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      std::string num = digits();
      if (peek() == '/') {
        get();
        std::string den = digits();
        if (den.empty()) fail("missing denominator");
        num += "/" + den;
      }
      t.coefficient = parse_rational(num);
      has_number = true;
      if (peek() == '*') {
        get();
        if (!ident_start(peek())) fail("expected generator after '*'");
      }
    }
    if (ident_start(peek())) {
      t.factors.push_back(factor());
      while (peek() == '*') {
        get();
        t.factors.push_back(factor());
      }
    } else if (!has_number) {
      fail("expected coefficient or generator");
    }
    return t;
  }

  std::pair<std::string, int> factor() {
    if (!ident_start(peek())) fail("expected generator name");
    std::string name;
    while (ident_char(peek())) name.push_back(get());
    int exponent = 1;
    if (peek() == '^') {
      get();
      std::string e = digits();
      if (e.empty()) fail("missing exponent");
      exponent = std::stoi(e);
      if (exponent < 1) fail("exponent must be positive");
    }
    return {std::move(name), exponent};
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<ParsedTerm> parse_terms(std::string_view text) { return TermLexer(text).run(); }

}  // namespace stringtop::detail
