#include "quadobs/parser.h"

#include <cctype>
#include <string>

#include "quadobs/errors.h"

namespace quadobs {

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, int num_vars)
      : text_(text), num_vars_(num_vars) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, 0, static_cast<int>(pos_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial p = term();
    while (true) {
      if (accept('+')) {
        p = p + term();
      } else if (accept('-')) {
        p = p - term();
      } else {
        return p;
      }
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    while (true) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        const size_t at = pos_;
        Polynomial divisor = unary();
        if (divisor.degree() > 0 || divisor.is_zero()) {
          pos_ = at;
          fail(divisor.is_zero() ? "division by zero"
                                 : "division by a non-constant expression");
        }
        p = p * (Rational(1) / divisor.constant_term());
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_space();
      const size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      const int exponent = std::stoi(std::string(text_.substr(start, pos_ - start)));
      return base.pow(exponent);
    }
    return base;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expression();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (c == 'x') {
      ++pos_;
      const size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected variable index after 'x'");
      const int index = std::stoi(std::string(text_.substr(start, pos_ - start)));
      if (index < 1 || index > num_vars_) {
        pos_ = start;
        fail("variable x" + std::to_string(index) + " outside x1..x" +
             std::to_string(num_vars_));
      }
      return Polynomial::Variable(num_vars_, index - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
        ++pos_;
      }
      try {
        return Polynomial::Constant(num_vars_, parse_rational(text_.substr(start, pos_ - start)));
      } catch (const ParseError& e) {
        pos_ = start;
        fail(e.what());
      }
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  int num_vars_;
  size_t pos_ = 0;
};

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t first = 0;
  while (first < s.size() && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  s = s.substr(first);
  if (s.empty()) throw ParseError("empty number");
  bool negative = false;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    s = s.substr(1);
  }
  Rational value;
  const auto slash = s.find('/');
  auto parse_decimal = [](const std::string& d) -> Rational {
    if (d.empty()) throw ParseError("empty number");
    const auto dot = d.find('.');
    std::string digits = d;
    int scale = 0;
    if (dot != std::string::npos) {
      digits = d.substr(0, dot) + d.substr(dot + 1);
      scale = static_cast<int>(d.size() - dot - 1);
      if (d.find('.', dot + 1) != std::string::npos) throw ParseError("malformed number '" + d + "'");
    }
    if (digits.empty()) throw ParseError("malformed number '" + d + "'");
    for (char ch : digits)
      if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("malformed number '" + d + "'");
    mpz_class numerator(digits, 10);  // base 0 would read a leading zero as octal
    mpz_class denominator = 1;
    for (int i = 0; i < scale; ++i) denominator *= 10;
    Rational r(numerator, denominator);
    r.canonicalize();
    return r;
  };
  if (slash == std::string::npos) {
    value = parse_decimal(s);
  } else {
    const Rational denominator = parse_decimal(s.substr(slash + 1));
    if (denominator == 0) throw ParseError("zero denominator");
    value = parse_decimal(s.substr(0, slash)) / denominator;
  }
  return negative ? Rational(-value) : value;
}

Polynomial parse_polynomial(std::string_view text, int num_vars) {
  return PolynomialParser(text, num_vars).parse();
}

PolyVectorField parse_vector_field(std::string_view text, int dim) {
  std::vector<Polynomial> components;
  size_t start = 0;
  while (true) {
    const size_t end = text.find(';', start);
    const std::string_view part =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    try {
      components.push_back(parse_polynomial(part, dim));
    } catch (const ParseError& e) {
      throw ParseError("component " + std::to_string(components.size() + 1) + ": " + e.what());
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (static_cast<int>(components.size()) != dim) {
    throw ParseError("expected " + std::to_string(dim) + " components, got " +
                     std::to_string(components.size()));
  }
  return PolyVectorField(std::move(components));
}

}  // namespace quadobs
