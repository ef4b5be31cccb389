#include "lochf/locring/expression.hpp"

#include <cctype>

#include "lochf/error.hpp"

namespace lochf::locring {
namespace {

class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> names, FieldSpec field)
      : text_(text), names_(names), field_(field) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::parse_error, "column " + std::to_string(pos_ + 1) + ": " +
                                       what + " in '" + std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const Polynomial d = unary();
        if (d.is_zero() || d.max_degree() != 0u) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        acc = d.constant_term().inverse() * acc;
      } else {
        return acc;
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
    if (!accept('^')) return base;
    skip_space();
    const std::string digits = read_digits();
    if (digits.empty()) fail("expected an exponent");
    if (digits.size() > 4) fail("exponent too large");
    const int e = std::stoi(digits);
    Polynomial out = Polynomial::constant(field_, names_.size(), field_.one());
    for (int i = 0; i < e; ++i) out = out * base;
    return out;
  }

  Polynomial primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::string digits = read_digits();
      const Scalar value = field_.from_rational(mpq_class(mpz_class(digits)));
      return Polynomial::constant(field_, names_.size(), value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return Polynomial::variable(field_, names_.size(), i);
      }
      pos_ = start;
      fail("unknown variable '" + std::string(name) + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string read_digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::span<const std::string> names_;
  FieldSpec field_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text,
                            std::span<const std::string> names, FieldSpec field) {
  return Parser(text, names, field).parse();
}

}  // namespace lochf::locring
