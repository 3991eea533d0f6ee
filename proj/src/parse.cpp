#include "mcmdeg/parse.hpp"

#include <cctype>

#include "mcmdeg/errors.hpp"

namespace mcmdeg {
namespace {

class Parser {
 public:
  Parser(std::string_view text, const Variables& vars, const ParamBindings& params)
      : text_(text), vars_(vars), params_(params) {}

  Polynomial polynomial() {
    Polynomial p = expr();
    expect_end();
    return p;
  }

  PolyMatrix matrix() {
    std::vector<std::vector<Polynomial>> rows;
    expect('[');
    do {
      expect('[');
      std::vector<Polynomial> row;
      do {
        row.push_back(expr());
      } while (accept(','));
      expect(']');
      rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    expect_end();
    if (rows.empty() || rows[0].empty()) throw ParseError("empty matrix");
    return PolyMatrix::from_rows(vars_, rows);
  }

  long integer_expr() {
    long v = int_sum();
    expect_end();
    return v;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (peek() != '\0') fail("trailing input");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  std::string identifier() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  mpz_class digits() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Polynomial expr() {
    Polynomial acc(vars_);
    bool first = true;
    for (;;) {
      char c = peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        ++pos_;
        neg = c == '-';
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      if (neg) t = -t;
      acc += t;
      first = false;
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = power();
    for (;;) {
      if (accept('*')) {
        acc *= power();
      } else if (accept('/')) {
        Polynomial d = power();
        if (!d.is_constant() || d.is_zero()) fail("division only by nonzero constants");
        acc *= d.constant_term().inverse();
      } else {
        return acc;
      }
    }
  }

  Polynomial power() {
    Polynomial base = atom();
    if (!accept('^')) return base;
    long k = int_atom();
    if (k < 0) fail("negative exponent");
    return base.pow(static_cast<unsigned>(k));
  }

  Polynomial atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      expect(')');
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Polynomial::constant(vars_, GaussianRational(mpq_class(digits())));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      if (vars_.contains(name)) return Polynomial::variable(vars_, name);
      if (auto it = params_.find(name); it != params_.end()) return Polynomial::constant(vars_, it->second);
      if (name == "i") return Polynomial::constant(vars_, GaussianRational::imag_unit());
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected character");
  }

  long int_sum() {
    long acc = 0;
    bool first = true;
    for (;;) {
      char c = peek();
      long sign = 1;
      if (c == '+' || c == '-') {
        ++pos_;
        sign = c == '-' ? -1 : 1;
      } else if (!first) {
        break;
      }
      long t = int_atom();
      while (accept('*')) t *= int_atom();
      acc += sign * t;
      first = false;
    }
    return acc;
  }

  long int_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      long v = int_sum();
      expect(')');
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class z = digits();
      if (!z.fits_slong_p()) fail("integer too large");
      return z.get_si();
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = identifier();
      if (auto it = params_.find(name); it != params_.end()) return it->second;
      fail("unbound parameter '" + name + "'");
    }
    fail("expected integer");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const Variables& vars_;
  const ParamBindings& params_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const Variables& vars, const ParamBindings& params) {
  return Parser(text, vars, params).polynomial();
}

PolyMatrix parse_matrix(std::string_view text, const Variables& vars, const ParamBindings& params) {
  return Parser(text, vars, params).matrix();
}

long parse_int_expr(std::string_view text, const ParamBindings& params) {
  static const Variables none;
  return Parser(text, none, params).integer_expr();
}

}  // namespace mcmdeg
