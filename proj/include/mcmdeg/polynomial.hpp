#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcmdeg/gaussian_rational.hpp"

namespace mcmdeg {

/// Ordered list of variable names; the order is the lex priority (first = largest).
class Variables {
 public:
  Variables() : names_(std::make_shared<const std::vector<std::string>>()) {}
  Variables(std::vector<std::string> names);  // NOLINT(google-explicit-constructor)
  Variables(std::initializer_list<std::string> names) : Variables(std::vector<std::string>(names)) {}

  std::size_t size() const { return names_->size(); }
  const std::string& operator[](std::size_t i) const { return (*names_)[i]; }
  const std::vector<std::string>& names() const { return *names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  /// Appends names not already present, keeping the current order first.
  Variables extended(const std::vector<std::string>& more) const;

  /// `base` if unused, else the first of base2, base3, ... that is unused.
  std::string fresh(std::string_view base) const;

  friend bool operator==(const Variables& a, const Variables& b) {
    return a.names_ == b.names_ || *a.names_ == *b.names_;
  }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

using Exponent = std::vector<std::uint32_t>;

struct LexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const { return a > b; }
};

unsigned total_degree(const Exponent& e);
bool divides(const Exponent& a, const Exponent& b);

/// Sparse polynomial over Q(i); terms are kept in lex-descending order with no zero
/// coefficients, so structural equality is value equality.
class Polynomial {
 public:
  using Terms = std::map<Exponent, GaussianRational, LexGreater>;

  Polynomial() = default;
  explicit Polynomial(Variables vars) : vars_(std::move(vars)) {}

  static Polynomial constant(Variables vars, const GaussianRational& c);
  static Polynomial variable(Variables vars, std::string_view name);
  static Polynomial monomial(Variables vars, Exponent e, const GaussianRational& c = 1);

  const Variables& variables() const { return vars_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  GaussianRational constant_term() const;
  /// Unit of the local ring: nonzero constant term.
  bool is_local_unit() const { return !constant_term().is_zero(); }

  const Exponent& leading_exponent() const;
  const GaussianRational& leading_coefficient() const;
  unsigned degree() const;
  /// Smallest total degree of a term; the polynomial must be nonzero.
  unsigned order() const;
  /// Homogeneous component of lowest total degree.
  Polynomial lowest_form() const;

  void add_term(const Exponent& e, const GaussianRational& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const GaussianRational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const GaussianRational& c) { return a *= c; }
  friend Polynomial operator*(const GaussianRational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  Polynomial pow(unsigned k) const;
  Polynomial mul_monomial(const Exponent& e, const GaussianRational& c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Re-expresses the polynomial over `target`, matching variables by name.
  Polynomial rebase(const Variables& target) const;
  /// Replaces the variable `name` by `value` (which lives over the same variables).
  Polynomial substitute(std::string_view name, const Polynomial& value) const;
  /// Sets every listed variable to zero.
  Polynomial zero_out(std::span<const std::string> names) const;
  GaussianRational evaluate(std::span<const GaussianRational> point) const;

  std::string to_string() const;

 private:
  void require_same(const Polynomial& o, const char* op) const;

  Variables vars_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

/// Remainder of division of `p` by the single polynomial `f` under lex order. Since {f} is a
/// Groebner basis of (f), normal_form(p) == normal_form(q) iff p - q lies in (f).
Polynomial normal_form(const Polynomial& p, const Polynomial& f);

/// The quotient r with q*r == p; throws NotDivisible otherwise.
Polynomial exact_divide(const Polynomial& p, const Polynomial& q);
std::optional<Polynomial> try_exact_divide(const Polynomial& p, const Polynomial& q);

}  // namespace mcmdeg
