#pragma once

#include <string>

#include "mcmdeg/polynomial.hpp"

namespace mcmdeg {

/// S/(f) with S the power series ring over the listed variables. Elements are
/// represented by polynomials; unit checks look at constant terms only.
class HypersurfaceRing {
 public:
  HypersurfaceRing() = default;
  HypersurfaceRing(std::string label, Variables vars, Polynomial f);
  /// Convenience: parse `f` over the given variable names.
  static HypersurfaceRing parse(std::string label, std::vector<std::string> vars, std::string_view f);

  const std::string& label() const { return label_; }
  const Variables& variables() const { return vars_; }
  const Polynomial& f() const { return f_; }
  int krull_dimension() const { return static_cast<int>(vars_.size()) - 1; }

  Polynomial reduce(const Polynomial& p) const { return normal_form(p.rebase(vars_), f_); }
  Polynomial var(std::string_view name) const { return Polynomial::variable(vars_, name); }
  Polynomial constant(const GaussianRational& c) const { return Polynomial::constant(vars_, c); }

  friend bool operator==(const HypersurfaceRing& a, const HypersurfaceRing& b) {
    return a.vars_ == b.vars_ && a.f_ == b.f_;
  }

 private:
  std::string label_;
  Variables vars_;
  Polynomial f_;
};

}  // namespace mcmdeg
