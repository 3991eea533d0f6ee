#include "mcmdeg/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "mcmdeg/errors.hpp"

namespace mcmdeg {

Variables::Variables(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
  for (std::size_t i = 0; i < names_->size(); ++i)
    for (std::size_t j = i + 1; j < names_->size(); ++j)
      if ((*names_)[i] == (*names_)[j]) throw VariableMismatch("duplicate variable name " + (*names_)[i]);
}

std::optional<std::size_t> Variables::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_->size(); ++i)
    if ((*names_)[i] == name) return i;
  return std::nullopt;
}

Variables Variables::extended(const std::vector<std::string>& more) const {
  std::vector<std::string> out = *names_;
  for (const auto& n : more)
    if (!contains(n)) out.push_back(n);
  return Variables(std::move(out));
}

std::string Variables::fresh(std::string_view base) const {
  if (!contains(base)) return std::string(base);
  for (int k = 2;; ++k) {
    std::string candidate = std::string(base) + std::to_string(k);
    if (!contains(candidate)) return candidate;
  }
}

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Polynomial Polynomial::constant(Variables vars, const GaussianRational& c) {
  Polynomial p(std::move(vars));
  p.add_term(Exponent(p.vars_.size(), 0), c);
  return p;
}

Polynomial Polynomial::variable(Variables vars, std::string_view name) {
  auto idx = vars.index_of(name);
  if (!idx) throw VariableMismatch("unknown variable " + std::string(name));
  Exponent e(vars.size(), 0);
  e[*idx] = 1;
  return monomial(std::move(vars), std::move(e));
}

Polynomial Polynomial::monomial(Variables vars, Exponent e, const GaussianRational& c) {
  if (e.size() != vars.size()) throw VariableMismatch("exponent length does not match variables");
  Polynomial p(std::move(vars));
  p.add_term(e, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

GaussianRational Polynomial::constant_term() const {
  if (terms_.empty()) return {};
  auto it = terms_.find(Exponent(vars_.size(), 0));
  return it == terms_.end() ? GaussianRational{} : it->second;
}

const Exponent& Polynomial::leading_exponent() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.begin()->first;
}

const GaussianRational& Polynomial::leading_coefficient() const {
  if (terms_.empty()) throw Error("leading term of zero polynomial");
  return terms_.begin()->second;
}

unsigned Polynomial::degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

unsigned Polynomial::order() const {
  if (terms_.empty()) throw Error("order of zero polynomial");
  unsigned d = ~0u;
  for (const auto& [e, c] : terms_) d = std::min(d, total_degree(e));
  return d;
}

Polynomial Polynomial::lowest_form() const {
  unsigned d = order();
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

void Polynomial::add_term(const Exponent& e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Polynomial::require_same(const Polynomial& o, const char* op) const {
  if (!(vars_ == o.vars_)) throw VariableMismatch(std::string("variable lists differ in ") + op);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  require_same(o, "add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  require_same(o, "sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same(b, "mul");
  Polynomial out(a.vars_);
  Exponent e(a.vars_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(vars_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

Polynomial Polynomial::mul_monomial(const Exponent& m, const GaussianRational& c) const {
  Polynomial out(vars_);
  if (c.is_zero()) return out;
  Exponent e(vars_.size());
  for (const auto& [ea, ca] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + m[i];
    out.terms_.emplace_hint(out.terms_.end(), e, ca * c);
  }
  return out;
}

Polynomial Polynomial::rebase(const Variables& target) const {
  if (target == vars_) return *this;
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0 && !target.contains(vars_[i]))
        throw VariableMismatch("variable " + vars_[i] + " missing from target variable list");
    }
  }
  Polynomial out(target);
  for (const auto& [e, c] : terms_) {
    Exponent ne(target.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) ne[*target.index_of(vars_[i])] = e[i];
    out.add_term(ne, c);
  }
  return out;
}

Polynomial Polynomial::substitute(std::string_view name, const Polynomial& value) const {
  require_same(value, "substitute");
  auto idx = vars_.index_of(name);
  if (!idx) throw VariableMismatch("unknown variable " + std::string(name));
  Polynomial out(vars_);
  std::map<std::uint32_t, Polynomial> powers;
  for (const auto& [e, c] : terms_) {
    Exponent rest = e;
    std::uint32_t k = rest[*idx];
    rest[*idx] = 0;
    if (k == 0) {
      out.add_term(rest, c);
      continue;
    }
    auto it = powers.find(k);
    if (it == powers.end()) it = powers.emplace(k, value.pow(k)).first;
    out += it->second.mul_monomial(rest, c);
  }
  return out;
}

Polynomial Polynomial::zero_out(std::span<const std::string> names) const {
  std::vector<std::size_t> idx;
  for (const auto& n : names)
    if (auto i = vars_.index_of(n)) idx.push_back(*i);
  Polynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    bool keep = std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return e[i] == 0; });
    if (keep) out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

GaussianRational Polynomial::evaluate(std::span<const GaussianRational> point) const {
  if (point.size() != vars_.size()) throw VariableMismatch("evaluation point has wrong length");
  GaussianRational acc;
  for (const auto& [e, c] : terms_) {
    GaussianRational t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

namespace {

std::string monomial_string(const Variables& vars, const Exponent& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono = monomial_string(vars_, e);
    bool negative = c.is_real() ? sgn(c.re()) < 0 : (sgn(c.re()) == 0 && sgn(c.im()) < 0);
    GaussianRational mag = negative ? -c : c;
    std::string body;
    if (mono.empty()) {
      body = mag.to_string();
    } else if (mag.is_one()) {
      body = mono;
    } else {
      body = mag.to_string() + "*" + mono;
    }
    if (first) {
      out = negative ? "-" + body : body;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

Polynomial normal_form(const Polynomial& p, const Polynomial& f) {
  if (f.is_zero()) return p;
  if (!(p.variables() == f.variables())) throw VariableMismatch("normal_form: variable lists differ");
  const Exponent& lead = f.leading_exponent();
  GaussianRational inv_lc = f.leading_coefficient().inverse();
  Polynomial work = p;
  Polynomial rem(p.variables());
  Exponent q(lead.size());
  while (!work.is_zero()) {
    auto [e, c] = *work.terms().begin();
    if (divides(lead, e)) {
      for (std::size_t i = 0; i < q.size(); ++i) q[i] = e[i] - lead[i];
      work -= f.mul_monomial(q, c * inv_lc);
    } else {
      rem.add_term(e, c);
      work.add_term(e, -c);
    }
  }
  return rem;
}

std::optional<Polynomial> try_exact_divide(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw Error("exact_divide by zero polynomial");
  if (!(p.variables() == q.variables())) throw VariableMismatch("exact_divide: variable lists differ");
  const Exponent& lead = q.leading_exponent();
  GaussianRational inv_lc = q.leading_coefficient().inverse();
  Polynomial work = p;
  Polynomial quot(p.variables());
  Exponent m(lead.size());
  while (!work.is_zero()) {
    const auto& [e, c] = *work.terms().begin();
    if (!divides(lead, e)) return std::nullopt;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = e[i] - lead[i];
    GaussianRational k = c * inv_lc;
    quot.add_term(m, k);
    work -= q.mul_monomial(m, k);
  }
  return quot;
}

Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
  auto r = try_exact_divide(p, q);
  if (!r) throw NotDivisible(p.to_string() + " is not divisible by " + q.to_string());
  return *std::move(r);
}

}  // namespace mcmdeg
