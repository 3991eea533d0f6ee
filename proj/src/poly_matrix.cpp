#include "mcmdeg/poly_matrix.hpp"

#include <bit>
#include <sstream>

#include "mcmdeg/errors.hpp"

namespace mcmdeg {

PolyMatrix::PolyMatrix(Variables vars, std::size_t rows, std::size_t cols)
    : vars_(std::move(vars)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(vars_)) {}

PolyMatrix PolyMatrix::identity(const Variables& vars, std::size_t n) {
  return scalar(vars, n, Polynomial::constant(vars, 1));
}

PolyMatrix PolyMatrix::scalar(const Variables& vars, std::size_t n, const Polynomial& p) {
  PolyMatrix m(vars, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = p;
  return m;
}

PolyMatrix PolyMatrix::from_rows(const Variables& vars, const std::vector<std::vector<Polynomial>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  PolyMatrix m(vars, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j].rebase(vars);
  }
  return m;
}

PolyMatrix PolyMatrix::block_diag(const PolyMatrix& a, const PolyMatrix& b) {
  if (!(a.vars_ == b.vars_)) throw VariableMismatch("block_diag: variable lists differ");
  PolyMatrix m(a.vars_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
  return m;
}

PolyMatrix PolyMatrix::blocks(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d) {
  if (a.rows_ != b.rows_ || c.rows_ != d.rows_ || a.cols_ != c.cols_ || b.cols_ != d.cols_)
    throw DimensionMismatch("blocks: incompatible block shapes");
  PolyMatrix m(a.vars_, a.rows_ + c.rows_, a.cols_ + b.cols_);
  auto put = [&m](const PolyMatrix& blk, std::size_t r0, std::size_t c0) {
    if (!(blk.vars_ == m.vars_)) throw VariableMismatch("blocks: variable lists differ");
    for (std::size_t i = 0; i < blk.rows_; ++i)
      for (std::size_t j = 0; j < blk.cols_; ++j) m(r0 + i, c0 + j) = blk(i, j);
  };
  put(a, 0, 0);
  put(b, 0, a.cols_);
  put(c, a.rows_, 0);
  put(d, a.rows_, a.cols_);
  return m;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : data_)
    if (!p.is_zero()) return false;
  return true;
}

void PolyMatrix::require_shape(const PolyMatrix& o, const char* op) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch(std::string("shape mismatch in ") + op);
  if (!(vars_ == o.vars_)) throw VariableMismatch(std::string("variable lists differ in ") + op);
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
  if (!(a.vars_ == b.vars_)) throw VariableMismatch("matrix product: variable lists differ");
  PolyMatrix m(a.vars_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Polynomial& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) m(i, j) += aik * b(k, j);
    }
  return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  a.require_shape(b, "add");
  PolyMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
  return m;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  a.require_shape(b, "sub");
  PolyMatrix m = a;
  for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
  return m;
}

PolyMatrix operator*(const Polynomial& p, const PolyMatrix& a) {
  PolyMatrix m = a;
  for (auto& e : m.data_) e = p * e;
  return m;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix m = *this;
  for (auto& e : m.data_) e = -e;
  return m;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix m(vars_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

PolyMatrix PolyMatrix::submatrix(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const {
  PolyMatrix m(vars_, rs.size(), cs.size());
  for (std::size_t i = 0; i < rs.size(); ++i)
    for (std::size_t j = 0; j < cs.size(); ++j) m(i, j) = (*this)(rs[i], cs[j]);
  return m;
}

PolyMatrix PolyMatrix::permuted(std::span<const std::size_t> row_perm, std::span<const std::size_t> col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_) throw DimensionMismatch("permutation length");
  return submatrix(row_perm, col_perm);
}

PolyMatrix PolyMatrix::rebase(const Variables& target) const {
  PolyMatrix m(target, rows_, cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k].rebase(target);
  return m;
}

PolyMatrix PolyMatrix::substitute(std::string_view name, const Polynomial& value) const {
  PolyMatrix m = *this;
  for (auto& e : m.data_) e = e.substitute(name, value);
  return m;
}

PolyMatrix PolyMatrix::zero_out(std::span<const std::string> names) const {
  PolyMatrix m = *this;
  for (auto& e : m.data_) e = e.zero_out(names);
  return m;
}

PolyMatrix PolyMatrix::reduce(const Polynomial& f) const {
  PolyMatrix m = *this;
  for (auto& e : m.data_) e = normal_form(e, f);
  return m;
}

namespace {

// Laplace expansion along rows, memoized over the set of used columns.
Polynomial det_subset_dp(const PolyMatrix& a) {
  std::size_t n = a.rows();
  std::vector<Polynomial> dp(std::size_t{1} << n, Polynomial(a.variables()));
  dp[0] = Polynomial::constant(a.variables(), 1);
  for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
    if (dp[mask].is_zero()) continue;
    auto row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const Polynomial& entry = a(row, j);
      if (entry.is_zero()) continue;
      Polynomial term = entry * dp[mask];
      if (std::popcount(mask >> (j + 1)) % 2) term = -term;
      dp[mask | (std::size_t{1} << j)] += term;
    }
  }
  return dp.back();
}

// Fraction-free elimination; every division is exact in the polynomial ring.
Polynomial det_bareiss(PolyMatrix a) {
  std::size_t n = a.rows();
  Polynomial prev = Polynomial::constant(a.variables(), 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a(r, k).is_zero()) ++r;
      if (r == n) return Polynomial(a.variables());
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = exact_divide(a(k, k) * a(i, j) - a(i, k) * a(k, j), prev);
      a(i, k) = Polynomial(a.variables());
    }
    prev = a(k, k);
  }
  return negate ? -a(n - 1, n - 1) : a(n - 1, n - 1);
}

}  // namespace

Polynomial PolyMatrix::det() const {
  if (!is_square()) throw DimensionMismatch("det of non-square matrix");
  if (rows_ == 0) return Polynomial::constant(vars_, 1);
  return rows_ <= 10 ? det_subset_dp(*this) : det_bareiss(*this);
}

PolyMatrix PolyMatrix::adjugate() const {
  if (!is_square()) throw DimensionMismatch("adjugate of non-square matrix");
  std::size_t n = rows_;
  PolyMatrix adj(vars_, n, n);
  if (n == 1) {
    adj(0, 0) = Polynomial::constant(vars_, 1);
    return adj;
  }
  std::vector<std::size_t> rs, cs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      rs.clear();
      cs.clear();
      for (std::size_t k = 0; k < n; ++k) {
        if (k != i) rs.push_back(k);
        if (k != j) cs.push_back(k);
      }
      Polynomial minor = submatrix(rs, cs).det();
      adj(j, i) = (i + j) % 2 ? -minor : minor;
    }
  }
  return adj;
}

std::vector<std::vector<std::string>> PolyMatrix::to_strings() const {
  std::vector<std::vector<std::string>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j).to_string());
  return out;
}

std::string PolyMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ", ";
    s += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

std::ostream& operator<<(std::ostream& os, const PolyMatrix& m) { return os << m.to_string(); }

}  // namespace mcmdeg
