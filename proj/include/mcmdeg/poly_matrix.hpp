#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "mcmdeg/polynomial.hpp"

namespace mcmdeg {

/// Dense matrix of polynomials sharing one variable list.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(Variables vars, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(const Variables& vars, std::size_t n);
  static PolyMatrix scalar(const Variables& vars, std::size_t n, const Polynomial& p);
  static PolyMatrix from_rows(const Variables& vars, const std::vector<std::vector<Polynomial>>& rows);
  static PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b);
  /// Assembles [[A, B], [C, D]]; block shapes must agree.
  static PolyMatrix blocks(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c, const PolyMatrix& d);

  const Variables& variables() const { return vars_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Polynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Polynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Polynomial& p, const PolyMatrix& a);
  PolyMatrix operator-() const;
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);

  PolyMatrix transpose() const;
  PolyMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  PolyMatrix permuted(std::span<const std::size_t> row_perm, std::span<const std::size_t> col_perm) const;

  PolyMatrix rebase(const Variables& target) const;
  PolyMatrix substitute(std::string_view name, const Polynomial& value) const;
  PolyMatrix zero_out(std::span<const std::string> names) const;
  PolyMatrix reduce(const Polynomial& f) const;

  Polynomial det() const;
  PolyMatrix adjugate() const;

  std::string to_string() const;
  std::vector<std::vector<std::string>> to_strings() const;

 private:
  void require_shape(const PolyMatrix& o, const char* op) const;

  Variables vars_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Polynomial> data_;
};

std::ostream& operator<<(std::ostream& os, const PolyMatrix& m);

}  // namespace mcmdeg
