#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcmdeg/gaussian_rational.hpp"

namespace mcmdeg {

/// Exact arithmetic in Q(i).
struct RationalField {
  using Elem = GaussianRational;
  Elem from(const GaussianRational& c) const { return c; }
  static bool is_zero(const Elem& a) { return a.is_zero(); }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem inv(const Elem& a) { return a.inverse(); }
  std::string name() const { return "rational"; }
};

/// GF(p) with p = 1 mod 4, so that sqrt(-1) exists and Q(i) maps into the field.
class ModularField {
 public:
  using Elem = std::uint64_t;
  explicit ModularField(std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  std::uint64_t sqrt_minus_one() const { return iota_; }
  /// Throws if a denominator vanishes mod p.
  Elem from(const GaussianRational& c) const;
  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const { return (a + b) % p_; }
  Elem sub(Elem a, Elem b) const { return (a + p_ - b) % p_; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % p_); }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem inv(Elem a) const;
  std::string name() const { return "modular:" + std::to_string(p_); }

 private:
  Elem from_rational(const mpq_class& q) const;

  std::uint64_t p_;
  std::uint64_t iota_;
};

bool is_prime(std::uint64_t n);
/// Smallest prime >= n with p = 1 mod 4.
std::uint64_t next_prime_1mod4(std::uint64_t n);

/// Incrementally built row echelon basis of a subspace of F^n, rows kept sparse.
template <class Field>
class SparseEchelon {
 public:
  using Elem = typename Field::Elem;
  using Row = std::vector<std::pair<std::size_t, Elem>>;  // sorted by column, no zeros

  explicit SparseEchelon(const Field& field) : field_(field) {}

  /// Adds a row; returns true iff it enlarged the span.
  bool insert(Row row);
  /// True iff the row lies in the span.
  bool contains(Row row) const;
  std::size_t rank() const { return count_; }

 private:
  Row reduce(Row row) const;
  Row axpy(const Row& row, const Elem& c, const Row& pivot) const;

  const Field& field_;
  std::vector<Row> pivots_;  // indexed by leading column; empty if none
  std::size_t count_ = 0;
};

template <class Field>
typename SparseEchelon<Field>::Row SparseEchelon<Field>::axpy(const Row& row, const Elem& c, const Row& pivot) const {
  // row - c * pivot
  Row out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, field_.sub(Elem{}, field_.mul(c, pivot[j].second)));
      ++j;
    } else {
      Elem v = field_.sub(row[i].second, field_.mul(c, pivot[j].second));
      if (!field_.is_zero(v)) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class Field>
typename SparseEchelon<Field>::Row SparseEchelon<Field>::reduce(Row row) const {
  std::size_t k = 0;
  while (k < row.size()) {
    std::size_t col = row[k].first;
    if (col < pivots_.size() && !pivots_[col].empty()) {
      Elem c = row[k].second;
      row = axpy(row, c, pivots_[col]);
    } else {
      ++k;
    }
  }
  return row;
}

template <class Field>
bool SparseEchelon<Field>::insert(Row row) {
  row = reduce(std::move(row));
  if (row.empty()) return false;
  // After reduction every entry sits in a non-pivot column; the first becomes the pivot.
  std::size_t col = row[0].first;
  Elem inv = field_.inv(row[0].second);
  for (auto& [c, v] : row) v = field_.mul(v, inv);
  if (pivots_.size() <= col) pivots_.resize(col + 1);
  pivots_[col] = std::move(row);
  ++count_;
  return true;
}

template <class Field>
bool SparseEchelon<Field>::contains(Row row) const {
  return reduce(std::move(row)).empty();
}

}  // namespace mcmdeg
