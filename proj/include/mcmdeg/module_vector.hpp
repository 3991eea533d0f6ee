#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mcmdeg/parse.hpp"

namespace mcmdeg {

/// Catalog index of an indecomposable class: family symbol plus optional family parameter.
struct ClassKey {
  std::string family;
  std::optional<long> param;

  auto operator<=>(const ClassKey&) const = default;
  bool operator==(const ClassKey&) const = default;

  std::string to_string() const;
  /// `Mplus[3]`, `R`, `Mplus##[n+2]` (the bracket may use bound parameters).
  static ClassKey parse(std::string_view text, const ParamBindings& params = {});
};

/// Finite direct sum of catalog classes with multiplicities; the empty vector is the zero module.
class ModuleVector {
 public:
  using Counts = std::map<ClassKey, long>;

  ModuleVector() = default;
  static ModuleVector of(const ClassKey& key, long count = 1);

  const Counts& counts() const { return counts_; }
  long count(const ClassKey& key) const;
  bool empty() const { return counts_.empty(); }
  long size() const;  // number of indecomposable summands

  void add(const ClassKey& key, long k = 1);
  ModuleVector& operator+=(const ModuleVector& o);
  friend ModuleVector operator+(ModuleVector a, const ModuleVector& b) { return a += b; }
  ModuleVector scaled(long n) const;
  /// Componentwise <=.
  bool contains(const ModuleVector& o) const;
  /// Requires contains(o).
  ModuleVector minus(const ModuleVector& o) const;

  friend bool operator==(const ModuleVector& a, const ModuleVector& b) { return a.counts_ == b.counts_; }
  friend bool operator<(const ModuleVector& a, const ModuleVector& b) { return a.counts_ < b.counts_; }

  /// `R^2 + m`; the zero module prints as `0`.
  std::string to_string() const;
  static ModuleVector parse(std::string_view text, const ParamBindings& params = {});

 private:
  Counts counts_;
};

}  // namespace mcmdeg
