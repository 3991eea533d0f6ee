#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcmdeg/poly_matrix.hpp"
#include "mcmdeg/ring.hpp"

namespace mcmdeg {

struct ArithmeticMode {
  bool modular = false;
  std::uint64_t prime = 0;

  static ArithmeticMode rational() { return {}; }
  static ArithmeticMode modular_prime(std::uint64_t p) { return {true, p}; }
  /// Parses `rational`, `modular` or `modular:<p>`.
  static ArithmeticMode parse(const std::string& text);
  std::string name() const;
};

inline constexpr std::uint64_t kDefaultPrime = 1000033;  // = 1 mod 4

/// Rational for rings of dimension <= 2, GF(p) above.
ArithmeticMode default_mode(const HypersurfaceRing& ring);

using SparseCoords = std::vector<std::pair<std::size_t, GaussianRational>>;

/// Monomial basis of S/((f) + m^s). The standard monomials are those not divisible by the
/// lex-leading monomial L of the lowest-degree form of f; reducing a multiple of L trades it
/// for lex-smaller terms of the same degree plus terms of higher degree, so the rewriting
/// terminates inside the degree window.
class TruncationFrame {
 public:
  TruncationFrame(const HypersurfaceRing& ring, unsigned s);

  const HypersurfaceRing& ring() const { return ring_; }
  unsigned s() const { return s_; }
  /// Ordered by degree, so the basis of a lower level t is a prefix.
  const std::vector<Exponent>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t dimension_below(unsigned t) const;
  const Exponent& leading_monomial() const { return lead_; }

  /// Coordinates of the monomial class at this frame's level.
  const SparseCoords& monomial_coords(const Exponent& e) const;
  /// Coordinates of p at level t <= s.
  SparseCoords coords(const Polynomial& p, unsigned t) const;

 private:
  HypersurfaceRing ring_;
  unsigned s_;
  Exponent lead_;
  GaussianRational lead_inv_;
  Polynomial tail_;  // f minus its leading term L
  std::vector<Exponent> basis_;
  std::vector<std::size_t> prefix_;  // prefix_[t] = number of basis monomials of degree < t
  std::map<Exponent, std::size_t> index_;
  mutable std::map<Exponent, SparseCoords> memo_;  // cache only
};

struct LengthProfile {
  std::vector<long> lengths;  // lengths[s-1] = L(s)
  int dimension = 0;
  std::string mode;
};

/// L(s) = dim_k coker(Phi) / m^s coker(Phi) for s = 1..s_max, rows of Phi being relations.
LengthProfile module_lengths(const PolyMatrix& phi, const HypersurfaceRing& ring, unsigned s_max,
                             const ArithmeticMode& mode);

struct MultiplicityReport {
  long e = 0;
  LengthProfile profile;
  std::vector<long> differences;  // D-th finite differences, aligned with lengths
  unsigned stabilized_at = 0;     // last level of the constant window
  bool modular = false;
  nlohmann::json to_json() const;
};

inline unsigned default_s_max(const HypersurfaceRing& ring) { return static_cast<unsigned>(ring.krull_dimension()) + 10; }

/// Hilbert-Samuel multiplicity read off as the D-th difference of L once it is constant on three
/// consecutive levels. Stops early; throws NoStabilization when s_max is reached first.
MultiplicityReport multiplicity_oracle(const PolyMatrix& phi, const HypersurfaceRing& ring, unsigned s_max = 0,
                                       std::optional<ArithmeticMode> mode = std::nullopt);

/// Presentation of R^r: no relations.
PolyMatrix free_presentation(const HypersurfaceRing& ring, std::size_t rank);

struct ExactnessLevel {
  unsigned s = 0;
  long dim_l = 0, dim_m = 0, dim_n = 0;
  long rank_a = 0, rank_b = 0;
  bool a_well_defined = false, b_well_defined = false, composite_zero = false, b_surjective = false,
       middle_exact = false;
  bool pass() const { return a_well_defined && b_well_defined && composite_zero && b_surjective && middle_exact; }
};

struct ExactnessReport {
  std::string ring;
  std::string mode;
  std::vector<ExactnessLevel> levels;
  bool pass() const;
  /// First failing level, if any.
  std::optional<unsigned> first_failure() const;
  nlohmann::json to_json() const;
};

/// Checks L --A--> M --B--> N --> 0 on the truncations at each level: A and B respect the
/// presentations, B*A vanishes, B is onto and im A = ker B. Matrices act on row vectors:
/// A is gens(L) x gens(M), B is gens(M) x gens(N). Only right exactness survives truncation,
/// so injectivity of A is not part of the check; a pass is a truncated (necessary) condition.
ExactnessReport verify_exact_truncated(const PolyMatrix& phi_l, const PolyMatrix& phi_m, const PolyMatrix& phi_n,
                                       const PolyMatrix& a, const PolyMatrix& b, const HypersurfaceRing& ring,
                                       std::span<const unsigned> levels, std::optional<ArithmeticMode> mode = std::nullopt);

}  // namespace mcmdeg
