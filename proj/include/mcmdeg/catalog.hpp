#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcmdeg/matfac.hpp"
#include "mcmdeg/module_vector.hpp"

namespace mcmdeg {

inline constexpr long kDefaultNMax = 6;

struct MCMClass {
  ClassKey key;
  bool free = false;  // the ring itself; no factorization
  std::optional<MatrixFactorization> mf;
  long e = 0;
  std::vector<std::string> ideal;  // images of the standard generators, when the class is an ideal
  std::optional<ClassKey> syzygy;  // class of swap(mf)
  EquivalenceWitness syzygy_witness;  // swap(mf).phi -> catalog mf of `syzygy`
  bool alias = false;  // decomposable parameter value, kept only to be rewritten
  std::string provenance;

  /// Relation matrix of the module: mf.phi, or the empty 0 x 1 matrix for R.
  PolyMatrix presentation(const HypersurfaceRing& ring) const;
};

/// One diagonal block of the right-hand side of an identification.
struct Block {
  enum class Kind { Unit, Free, Class } kind = Kind::Class;
  ClassKey cls;
};

/// lhs is isomorphic to the direct sum of `blocks`: P * lhs.phi == diag(blocks).phi * Q, where a
/// unit block is (1, f) (no summand) and a free block is (f, 1) (a copy of R).
struct IdentificationRule {
  ClassKey lhs;
  std::vector<Block> blocks;
  ModuleVector rhs;
  EquivalenceWitness witness;
  std::string provenance;
};

/// One instance of a one-parameter family: an mf over S[t] whose generic fiber is `source`
/// (through `alpha`, `beta`) and whose special fiber t = 0 is `target`.
struct FamilySpec {
  std::string name;
  long n = 0;
  ClassKey source;
  ClassKey target;
  MatrixFactorization family;
  PolyMatrix alpha;
  PolyMatrix beta;
  std::string t_name = "t";
  std::optional<EquivalenceWitness> t0_witness;  // family|t=0 -> target mf
  std::string provenance;
};

/// 0 -> A -> M -> B -> 0 given by maps of presented modules (row convention).
struct SesSpec {
  std::string name;
  std::optional<long> n;
  ModuleVector middle, left, right;
  PolyMatrix phi_left, phi_middle, phi_right;
  PolyMatrix map_a, map_b;
  std::vector<unsigned> levels;
  std::string provenance;
};

struct GeneratorRule {
  enum class Kind { Linear, HalfFree, Explicit } kind = Kind::Linear;
  std::vector<ClassKey> classes;    // Linear: sums of these with total multiplicity d
  std::optional<ClassKey> odd;      // HalfFree: R^(d/2), or R^((d-1)/2) + odd
  std::map<long, std::vector<ModuleVector>> by_degree;  // Explicit
  std::string provenance;
};

class Catalog {
 public:
  HypersurfaceRing ring;
  long n_max = kDefaultNMax;
  std::vector<MCMClass> classes;  // sorted by key
  std::vector<IdentificationRule> identifications;
  std::vector<FamilySpec> families;
  std::vector<SesSpec> ses;
  GeneratorRule generators_rule;
  std::string description;
  int lift_depth = 0;

  bool contains(const ClassKey& key) const;
  const MCMClass& get(const ClassKey& key) const;
  const ClassKey& free_class() const;
  /// Non-alias classes, in canonical order.
  std::vector<ClassKey> universe_classes() const;
  /// Alias classes map to the rhs of their identification, others to themselves.
  ModuleVector resolve(const ClassKey& key) const;
  ModuleVector resolve(const ModuleVector& v) const;
  const IdentificationRule* identification_for(const ClassKey& key) const;
  long total_e(const ModuleVector& v) const;
  /// Generator set of the decomposition formula for E(d).
  std::vector<ModuleVector> generators(long d) const;
  /// Block-diagonal factorization realizing an identification rhs.
  MatrixFactorization block_mf(const std::vector<Block>& blocks) const;
  void index();

 private:
  std::map<ClassKey, std::size_t> by_key_;
};

std::filesystem::path default_catalog_dir();
std::vector<std::string> supported_rings();

/// Reads a catalog document and instantiates family classes with param <= n_max.
Catalog parse_catalog(const nlohmann::json& doc, long n_max);
/// Built-in rings come from the catalog directory; lifted rings (Dinf-3, Ainf-3) are built with
/// lift_catalog from their one-dimensional base.
Catalog load_catalog(const std::string& label, long n_max = kDefaultNMax,
                     const std::filesystem::path& dir = default_catalog_dir());

ClassKey lift_key(const ClassKey& key);
/// Knorrer lift of a family instance: the family, its morphism (block construction) and its
/// special-fiber witness; `lifted` is the lifted catalog.
FamilySpec lift_family(const FamilySpec& spec, const Catalog& base, const Catalog& lifted);

/// Applies knorrer `times` times to every class, identification, syzygy and family.
Catalog lift_catalog(const Catalog& base, int times);

struct IdealPresentation {
  ClassKey cls;
  std::vector<std::string> generators;
  MatrixFactorization mf;
};
std::vector<IdealPresentation> ideal_presentations(const Catalog& cat);

struct CatalogCheck {
  std::string subject;
  std::string check;
  bool pass = false;
  std::string detail;
};

/// Verifies every mf, syzygy witness and identification, and (when `with_oracle`) compares stored
/// multiplicities with the truncation oracle.
std::vector<CatalogCheck> verify_catalog(const Catalog& cat, bool with_oracle);

}  // namespace mcmdeg
