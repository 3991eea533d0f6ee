#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mcmdeg/catalog.hpp"
#include "mcmdeg/degen.hpp"

namespace mcmdeg {

inline constexpr const char* kUnresolvedLabel = "unresolved within shipped facts";
inline constexpr const char* kNotFoundLabel = "not found within bounds";

struct EngineBounds {
  long n_max = 6;                       // largest scale n in M^n =>deg N^n
  std::size_t frontier_cap = 1000000;   // states per breadth-first search
};

/// `repeat` consecutive runs of the fact sequence `steps`.
struct TraceSegment {
  std::vector<std::size_t> steps;  // indices into the engine's fact list
  long repeat = 1;
};

/// scale * generator rewrites to scale * member by the segments, in order.
struct Membership {
  long scale = 1;
  std::vector<TraceSegment> trace;
};

struct ClosureResult {
  ModuleVector generator;
  long d = 0;
  long n_max = 0;
  std::map<ModuleVector, Membership> members;
  std::vector<ModuleVector> not_found;  // E(d) minus members
  std::vector<std::string> warnings;
};

struct DecompositionEntry {
  ModuleVector member;
  std::optional<ModuleVector> covered_by;
  Membership membership;
};

struct DecompositionReport {
  std::string ring;
  long d = 0;
  long N_max = 0;
  long n_max = 0;
  std::string generator_rule;
  std::vector<ModuleVector> generators;
  std::vector<DecompositionEntry> entries;  // E(d) in canonical order
  std::vector<ModuleVector> unresolved;
  std::vector<std::string> warnings;
  bool complete() const { return unresolved.empty(); }
};

struct AxiomReport {
  std::size_t universe_size = 0;
  std::size_t subsets_checked = 0;
  std::size_t pairs_checked = 0;
  bool exhaustive = false;
  bool empty_set = true;     // C(empty) = empty
  bool extensive = true;     // X in C(X)
  bool additive = true;      // C(X u Y) = C(X) u C(Y)
  bool idempotent = true;    // C(C(X)) = C(X)
  bool generic_point = true; // N in C(M) implies C(N) in C(M)
  bool consistent = true;    // worklist closure of {M} agrees with closure(M)
  std::vector<std::string> violations;
  bool pass() const { return empty_set && extensive && additive && idempotent && generic_point && consistent; }
  nlohmann::json to_json() const;
};

struct Graph {
  std::vector<ModuleVector> nodes;
  struct Edge {
    std::size_t from, to;
    long scale;
    std::vector<std::string> facts;  // fact ids along the trace
  };
  std::vector<Edge> edges;
};

/// Bounded reachability over module vectors. Facts rewrite v -> v - source + target; a class N is
/// in the closure of M when n*M rewrites to n*N, and closures are taken transitively (the scales
/// multiply). The engine keeps a reference to `cat`, which must outlive it.
class OrderEngine {
 public:
  OrderEngine(const Catalog& cat, std::vector<AtomicFact> facts, EngineBounds bounds = {});

  /// Canonical order of vectors: count vectors over classes() compared descending.
  bool canonical_less(const ModuleVector& a, const ModuleVector& b) const;

  const Catalog& catalog() const { return cat_; }
  const std::vector<AtomicFact>& facts() const { return facts_; }
  const EngineBounds& bounds() const { return bounds_; }
  const std::vector<ClassKey>& classes() const { return classes_; }

  /// Every vector over the universe classes with total multiplicity d, in canonical order
  /// (count vectors descending, classes in key order).
  std::vector<ModuleVector> enumerate_E(long d) const;

  /// Memberships n*g -> n*N found by breadth-first search at single scales n <= k.
  const std::map<ModuleVector, Membership>& direct(const ModuleVector& g, long k);

  /// Transitive closure of `direct` with scales <= k (default n_max) on E(total_e(g)).
  ClosureResult closure(const ModuleVector& g, std::optional<long> k = std::nullopt);

  /// Union of closures computed by a joint worklist from all of X (independent of closure()).
  std::vector<ModuleVector> closure_of_set(const std::vector<ModuleVector>& xs, std::optional<long> k = std::nullopt);

  /// Generators from the catalog formula ("formula") or all of E(d) ("all"); members are covered round by
  /// round, raising the scale bound only while something is uncovered.
  DecompositionReport decompose_E(long d, const std::string& rule = "formula");

  /// Replays a membership trace from scale*g, checking applicability and multiplicity at every step.
  bool replay(const ModuleVector& g, const ModuleVector& member, const Membership& m, std::string* why = nullptr) const;

  /// Exhaustive when the universe has at most `exhaustive_limit` elements, otherwise `samples`
  /// random pairs (X, Y) of subsets.
  AxiomReport check_topology_axioms(const std::vector<ModuleVector>& universe, std::size_t exhaustive_limit = 20,
                                    std::size_t samples = 200, std::uint64_t seed = 1);

  Graph export_graph(const std::vector<ModuleVector>& universe);

  std::vector<std::string> warnings() const { return warnings_; }

 private:
  using State = std::string;  // one byte per universe class

  State encode(const ModuleVector& v, long scale) const;
  ModuleVector decode(const State& s, long divisor) const;
  void search(const ModuleVector& g, long scale, std::map<ModuleVector, Membership>& out);

  const Catalog& cat_;
  std::vector<AtomicFact> facts_;
  EngineBounds bounds_;
  std::vector<ClassKey> classes_;
  std::map<ClassKey, std::size_t> index_;
  std::vector<long> e_;
  struct Compiled {
    std::vector<std::pair<std::size_t, long>> source, target;
  };
  std::vector<Compiled> compiled_;
  std::map<std::pair<ModuleVector, long>, std::map<ModuleVector, Membership>> direct_memo_;
  std::map<std::pair<ModuleVector, long>, std::map<ModuleVector, Membership>> scale_memo_;
  std::vector<std::string> warnings_;
};

/// Engine over the verified fact store of `cat`.
OrderEngine make_engine(const Catalog& cat, EngineBounds bounds = {}, const FactOptions& options = {});

nlohmann::json to_json(const ClosureResult& r, const OrderEngine& engine);
nlohmann::json to_json(const DecompositionReport& r, const OrderEngine& engine);
nlohmann::json to_json(const Graph& g);
std::string to_dot(const Graph& g);

}  // namespace mcmdeg
