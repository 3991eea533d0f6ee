#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mcmdeg/catalog.hpp"

namespace mcmdeg {

/// Flat family over S[t]: generic fiber through (alpha, beta), special fiber at t = 0.
struct FamilyCertificate {
  FamilySpec spec;
};

/// 0 -> Omega(M) -> R^n -> M -> 0, with Omega(M) identified through the catalog's syzygy witness.
struct FreeCoverCertificate {
  ClassKey module;
};

struct SesCertificate {
  SesSpec spec;
};

using Certificate = std::variant<FamilyCertificate, FreeCoverCertificate, SesCertificate>;

/// source =>deg target; both sides are stored with aliases resolved.
struct AtomicFact {
  std::string id;
  ModuleVector source;
  ModuleVector target;
  Certificate certificate;
  std::string provenance;
  bool truncated = false;  // admitted on truncated exactness only

  std::string kind() const;  // "family", "free-cover" or "ses"
  nlohmann::json to_json() const;
};

struct CheckRecord {
  std::string check;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::string fact_id;
  std::string kind;
  std::vector<CheckRecord> checks;
  bool truncated = false;

  bool pass() const;
  /// "pass", "pass (truncated)" or "fail".
  std::string verdict() const;
  nlohmann::json to_json() const;
};

AtomicFact family_fact(const FamilySpec& spec, const Catalog& cat);
/// R^size(mf) => M + Omega(M). Throws VerificationFailure for free or alias classes, for a
/// missing syzygy, and for factorizations with unit entries (swap would not give the syzygy).
AtomicFact free_cover_fact(const Catalog& cat, const ClassKey& module);
AtomicFact ses_fact(const SesSpec& spec, const Catalog& cat);

/// Runs every check belonging to the certificate; the fact is admissible iff report.pass().
VerificationReport verify_certificate(const AtomicFact& fact, const Catalog& cat);

/// Knorrer lift of a family fact into `lifted` (the lifted catalog of `base`).
AtomicFact lift_certificate(const AtomicFact& fact, const Catalog& base, const Catalog& lifted);

struct FactOptions {
  bool include_ses = false;  // truncated facts are opt-in
};

/// Append-only store; facts enter only with a passing report.
class FactStore {
 public:
  bool admit(AtomicFact fact, VerificationReport report);
  const std::vector<AtomicFact>& facts() const { return facts_; }
  const std::vector<VerificationReport>& reports() const { return reports_; }
  std::vector<VerificationReport> rejected() const;

 private:
  std::vector<AtomicFact> facts_;
  std::vector<VerificationReport> reports_;  // every attempt, admitted or not
};

/// Verifies and stores the catalog's family facts, a free-cover fact for every nonfree class and,
/// when enabled, its short exact sequences.
FactStore build_fact_store(const Catalog& cat, const FactOptions& options = {});

}  // namespace mcmdeg
