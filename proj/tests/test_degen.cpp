#include <doctest.h>

#include <algorithm>

#include "mcmdeg/degen.hpp"
#include "mcmdeg/errors.hpp"
#include "mcmdeg/parse.hpp"
#include "mcmdeg/truncation.hpp"

using namespace mcmdeg;

namespace {

const FamilySpec& family(const Catalog& cat, const std::string& name, long n) {
  for (const auto& f : cat.families)
    if (f.name == name && f.n == n) return f;
  throw Error("no family " + name);
}

std::string failures(const VerificationReport& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (!c.pass) s += c.check + " (" + c.detail + ") ";
  return s;
}

bool has_check(const VerificationReport& r, const std::string& name, bool pass) {
  return std::any_of(r.checks.begin(), r.checks.end(),
                     [&](const CheckRecord& c) { return c.check == name && c.pass == pass; });
}

// e of a direct sum computed from its block-diagonal presentation, independently of stored values
long oracle_e(const ModuleVector& v, const Catalog& cat) {
  std::optional<PolyMatrix> acc;
  for (const auto& [k, n] : v.counts())
    for (long i = 0; i < n; ++i) {
      PolyMatrix p = cat.get(k).presentation(cat.ring);
      acc = acc ? PolyMatrix::block_diag(*acc, p) : p;
    }
  return multiplicity_oracle(*acc, cat.ring).e;
}

}  // namespace

TEST_CASE("family facts over Dinf-1") {
  Catalog cat = load_catalog("Dinf-1", 6);
  for (long n = 0; n <= 4; ++n) {
    for (const char* name : {"Q+", "Q-"}) {
      AtomicFact f = family_fact(family(cat, name, n), cat);
      VerificationReport r = verify_certificate(f, cat);
      INFO(f.id << ": " << failures(r));
      CHECK(r.pass());
      CHECK(r.verdict() == "pass");
      CHECK(has_check(r, "special_fiber", true));
    }
  }
  for (long n = 0; n <= 5; ++n) {
    for (const char* name : {"P+", "P-"}) {
      AtomicFact f = family_fact(family(cat, name, n), cat);
      VerificationReport r = verify_certificate(f, cat);
      INFO(f.id << ": " << failures(r));
      CHECK(r.pass());
    }
  }
  // sides as degenerations of classes, aliases resolved
  CHECK(family_fact(family(cat, "Q+", 1), cat).source == ModuleVector::parse("Mplus[1]"));
  CHECK(family_fact(family(cat, "Q+", 1), cat).target == ModuleVector::parse("Mplus[3]"));
  CHECK(family_fact(family(cat, "P+", 2), cat).target == ModuleVector::parse("Iminus[3]"));
  CHECK(family_fact(family(cat, "P-", 2), cat).target == ModuleVector::parse("Iplus[3]"));
}

TEST_CASE("n = 0 facts go through the identifications") {
  Catalog cat = load_catalog("Dinf-1", 3);
  const std::tuple<const char*, const char*, const char*> expect[] = {
      {"Q+", "X_y", "Mplus[2]"}, {"Q-", "R + X_x2", "Mminus[2]"}, {"P+", "R", "Iminus[1]"}, {"P-", "R", "Iplus[1]"}};
  for (auto [name, src, tgt] : expect) {
    AtomicFact f = family_fact(family(cat, name, 0), cat);
    CHECK(f.source == ModuleVector::parse(src));
    CHECK(f.target == ModuleVector::parse(tgt));
    VerificationReport r = verify_certificate(f, cat);
    INFO(f.id << ": " << failures(r));
    CHECK(r.pass());
    CHECK(std::any_of(r.checks.begin(), r.checks.end(),
                      [](const CheckRecord& c) { return c.check.rfind("identification", 0) == 0 && c.pass; }));
  }
}

TEST_CASE("bad certificates are rejected") {
  Catalog cat = load_catalog("Dinf-1", 4);
  SUBCASE("special fiber of the wrong class") {
    FamilySpec spec = family(cat, "Q+", 1);
    spec.target = ClassKey::parse("Mplus[2]");  // t = 0 gives y^3 in the corner, not y^2
    VerificationReport r = verify_certificate(family_fact(spec, cat), cat);
    CHECK_FALSE(r.pass());
    CHECK(has_check(r, "special_fiber", false));
    CHECK(has_check(r, "multiplicity", true));
  }
  SUBCASE("non-morphism") {
    FamilySpec spec = family(cat, "Q+", 1);
    spec.alpha = PolyMatrix::identity(spec.family.ring.variables(), 2);
    VerificationReport r = verify_certificate(family_fact(spec, cat), cat);
    CHECK(has_check(r, "morphism", false));
  }
  SUBCASE("morphism that stays singular after inverting t") {
    FamilySpec spec = family(cat, "Q+", 1);
    const Variables& v = spec.family.ring.variables();
    Polynomial y = Polynomial::variable(v, "y");
    spec.alpha = y * spec.alpha;
    spec.beta = y * spec.beta;
    VerificationReport r = verify_certificate(family_fact(spec, cat), cat);
    CHECK(has_check(r, "morphism", true));
    CHECK(has_check(r, "generic_isomorphism", false));
  }
  SUBCASE("not a factorization") {
    FamilySpec spec = family(cat, "P+", 1);
    spec.family.psi = spec.family.phi;
    CHECK(has_check(verify_certificate(family_fact(spec, cat), cat), "family_mf", false));
  }
  SUBCASE("unbalanced multiplicity") {
    AtomicFact f = family_fact(family(cat, "Q+", 1), cat);
    f.target = ModuleVector::parse("Mminus[3]");
    CHECK(has_check(verify_certificate(f, cat), "multiplicity", false));
  }
  SUBCASE("missing provenance") {
    AtomicFact f = family_fact(family(cat, "Q+", 1), cat);
    f.provenance.clear();
    CHECK_FALSE(verify_certificate(f, cat).pass());
  }
}

TEST_CASE("free-cover facts") {
  Catalog a = load_catalog("Ainf-1", 3);
  AtomicFact x = free_cover_fact(a, ClassKey::parse("X"));
  CHECK(x.source == ModuleVector::parse("R"));
  CHECK(x.target == ModuleVector::parse("X^2"));
  CHECK(verify_certificate(x, a).pass());
  AtomicFact i2 = free_cover_fact(a, ClassKey::parse("I[2]"));
  CHECK(i2.source == ModuleVector::parse("R^2"));
  CHECK(i2.target == ModuleVector::parse("I[2]^2"));
  CHECK(verify_certificate(i2, a).pass());

  Catalog c = load_catalog("cusp", 1);
  AtomicFact m = free_cover_fact(c, ClassKey::parse("m"));
  CHECK(m.source == ModuleVector::parse("R^2"));
  CHECK(m.target == ModuleVector::parse("m^2"));
  CHECK(verify_certificate(m, c).pass());

  Catalog d1 = load_catalog("Dinf-1", 2);
  CHECK(free_cover_fact(d1, ClassKey::parse("X_xy")).target == ModuleVector::parse("X_x + X_xy"));
  CHECK(free_cover_fact(d1, ClassKey::parse("Mplus[2]")).target == ModuleVector::parse("Mminus[2] + Mplus[2]"));
  CHECK_THROWS_AS(free_cover_fact(d1, ClassKey::parse("Mplus[0]")), VerificationFailure);
  CHECK_THROWS_AS(free_cover_fact(d1, ClassKey::parse("R")), VerificationFailure);

  Catalog cone = load_catalog("cone", 1);
  AtomicFact ij = free_cover_fact(cone, ClassKey::parse("I"));
  CHECK(ij.target == ModuleVector::parse("I + J"));
  CHECK(verify_certificate(ij, cone).pass());
}

TEST_CASE("truncated ses facts") {
  Catalog c = load_catalog("cusp", 1);
  REQUIRE(c.ses.size() == 1);
  AtomicFact f = ses_fact(c.ses[0], c);
  VerificationReport r = verify_certificate(f, c);
  INFO(failures(r));
  CHECK(r.verdict() == "pass (truncated)");
  CHECK(f.source == ModuleVector::parse("R^2"));
  CHECK(f.target == ModuleVector::parse("m^2"));

  Catalog d1 = load_catalog("Dinf-1", 3);
  for (const auto& s : d1.ses) {
    VerificationReport rr = verify_certificate(ses_fact(s, d1), d1);
    INFO(rr.fact_id << ": " << failures(rr));
    CHECK(rr.verdict() == "pass (truncated)");
  }
  // default stores leave them out
  for (const auto& fact : build_fact_store(d1).facts()) CHECK_FALSE(fact.truncated);
  auto with = build_fact_store(d1, FactOptions{true});
  CHECK(std::count_if(with.facts().begin(), with.facts().end(), [](const AtomicFact& a) { return a.truncated; }) == 3);
}

TEST_CASE("lifted certificates") {
  Catalog base = load_catalog("Dinf-1", 4);
  Catalog lifted = lift_catalog(base, 1);
  for (const auto& spec : base.families) {
    AtomicFact f = lift_certificate(family_fact(spec, base), base, lifted);
    VerificationReport r = verify_certificate(f, lifted);
    INFO(f.id << ": " << failures(r));
    CHECK(r.pass());
  }
  AtomicFact q = lift_certificate(family_fact(family(base, "Q+", 1), base), base, lifted);
  CHECK(q.source == ModuleVector::parse("Mplus##[1]"));
  CHECK(q.target == ModuleVector::parse("Mplus##[3]"));
  CHECK(oracle_e(q.source, lifted) == 4);
  CHECK(oracle_e(q.target, lifted) == 4);
  AtomicFact p0 = lift_certificate(family_fact(family(base, "P-", 0), base), base, lifted);
  CHECK(p0.source == ModuleVector::parse("R##^2"));
  CHECK(oracle_e(p0.source, lifted) == oracle_e(p0.target, lifted));
  AtomicFact q0 = lift_certificate(family_fact(family(base, "Q-", 0), base), base, lifted);
  CHECK(q0.source == ModuleVector::parse("R## + X_x2##"));
  CHECK(oracle_e(q0.source, lifted) == oracle_e(q0.target, lifted));

  CHECK_THROWS_AS(lift_certificate(free_cover_fact(base, ClassKey::parse("X_x")), base, lifted), Error);
}

TEST_CASE("double lift re-verifies") {
  Catalog base = load_catalog("Dinf-1", 3);
  Catalog once = lift_catalog(base, 1);
  Catalog twice = lift_catalog(once, 1);
  CHECK(twice.ring.variables().size() == 6);
  AtomicFact f = family_fact(family(base, "Q+", 1), base);
  AtomicFact f1 = lift_certificate(f, base, once);
  AtomicFact f2 = lift_certificate(f1, once, twice);
  VerificationReport r = verify_certificate(f2, twice);
  INFO(failures(r));
  CHECK(r.pass());
  AtomicFact g = lift_certificate(lift_certificate(family_fact(family(base, "P+", 1), base), base, once), once, twice);
  CHECK(verify_certificate(g, twice).pass());
}

TEST_CASE("fact stores") {
  for (const char* ring : {"Ainf-1", "cusp", "Dinf-1", "Dinf-2", "cone", "Dinf-3"}) {
    Catalog cat = load_catalog(ring, 4);
    FactStore store = build_fact_store(cat);
    INFO(ring);
    CHECK(store.rejected().empty());
    for (const auto& r : store.rejected()) INFO(r.to_json().dump());
    for (const auto& f : store.facts()) {
      CHECK(cat.total_e(f.source) == cat.total_e(f.target));
      CHECK_FALSE(f.source.empty());
      CHECK_FALSE(f.target.empty());
      CHECK_FALSE(f.provenance.empty());
    }
  }
  Catalog d1 = load_catalog("Dinf-1", 6);
  FactStore s = build_fact_store(d1);
  // 22 family instances and one free cover per nonfree class
  CHECK(s.facts().size() == 22 + 28);
  CHECK(s.reports().front().to_json()["verdict"] == "pass");
}
