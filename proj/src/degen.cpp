#include "mcmdeg/degen.hpp"

#include "mcmdeg/errors.hpp"
#include "mcmdeg/truncation.hpp"

namespace mcmdeg {

using nlohmann::json;

std::string AtomicFact::kind() const {
  switch (certificate.index()) {
    case 0:
      return "family";
    case 1:
      return "free-cover";
    default:
      return "ses";
  }
}

json AtomicFact::to_json() const {
  return {{"id", id},
          {"kind", kind()},
          {"source", source.to_string()},
          {"target", target.to_string()},
          {"provenance", provenance},
          {"truncated", truncated}};
}

bool VerificationReport::pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::string VerificationReport::verdict() const {
  if (!pass()) return "fail";
  return truncated ? "pass (truncated)" : "pass";
}

json VerificationReport::to_json() const {
  json cs = json::array();
  for (const auto& c : checks) cs.push_back({{"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"fact", fact_id}, {"kind", kind}, {"checks", cs}, {"verdict", verdict()}};
}

namespace {

std::string with_param(const std::string& name, std::optional<long> n) {
  return n ? name + "[n=" + std::to_string(*n) + "]" : name;
}

}  // namespace

AtomicFact family_fact(const FamilySpec& spec, const Catalog& cat) {
  AtomicFact f;
  f.id = with_param(spec.name, spec.n);
  f.source = cat.resolve(spec.source);
  f.target = cat.resolve(spec.target);
  f.certificate = FamilyCertificate{spec};
  f.provenance = spec.provenance;
  return f;
}

AtomicFact free_cover_fact(const Catalog& cat, const ClassKey& module) {
  const MCMClass& c = cat.get(module);
  if (c.free) throw VerificationFailure("free cover of a free module");
  if (c.alias) throw VerificationFailure(module.to_string() + " is decomposable; use its identification");
  if (!c.syzygy) throw VerificationFailure("no syzygy recorded for " + module.to_string());
  if (has_unit_entry(*c.mf))
    throw VerificationFailure(module.to_string() + " has a unit entry; swap would not compute its syzygy");
  AtomicFact f;
  f.id = "free-cover " + module.to_string();
  f.source = ModuleVector::of(cat.free_class(), static_cast<long>(c.mf->size()));
  f.target = ModuleVector::of(module) + ModuleVector::of(*c.syzygy);
  f.certificate = FreeCoverCertificate{module};
  f.provenance = "0 -> syzygy -> free cover -> " + module.to_string() + " -> 0";
  return f;
}

AtomicFact ses_fact(const SesSpec& spec, const Catalog& cat) {
  AtomicFact f;
  f.id = "ses " + with_param(spec.name, spec.n);
  f.source = cat.resolve(spec.middle);
  f.target = cat.resolve(spec.left + spec.right);
  f.certificate = SesCertificate{spec};
  f.provenance = spec.provenance;
  f.truncated = true;
  return f;
}

namespace {

void check_balance(const AtomicFact& fact, const Catalog& cat, VerificationReport& r) {
  long es = cat.total_e(fact.source), et = cat.total_e(fact.target);
  r.checks.push_back({"multiplicity", es == et, std::to_string(es) + " = " + std::to_string(et)});
  r.checks.push_back({"zero_module", fact.source.empty() == fact.target.empty(), ""});
}

void check_identification(const ClassKey& k, const Catalog& cat, VerificationReport& r) {
  const IdentificationRule* rule = cat.identification_for(k);
  if (!rule) return;
  bool ok = verify_equivalence(cat.get(k).mf->phi, cat.block_mf(rule->blocks).phi, rule->witness, cat.ring, true);
  r.checks.push_back({"identification " + k.to_string(), ok, k.to_string() + " = " + rule->rhs.to_string()});
}

void verify_family(const FamilySpec& spec, const Catalog& cat, VerificationReport& r) {
  const MatrixFactorization& fam = spec.family;
  bool same_f = fam.ring.f() == cat.ring.f().rebase(fam.ring.variables());
  r.checks.push_back({"family_ring", same_f, fam.ring.f().to_string()});
  r.checks.push_back({"family_mf", verify_mf(fam), "over " + fam.ring.label()});

  bool known = cat.contains(spec.source) && cat.contains(spec.target);
  r.checks.push_back({"catalog", known, spec.source.to_string() + " -> " + spec.target.to_string()});
  if (!known) return;
  const MCMClass& src = cat.get(spec.source);
  const MCMClass& tgt = cat.get(spec.target);
  if (!src.mf || !tgt.mf) {
    r.checks.push_back({"catalog", false, "family ends must be nonfree"});
    return;
  }

  MFMorphism m{fam, *src.mf, spec.alpha, spec.beta};
  bool morphism = false;
  try {
    morphism = verify_morphism(m);
  } catch (const DimensionMismatch& e) {
    r.checks.push_back({"morphism", false, e.what()});
    return;
  }
  r.checks.push_back({"morphism", morphism, "to " + spec.source.to_string()});
  r.checks.push_back({"generic_isomorphism", unit_after_inverting_t(m, spec.t_name), "det(alpha), det(beta) at m = 0"});

  std::vector<std::string> t{spec.t_name};
  PolyMatrix phi0 = fam.phi.zero_out(t).rebase(cat.ring.variables()).reduce(cat.ring.f());
  PolyMatrix psi0 = fam.psi.zero_out(t).rebase(cat.ring.variables()).reduce(cat.ring.f());
  bool literal = phi0 == tgt.mf->phi.reduce(cat.ring.f()) && psi0 == tgt.mf->psi.reduce(cat.ring.f());
  if (literal) {
    r.checks.push_back({"special_fiber", true, "literal"});
  } else if (spec.t0_witness && phi0.rows() == tgt.mf->size()) {
    bool ok = verify_equivalence(phi0, tgt.mf->phi, *spec.t0_witness, cat.ring);
    r.checks.push_back({"special_fiber", ok, "witness"});
  } else {
    r.checks.push_back({"special_fiber", false, "t = 0 fiber differs from " + spec.target.to_string()});
  }

  check_identification(spec.source, cat, r);
  check_identification(spec.target, cat, r);
}

void verify_free_cover(const ClassKey& k, const Catalog& cat, VerificationReport& r) {
  if (!cat.contains(k)) {
    r.checks.push_back({"catalog", false, k.to_string()});
    return;
  }
  const MCMClass& c = cat.get(k);
  if (c.free || !c.mf || !c.syzygy || !cat.contains(*c.syzygy)) {
    r.checks.push_back({"catalog", false, "needs a nonfree class with a catalogued syzygy"});
    return;
  }
  r.checks.push_back({"mf", verify_mf(*c.mf), ""});
  r.checks.push_back({"no_unit_entry", !has_unit_entry(*c.mf), ""});
  bool ok = verify_equivalence(c.mf->psi, cat.get(*c.syzygy).mf->phi, c.syzygy_witness, cat.ring, true);
  r.checks.push_back({"syzygy_witness", ok, "swap -> " + c.syzygy->to_string()});
}

void verify_ses(const SesSpec& s, const Catalog& cat, VerificationReport& r) {
  ExactnessReport ex = verify_exact_truncated(s.phi_left, s.phi_middle, s.phi_right, s.map_a, s.map_b, cat.ring, s.levels);
  std::string detail = "levels";
  for (auto l : s.levels) detail += " " + std::to_string(l);
  if (auto bad = ex.first_failure()) detail += "; first failure at " + std::to_string(*bad);
  r.checks.push_back({"exact_truncated", ex.pass(), detail});
  // the presentations must describe the catalog classes named by the sequence
  auto e_of = [&](const PolyMatrix& p) { return multiplicity_oracle(p, cat.ring).e; };
  r.checks.push_back({"left_e", e_of(s.phi_left) == cat.total_e(s.left), s.left.to_string()});
  r.checks.push_back({"middle_e", e_of(s.phi_middle) == cat.total_e(s.middle), s.middle.to_string()});
  r.checks.push_back({"right_e", e_of(s.phi_right) == cat.total_e(s.right), s.right.to_string()});
}

}  // namespace

VerificationReport verify_certificate(const AtomicFact& fact, const Catalog& cat) {
  VerificationReport r;
  r.fact_id = fact.id;
  r.kind = fact.kind();
  r.truncated = fact.truncated;
  try {
    if (const auto* f = std::get_if<FamilyCertificate>(&fact.certificate)) {
      verify_family(f->spec, cat, r);
    } else if (const auto* c = std::get_if<FreeCoverCertificate>(&fact.certificate)) {
      verify_free_cover(c->module, cat, r);
    } else {
      verify_ses(std::get<SesCertificate>(fact.certificate).spec, cat, r);
    }
    check_balance(fact, cat, r);
  } catch (const Error& e) {
    r.checks.push_back({"exception", false, e.what()});
  }
  if (fact.provenance.empty()) r.checks.push_back({"provenance", false, "missing"});
  return r;
}

AtomicFact lift_certificate(const AtomicFact& fact, const Catalog& base, const Catalog& lifted) {
  const auto* f = std::get_if<FamilyCertificate>(&fact.certificate);
  if (!f) throw Error("only family certificates lift through the matrix construction");
  return family_fact(lift_family(f->spec, base, lifted), lifted);
}

bool FactStore::admit(AtomicFact fact, VerificationReport report) {
  bool ok = report.pass() && report.fact_id == fact.id;
  reports_.push_back(std::move(report));
  if (ok) facts_.push_back(std::move(fact));
  return ok;
}

std::vector<VerificationReport> FactStore::rejected() const {
  std::vector<VerificationReport> out;
  for (const auto& r : reports_)
    if (!r.pass()) out.push_back(r);
  return out;
}

FactStore build_fact_store(const Catalog& cat, const FactOptions& options) {
  FactStore store;
  for (const auto& spec : cat.families) {
    AtomicFact f = family_fact(spec, cat);
    VerificationReport r = verify_certificate(f, cat);
    store.admit(std::move(f), std::move(r));
  }
  for (const auto& c : cat.classes) {
    if (c.free || c.alias) continue;
    try {
      AtomicFact f = free_cover_fact(cat, c.key);
      VerificationReport r = verify_certificate(f, cat);
      store.admit(std::move(f), std::move(r));
    } catch (const VerificationFailure& e) {
      VerificationReport r;
      r.fact_id = "free-cover " + c.key.to_string();
      r.kind = "free-cover";
      r.checks.push_back({"flagged", false, e.what()});
      store.admit(AtomicFact{}, std::move(r));
    }
  }
  if (options.include_ses) {
    for (const auto& s : cat.ses) {
      AtomicFact f = ses_fact(s, cat);
      VerificationReport r = verify_certificate(f, cat);
      store.admit(std::move(f), std::move(r));
    }
  }
  return store;
}

}  // namespace mcmdeg
