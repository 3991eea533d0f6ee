#include "mcmdeg/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>

#include "mcmdeg/errors.hpp"
#include "mcmdeg/parse.hpp"
#include "mcmdeg/truncation.hpp"

#ifndef MCMDEG_DATA_DIR
#define MCMDEG_DATA_DIR "data"
#endif

namespace mcmdeg {

using nlohmann::json;

PolyMatrix MCMClass::presentation(const HypersurfaceRing& ring) const {
  if (free) return free_presentation(ring, 1);
  return mf->phi;
}

// ---------------------------------------------------------------------------------------------
// Catalog queries

void Catalog::index() {
  std::sort(classes.begin(), classes.end(), [](const MCMClass& a, const MCMClass& b) { return a.key < b.key; });
  by_key_.clear();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!by_key_.emplace(classes[i].key, i).second)
      throw Error("duplicate class " + classes[i].key.to_string() + " in catalog " + ring.label());
  }
}

bool Catalog::contains(const ClassKey& key) const { return by_key_.count(key) != 0; }

const MCMClass& Catalog::get(const ClassKey& key) const {
  auto it = by_key_.find(key);
  if (it == by_key_.end()) throw Error("class " + key.to_string() + " not in catalog " + ring.label());
  return classes[it->second];
}

const ClassKey& Catalog::free_class() const {
  for (const auto& c : classes)
    if (c.free) return c.key;
  throw Error("catalog " + ring.label() + " has no free class");
}

std::vector<ClassKey> Catalog::universe_classes() const {
  std::vector<ClassKey> out;
  for (const auto& c : classes)
    if (!c.alias) out.push_back(c.key);
  return out;
}

const IdentificationRule* Catalog::identification_for(const ClassKey& key) const {
  for (const auto& r : identifications)
    if (r.lhs == key) return &r;
  return nullptr;
}

ModuleVector Catalog::resolve(const ClassKey& key) const {
  if (const auto* r = identification_for(key)) return r->rhs;
  get(key);
  return ModuleVector::of(key);
}

ModuleVector Catalog::resolve(const ModuleVector& v) const {
  ModuleVector out;
  for (const auto& [k, c] : v.counts()) out += resolve(k).scaled(c);
  return out;
}

long Catalog::total_e(const ModuleVector& v) const {
  long e = 0;
  for (const auto& [k, c] : v.counts()) e += c * get(k).e;
  return e;
}

std::vector<ModuleVector> Catalog::generators(long d) const {
  std::vector<ModuleVector> out;
  if (d < 0) return out;
  if (d == 0) return {ModuleVector()};
  const auto& rule = generators_rule;
  switch (rule.kind) {
    case GeneratorRule::Kind::Linear: {
      std::vector<ModuleVector> acc;
      ModuleVector cur;
      std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (left == 0) {
          acc.push_back(cur);
          return;
        }
        if (i == rule.classes.size()) return;
        long e = get(rule.classes[i]).e;
        ModuleVector saved = cur;
        for (long k = 0; k * e <= left; ++k) {
          rec(i + 1, left - k * e);
          cur.add(rule.classes[i]);
        }
        cur = saved;
      };
      rec(0, d);
      std::sort(acc.begin(), acc.end());
      return acc;
    }
    case GeneratorRule::Kind::HalfFree: {
      const ClassKey& r = free_class();
      long er = get(r).e;
      if (d % er == 0) return {ModuleVector::of(r, d / er)};
      if (rule.odd) {
        long eo = get(*rule.odd).e;
        if (d >= eo && (d - eo) % er == 0) {
          ModuleVector v = ModuleVector::of(*rule.odd);
          if (d > eo) v.add(r, (d - eo) / er);
          return {v};
        }
      }
      return {};
    }
    case GeneratorRule::Kind::Explicit: {
      auto it = rule.by_degree.find(d);
      if (it == rule.by_degree.end())
        throw Error("catalog " + ring.label() + " lists generators only for d in its explicit table");
      return it->second;
    }
  }
  return out;
}

MatrixFactorization Catalog::block_mf(const std::vector<Block>& blocks) const {
  std::optional<MatrixFactorization> acc;
  const Variables& vars = ring.variables();
  for (const auto& b : blocks) {
    MatrixFactorization m;
    switch (b.kind) {
      case Block::Kind::Unit:
        m = make_mf(ring, PolyMatrix::scalar(vars, 1, ring.constant(1)), PolyMatrix::scalar(vars, 1, ring.f()));
        break;
      case Block::Kind::Free:
        m = make_mf(ring, PolyMatrix::scalar(vars, 1, ring.f()), PolyMatrix::scalar(vars, 1, ring.constant(1)));
        break;
      case Block::Kind::Class:
        m = *get(b.cls).mf;
        break;
    }
    acc = acc ? direct_sum(*acc, m) : m;
  }
  if (!acc) throw Error("identification with no blocks");
  return *acc;
}

// ---------------------------------------------------------------------------------------------
// Loading

std::filesystem::path default_catalog_dir() {
  if (const char* env = std::getenv("MCMDEG_CATALOG_DIR")) return env;
  return std::filesystem::path(MCMDEG_DATA_DIR) / "catalogs";
}

std::vector<std::string> supported_rings() { return {"Ainf-1", "Ainf-3", "Dinf-1", "Dinf-2", "Dinf-3", "cone", "cusp"}; }

namespace {

struct ParamRange {
  long min = 0;
  std::vector<long> aliases;
};

std::optional<ParamRange> read_params(const json& j) {
  if (!j.contains("params")) return std::nullopt;
  ParamRange r;
  r.min = j["params"].value("min", 0L);
  if (j["params"].contains("aliases")) r.aliases = j["params"]["aliases"].get<std::vector<long>>();
  return r;
}

ParamBindings bind(std::optional<long> n) {
  ParamBindings b;
  if (n) b["n"] = *n;
  return b;
}

PolyMatrix read_matrix(const json& j, const Variables& vars, const ParamBindings& params) {
  if (j.is_string()) return parse_matrix(j.get<std::string>(), vars, params);
  // nested arrays of entry strings
  std::string text = "[";
  for (std::size_t i = 0; i < j.size(); ++i) {
    text += i ? ", [" : "[";
    for (std::size_t k = 0; k < j[i].size(); ++k) text += (k ? ", " : "") + j[i][k].get<std::string>();
    text += "]";
  }
  return parse_matrix(text + "]", vars, params);
}

EquivalenceWitness read_witness(const json& j, const Variables& vars, const ParamBindings& params) {
  return {read_matrix(j.at("P"), vars, params), read_matrix(j.at("Q"), vars, params)};
}

EquivalenceWitness identity_witness(const Variables& vars, std::size_t n) {
  return {PolyMatrix::identity(vars, n), PolyMatrix::identity(vars, n)};
}

PolyMatrix read_presentation(const json& j, const HypersurfaceRing& ring, const ParamBindings& params) {
  const std::string text = j.get<std::string>();
  if (text.rfind("free:", 0) == 0) return free_presentation(ring, static_cast<std::size_t>(std::stol(text.substr(5))));
  return parse_matrix(text, ring.variables(), params);
}

MCMClass read_class(const json& j, const HypersurfaceRing& ring, std::optional<long> n) {
  ParamBindings params = bind(n);
  MCMClass c;
  c.key = ClassKey{j.at("family").get<std::string>(), n};
  c.free = j.value("free", false);
  c.e = j.at("e").get<long>();
  c.provenance = j.at("provenance").get<std::string>();
  if (j.contains("ideal")) {
    for (const auto& g : j["ideal"]) {
      // keep the generator text with the parameter substituted
      c.ideal.push_back(parse_polynomial(g.get<std::string>(), ring.variables(), params).to_string());
    }
  }
  if (c.free) return c;
  PolyMatrix phi = read_matrix(j.at("phi"), ring.variables(), params);
  if (j.contains("psi")) {
    c.mf = make_mf(ring, phi, read_matrix(j["psi"], ring.variables(), params));
  } else {
    c.mf = complete_factorization(phi, ring);
  }
  if (j.contains("syzygy")) c.syzygy = ClassKey::parse(j["syzygy"].get<std::string>(), params);
  c.syzygy_witness = j.contains("syzygy_witness") ? read_witness(j["syzygy_witness"], ring.variables(), params)
                                                  : identity_witness(ring.variables(), c.mf->size());
  return c;
}

Block read_block(const std::string& text) {
  if (text == "unit") return {Block::Kind::Unit, {}};
  if (text == "free") return {Block::Kind::Free, {}};
  return {Block::Kind::Class, ClassKey::parse(text)};
}

ModuleVector blocks_rhs(const Catalog& cat, const std::vector<Block>& blocks) {
  ModuleVector v;
  for (const auto& b : blocks) {
    if (b.kind == Block::Kind::Free) v.add(cat.free_class());
    if (b.kind == Block::Kind::Class) v.add(b.cls);
  }
  return v;
}

HypersurfaceRing family_ring(const HypersurfaceRing& ring, const std::string& t) {
  Variables vars = ring.variables().extended({t});
  return HypersurfaceRing(ring.label() + "[" + t + "]", vars, ring.f().rebase(vars));
}

}  // namespace

Catalog parse_catalog(const json& doc, long n_max) {
  const auto& rj = doc.at("ring");
  Catalog cat;
  cat.ring = HypersurfaceRing::parse(rj.at("label").get<std::string>(), rj.at("variables").get<std::vector<std::string>>(),
                                     rj.at("f").get<std::string>());
  cat.n_max = n_max;
  cat.description = doc.value("description", "");

  for (const auto& cj : doc.at("classes")) {
    auto range = read_params(cj);
    if (!range) {
      cat.classes.push_back(read_class(cj, cat.ring, std::nullopt));
      continue;
    }
    for (long a : range->aliases) {
      MCMClass c = read_class(cj, cat.ring, a);
      c.alias = true;
      c.syzygy.reset();
      cat.classes.push_back(std::move(c));
    }
    for (long n = range->min; n <= n_max; ++n) cat.classes.push_back(read_class(cj, cat.ring, n));
  }
  cat.index();

  if (doc.contains("identifications")) {
    for (const auto& ij : doc["identifications"]) {
      IdentificationRule r;
      r.lhs = ClassKey::parse(ij.at("lhs").get<std::string>());
      if (!cat.contains(r.lhs)) continue;
      for (const auto& b : ij.at("blocks")) r.blocks.push_back(read_block(b.get<std::string>()));
      r.rhs = blocks_rhs(cat, r.blocks);
      r.witness = read_witness(ij.at("witness"), cat.ring.variables(), {});
      r.provenance = ij.at("provenance").get<std::string>();
      cat.identifications.push_back(std::move(r));
    }
  }
  for (const auto& c : cat.classes)
    if (c.alias && !cat.identification_for(c.key))
      throw Error("alias class " + c.key.to_string() + " has no identification rule");

  if (doc.contains("families")) {
    for (const auto& fj : doc["families"]) {
      auto range = read_params(fj);
      long lo = range ? range->min : 0;
      std::string t = fj.value("t", "t");
      HypersurfaceRing fr = family_ring(cat.ring, t);
      for (long n = lo;; ++n) {
        ParamBindings params = bind(n);
        ClassKey source = ClassKey::parse(fj.at("source").get<std::string>(), params);
        ClassKey target = ClassKey::parse(fj.at("target").get<std::string>(), params);
        if (!cat.contains(source) || !cat.contains(target)) break;
        FamilySpec spec;
        spec.name = fj.at("name").get<std::string>();
        spec.n = n;
        spec.source = source;
        spec.target = target;
        spec.t_name = t;
        spec.family = make_mf(fr, read_matrix(fj.at("phi"), fr.variables(), params),
                              read_matrix(fj.at("psi"), fr.variables(), params));
        spec.alpha = read_matrix(fj.at("alpha"), fr.variables(), params);
        spec.beta = read_matrix(fj.at("beta"), fr.variables(), params);
        if (fj.contains("t0_witness")) spec.t0_witness = read_witness(fj["t0_witness"], cat.ring.variables(), params);
        spec.provenance = fj.at("provenance").get<std::string>();
        cat.families.push_back(std::move(spec));
      }
    }
  }

  if (doc.contains("ses")) {
    for (const auto& sj : doc["ses"]) {
      auto range = read_params(sj);
      std::vector<std::optional<long>> ns;
      if (range) {
        for (long n = range->min; n <= n_max; ++n) ns.push_back(n);
      } else {
        ns.push_back(std::nullopt);
      }
      for (auto n : ns) {
        ParamBindings params = bind(n);
        SesSpec s;
        s.name = sj.at("name").get<std::string>();
        s.n = n;
        s.middle = ModuleVector::parse(sj.at("middle").get<std::string>(), params);
        s.left = ModuleVector::parse(sj.at("left").get<std::string>(), params);
        s.right = ModuleVector::parse(sj.at("right").get<std::string>(), params);
        s.phi_left = read_presentation(sj.at("phi_left"), cat.ring, params);
        s.phi_middle = read_presentation(sj.at("phi_middle"), cat.ring, params);
        s.phi_right = read_presentation(sj.at("phi_right"), cat.ring, params);
        s.map_a = read_matrix(sj.at("map_a"), cat.ring.variables(), params);
        s.map_b = read_matrix(sj.at("map_b"), cat.ring.variables(), params);
        s.levels = sj.at("levels").get<std::vector<unsigned>>();
        s.provenance = sj.at("provenance").get<std::string>();
        cat.ses.push_back(std::move(s));
      }
    }
  }

  const auto& gj = doc.at("generators");
  auto& g = cat.generators_rule;
  g.provenance = gj.at("provenance").get<std::string>();
  const std::string kind = gj.at("kind").get<std::string>();
  if (kind == "linear") {
    g.kind = GeneratorRule::Kind::Linear;
    for (const auto& c : gj.at("classes")) g.classes.push_back(ClassKey::parse(c.get<std::string>()));
  } else if (kind == "half_free") {
    g.kind = GeneratorRule::Kind::HalfFree;
    if (gj.contains("odd")) g.odd = ClassKey::parse(gj["odd"].get<std::string>());
  } else if (kind == "explicit") {
    g.kind = GeneratorRule::Kind::Explicit;
    for (const auto& [d, list] : gj.at("by_degree").items())
      for (const auto& v : list) g.by_degree[std::stol(d)].push_back(ModuleVector::parse(v.get<std::string>()));
  } else {
    throw Error("unknown generator rule kind " + kind);
  }
  return cat;
}

namespace {

std::string lifted_label(const std::string& label) {
  if (label == "Dinf-1") return "Dinf-3";
  if (label == "Ainf-1") return "Ainf-3";
  return label + "##";
}

}  // namespace

Catalog load_catalog(const std::string& label, long n_max, const std::filesystem::path& dir) {
  if (n_max < 1) throw Error("N_max must be positive");
  if (label == "Dinf-3") return lift_catalog(load_catalog("Dinf-1", n_max, dir), 1);
  if (label == "Ainf-3") return lift_catalog(load_catalog("Ainf-1", n_max, dir), 1);
  std::filesystem::path file = dir / (label + ".json");
  if (!std::filesystem::exists(file)) throw UnsupportedRing("no catalog for ring " + label + " in " + dir.string());
  std::ifstream in(file);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("catalog " + file.string() + ": " + e.what());
  }
  return parse_catalog(doc, n_max);
}

// ---------------------------------------------------------------------------------------------
// Knorrer lifting

ClassKey lift_key(const ClassKey& k) { return {k.family + "##", k.param}; }

FamilySpec lift_family(const FamilySpec& f, const Catalog& base, const Catalog& lifted) {
  FamilySpec l;
  l.name = f.name + "##";
  l.n = f.n;
  l.source = lift_key(f.source);
  l.target = lift_key(f.target);
  l.t_name = f.t_name;
  MFMorphism m = knorrer(MFMorphism{f.family, *base.get(f.source).mf, f.alpha, f.beta});
  l.family = m.source;
  l.alpha = m.alpha;
  l.beta = m.beta;
  if (f.t0_witness) l.t0_witness = knorrer(*f.t0_witness, lifted.ring.variables());
  l.provenance = "lift of " + f.provenance;
  return l;
}

namespace {

PolyMatrix sign_block(const Variables& vars, std::size_t n) {
  PolyMatrix d = PolyMatrix::identity(vars, 2 * n);
  for (std::size_t i = n; i < 2 * n; ++i) d(i, i) = -d(i, i);
  return d;
}

// Permutation matrix Pi with Pi * knorrer(diag(blocks)).phi * Pi^T = diag(knorrer(block_i).phi).
PolyMatrix block_interleave(const Variables& vars, const std::vector<std::size_t>& sizes) {
  std::size_t n = 0;
  for (auto s : sizes) n += s;
  std::vector<std::size_t> order;  // new position -> old position
  std::size_t offset = 0;
  for (auto s : sizes) {
    for (std::size_t i = 0; i < s; ++i) order.push_back(offset + i);
    for (std::size_t i = 0; i < s; ++i) order.push_back(n + offset + i);
    offset += s;
  }
  PolyMatrix p(vars, 2 * n, 2 * n);
  for (std::size_t r = 0; r < order.size(); ++r) p(r, order[r]) = Polynomial::constant(vars, 1);
  return p;
}

EquivalenceWitness compose_witness(const EquivalenceWitness& first, const EquivalenceWitness& second) {
  return {second.p * first.p, second.q * first.q};
}

}  // namespace

Catalog lift_catalog(const Catalog& base, int times) {
  if (times < 1) throw Error("lift_catalog needs times >= 1");
  if (times > 1) return lift_catalog(lift_catalog(base, 1), times - 1);

  Catalog out;
  HypersurfaceRing kr = knorrer_ring(base.ring);
  out.ring = HypersurfaceRing(lifted_label(base.ring.label()), kr.variables(), kr.f());
  out.n_max = base.n_max;
  out.description = "Knorrer lift of " + base.ring.label() + ": " + out.ring.f().to_string();
  out.lift_depth = base.lift_depth + 1;
  const Variables& vars = out.ring.variables();
  auto on_ring = [&](MatrixFactorization m) {
    m.ring = out.ring;
    return m;
  };

  for (const auto& c : base.classes) {
    MCMClass l;
    l.key = lift_key(c.key);
    l.free = c.free;
    l.alias = c.alias;
    l.provenance = "lift of " + c.key.to_string() + ": " + c.provenance;
    if (!c.free) {
      l.mf = on_ring(knorrer(*c.mf));
      if (c.syzygy) {
        l.syzygy = lift_key(*c.syzygy);
        // swap(K(c)).phi = Psi##, and D Psi## D = K(swap(c)).phi.
        EquivalenceWitness w = knorrer(c.syzygy_witness, vars);
        PolyMatrix d = sign_block(vars, c.mf->size());
        l.syzygy_witness = {w.p * d, w.q * d};
      }
    }
    out.classes.push_back(std::move(l));
  }
  out.index();

  // multiplicities of the lifted ring come from the oracle
  for (auto& c : out.classes) {
    if (c.alias) continue;
    c.e = multiplicity_oracle(c.presentation(out.ring), out.ring).e;
  }

  for (const auto& r : base.identifications) {
    IdentificationRule l;
    l.lhs = lift_key(r.lhs);
    l.provenance = "lift of " + r.provenance;
    std::vector<std::size_t> sizes;
    std::vector<EquivalenceWitness> pieces;
    for (const auto& b : r.blocks) {
      const Polynomial one = Polynomial::constant(vars, 1);
      const Polynomial zero(vars);
      auto [un, vn] = knorrer_names(base.ring.variables());
      Polynomial u = Polynomial::variable(vars, un), v = Polynomial::variable(vars, vn);
      Polynomial a = u + GaussianRational::imag_unit() * v;
      Polynomial bb = -u + GaussianRational::imag_unit() * v;
      switch (b.kind) {
        case Block::Kind::Unit:  // [[1, a], [b, f]] ~ diag(1, F)
          sizes.push_back(1);
          l.blocks.push_back({Block::Kind::Unit, {}});
          l.blocks.push_back({Block::Kind::Free, {}});
          pieces.push_back({PolyMatrix::from_rows(vars, {{one, zero}, {-bb, one}}),
                            PolyMatrix::from_rows(vars, {{one, a}, {zero, one}})});
          break;
        case Block::Kind::Free:  // [[f, a], [b, 1]] ~ diag(F, 1)
          sizes.push_back(1);
          l.blocks.push_back({Block::Kind::Free, {}});
          l.blocks.push_back({Block::Kind::Unit, {}});
          pieces.push_back({PolyMatrix::from_rows(vars, {{one, -a}, {zero, one}}),
                            PolyMatrix::from_rows(vars, {{one, zero}, {bb, one}})});
          break;
        case Block::Kind::Class: {
          std::size_t s = base.get(b.cls).mf->size();
          sizes.push_back(s);
          l.blocks.push_back({Block::Kind::Class, lift_key(b.cls)});
          pieces.push_back(identity_witness(vars, 2 * s));
          break;
        }
      }
    }
    PolyMatrix pi = block_interleave(vars, sizes);
    EquivalenceWitness diag_w = pieces.front();
    for (std::size_t i = 1; i < pieces.size(); ++i)
      diag_w = {PolyMatrix::block_diag(diag_w.p, pieces[i].p), PolyMatrix::block_diag(diag_w.q, pieces[i].q)};
    l.witness = compose_witness(compose_witness(knorrer(r.witness, vars), {pi, pi}), diag_w);
    l.rhs = blocks_rhs(out, l.blocks);
    out.identifications.push_back(std::move(l));
  }
  for (auto& c : out.classes)
    if (c.alias) c.e = out.total_e(out.identification_for(c.key)->rhs);

  for (const auto& f : base.families) out.families.push_back(lift_family(f, base, out));
  // short exact sequences do not lift through the matrix construction; they are left behind.

  out.generators_rule.kind = base.generators_rule.kind;
  out.generators_rule.provenance = "lift of " + base.generators_rule.provenance;
  for (const auto& k : base.generators_rule.classes) out.generators_rule.classes.push_back(lift_key(k));
  if (base.generators_rule.odd) out.generators_rule.odd = lift_key(*base.generators_rule.odd);
  for (const auto& [d, list] : base.generators_rule.by_degree) {
    for (const auto& v : list) {
      ModuleVector lv;
      for (const auto& [k, c] : v.counts()) lv.add(lift_key(k), c);
      out.generators_rule.by_degree[d].push_back(lv);
    }
  }
  return out;
}

std::vector<IdealPresentation> ideal_presentations(const Catalog& cat) {
  std::vector<IdealPresentation> out;
  for (const auto& c : cat.classes)
    if (!c.alias && !c.free && !c.ideal.empty()) out.push_back({c.key, c.ideal, *c.mf});
  return out;
}

// ---------------------------------------------------------------------------------------------
// Verification

std::vector<CatalogCheck> verify_catalog(const Catalog& cat, bool with_oracle) {
  std::vector<CatalogCheck> out;
  auto record = [&](const std::string& subject, const std::string& check, bool pass, std::string detail = {}) {
    out.push_back({subject, check, pass, std::move(detail)});
  };
  for (const auto& c : cat.classes) {
    const std::string name = c.key.to_string();
    if (c.free) {
      record(name, "free", true);
    } else {
      record(name, "verify_mf", verify_mf(*c.mf));
      if (c.syzygy) {
        bool known = cat.contains(*c.syzygy);
        bool ok = known && !has_unit_entry(*c.mf) &&
                  verify_equivalence(c.mf->psi, cat.get(*c.syzygy).mf->phi, c.syzygy_witness, cat.ring, true);
        record(name, "syzygy", ok, c.syzygy->to_string());
      } else if (!c.alias) {
        record(name, "syzygy", false, "missing");
      }
    }
    if (with_oracle && !c.alias) {
      try {
        long e = multiplicity_oracle(c.presentation(cat.ring), cat.ring).e;
        record(name, "multiplicity", e == c.e, "stored " + std::to_string(c.e) + ", oracle " + std::to_string(e));
      } catch (const NoStabilization& ex) {
        record(name, "multiplicity", false, ex.what());
      }
    }
  }
  for (const auto& r : cat.identifications) {
    const std::string name = r.lhs.to_string() + " = " + r.rhs.to_string();
    MatrixFactorization rhs = cat.block_mf(r.blocks);
    record(name, "witness", verify_equivalence(cat.get(r.lhs).mf->phi, rhs.phi, r.witness, cat.ring, true));
    record(name, "block_mf", verify_mf(rhs));
    record(name, "multiplicity", cat.get(r.lhs).e == cat.total_e(r.rhs));
  }
  return out;
}

}  // namespace mcmdeg
