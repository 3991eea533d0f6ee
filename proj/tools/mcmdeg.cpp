// mcmdeg: verification, enumeration, closures and component reports for the shipped catalogs.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "mcmdeg/errors.hpp"
#include "mcmdeg/order.hpp"
#include "mcmdeg/parse.hpp"
#include "mcmdeg/truncation.hpp"

using namespace mcmdeg;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::string ring;
  long d = -1;
  long N_max = kDefaultNMax;
  long n_max = 6;
  unsigned s_max = 0;  // 0: ring default
  std::string mode;    // empty: ring default
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  std::string catalog_dir;
  std::string generator;
  std::string rule = "formula";
  std::string matrix_file;
  std::string matrix;
  std::string cls;
  bool no_oracle = false;
  bool ses = false;
  std::size_t frontier_cap = 1000000;
  std::size_t samples = 200;
  std::size_t exhaustive_limit = 20;
};

struct UsageError : Error {
  using Error::Error;
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw Error("cannot write " + cfg.out);
  f << text;
}

void emit(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2) + "\n"); }

Catalog catalog(const RunConfig& cfg) {
  if (cfg.ring.empty()) throw UsageError("--ring is required");
  if (cfg.N_max < 1) throw UsageError("--Nmax must be positive");
  if (cfg.catalog_dir.empty()) return load_catalog(cfg.ring, cfg.N_max);
  return load_catalog(cfg.ring, cfg.N_max, cfg.catalog_dir);
}

EngineBounds bounds(const RunConfig& cfg) {
  if (cfg.n_max < 1) throw UsageError("--nmax must be positive");
  return {cfg.n_max, cfg.frontier_cap};
}

long require_d(const RunConfig& cfg) {
  if (cfg.d < 0) throw UsageError("--d is required");
  return cfg.d;
}

int cmd_verify(const RunConfig& cfg) {
  Catalog cat = catalog(cfg);
  bool ok = true;
  json checks = json::array();
  for (const auto& c : verify_catalog(cat, !cfg.no_oracle)) {
    ok = ok && c.pass;
    checks.push_back({{"subject", c.subject}, {"check", c.check}, {"pass", c.pass}, {"detail", c.detail}});
  }
  FactStore store = build_fact_store(cat, FactOptions{cfg.ses});
  json facts = json::array();
  for (const auto& r : store.reports()) {
    ok = ok && r.pass();
    facts.push_back(r.to_json());
  }
  emit(cfg, json{{"ring", cat.ring.label()},
                 {"f", cat.ring.f().to_string()},
                 {"N_max", cat.n_max},
                 {"oracle", !cfg.no_oracle},
                 {"catalog_checks", checks},
                 {"facts", facts},
                 {"admitted", store.facts().size()},
                 {"pass", ok}});
  std::cerr << cat.ring.label() << ": " << checks.size() << " catalog checks, " << facts.size() << " facts, "
            << (ok ? "all pass" : "FAILURES") << "\n";
  return ok ? kPass : kFail;
}

int cmd_enumerate(const RunConfig& cfg) {
  Catalog cat = catalog(cfg);
  OrderEngine engine(cat, {}, bounds(cfg));
  long d = require_d(cfg);
  json e = json::array();
  for (const auto& v : engine.enumerate_E(d)) e.push_back(v.to_string());
  emit(cfg, json{{"ring", cat.ring.label()}, {"d", d}, {"N_max", cat.n_max}, {"size", e.size()}, {"E", e}});
  return kPass;
}

ModuleVector parse_generator(const RunConfig& cfg, const Catalog& cat) {
  if (cfg.generator.empty()) throw UsageError("--generator is required");
  ModuleVector g;
  try {
    g = cat.resolve(ModuleVector::parse(cfg.generator));
  } catch (const Error& e) {
    throw UsageError(std::string("bad generator: ") + e.what());
  }
  if (cfg.d >= 0 && cat.total_e(g) != cfg.d)
    throw UsageError("generator has multiplicity " + std::to_string(cat.total_e(g)) + ", not " + std::to_string(cfg.d));
  return g;
}

int cmd_closure(const RunConfig& cfg) {
  Catalog cat = catalog(cfg);
  OrderEngine engine = make_engine(cat, bounds(cfg));
  ModuleVector g = parse_generator(cfg, cat);
  emit(cfg, to_json(engine.closure(g), engine));
  return kPass;
}

int cmd_components(const RunConfig& cfg) {
  Catalog cat = catalog(cfg);
  OrderEngine engine = make_engine(cat, bounds(cfg));
  DecompositionReport r = engine.decompose_E(require_d(cfg), cfg.rule);
  emit(cfg, to_json(r, engine));
  std::cerr << cat.ring.label() << " E(" << r.d << "): " << r.entries.size() << " members, " << r.unresolved.size()
            << " " << kUnresolvedLabel << "\n";
  return kPass;
}

int cmd_axioms(const RunConfig& cfg) {
  Catalog cat = catalog(cfg);
  OrderEngine engine = make_engine(cat, bounds(cfg));
  long d = require_d(cfg);
  AxiomReport r = engine.check_topology_axioms(engine.enumerate_E(d), cfg.exhaustive_limit, cfg.samples, cfg.seed);
  json j = r.to_json();
  j["ring"] = cat.ring.label();
  j["d"] = d;
  j["N_max"] = cat.n_max;
  j["n_max"] = cfg.n_max;
  j["seed"] = cfg.seed;
  emit(cfg, j);
  return r.pass() ? kPass : kFail;
}

int cmd_oracle(const RunConfig& cfg) {
  Catalog cat = catalog(cfg);
  int sources = !cfg.matrix_file.empty() + !cfg.matrix.empty() + !cfg.cls.empty();
  if (sources != 1) throw UsageError("give exactly one of --matrix-file, --matrix, --class");
  PolyMatrix phi;
  std::string subject;
  if (!cfg.cls.empty()) {
    ModuleVector v = ModuleVector::parse(cfg.cls);
    std::optional<PolyMatrix> acc;
    for (const auto& [k, n] : v.counts())
      for (long i = 0; i < n; ++i) {
        PolyMatrix p = cat.get(k).presentation(cat.ring);
        acc = acc ? PolyMatrix::block_diag(*acc, p) : p;
      }
    if (!acc) throw UsageError("empty class vector");
    phi = *acc;
    subject = v.to_string();
  } else {
    std::string text = cfg.matrix;
    if (!cfg.matrix_file.empty()) {
      std::ifstream f(cfg.matrix_file);
      if (!f) throw Error("cannot read " + cfg.matrix_file);
      text.assign(std::istreambuf_iterator<char>(f), {});
    }
    try {
      phi = parse_matrix(text, cat.ring.variables());
    } catch (const ParseError& e) {
      throw UsageError(std::string("bad matrix: ") + e.what());
    }
    subject = phi.to_string();
  }
  std::optional<ArithmeticMode> mode;
  if (!cfg.mode.empty()) mode = ArithmeticMode::parse(cfg.mode);
  MultiplicityReport r;
  try {
    r = multiplicity_oracle(phi, cat.ring, cfg.s_max, mode);
  } catch (const NoStabilization& e) {
    std::cerr << "error: " << e.what() << "; raise --smax\n";
    return kFail;
  }
  json j = r.to_json();
  j["ring"] = cat.ring.label();
  j["presentation"] = subject;
  emit(cfg, j);
  return kPass;
}

int cmd_export(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "dot") throw UsageError("--format must be json or dot");
  Catalog cat = catalog(cfg);
  OrderEngine engine = make_engine(cat, bounds(cfg));
  Graph g = engine.export_graph(engine.enumerate_E(require_d(cfg)));
  if (cfg.format == "dot") {
    emit(cfg, to_dot(g));
  } else {
    json j = to_json(g);
    j["ring"] = cat.ring.label();
    j["d"] = cfg.d;
    emit(cfg, j);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Degenerations of MCM modules over hypersurfaces: certificates and closures"};
  app.set_config("--config", "", "TOML/INI file with option values; command-line flags win");
  app.fallthrough();
  app.require_subcommand(1);

  std::string rings;
  for (const auto& r : supported_rings()) rings += (rings.empty() ? "" : ", ") + r;
  app.add_option("--ring", cfg.ring, "ring label (" + rings + ")");
  app.add_option("--d", cfg.d, "multiplicity");
  app.add_option("--Nmax", cfg.N_max, "largest family parameter in the catalog")->capture_default_str();
  app.add_option("--nmax", cfg.n_max, "largest scale n in M^n =>deg N^n")->capture_default_str();
  app.add_option("--smax", cfg.s_max, "largest truncation level for the oracle (0: ring default)");
  app.add_option("--mode", cfg.mode, "oracle arithmetic: rational, modular or modular:<p> (default by dimension)");
  app.add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "export format: json or dot")->capture_default_str();
  app.add_option("--catalog-dir", cfg.catalog_dir, "directory of catalog files");
  app.add_option("--frontier-cap", cfg.frontier_cap, "states per breadth-first search")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "verify the catalog and every fact certificate");
  verify->add_flag("--no-oracle", cfg.no_oracle, "skip the truncation oracle on stored multiplicities");
  verify->add_flag("--ses", cfg.ses, "also verify the truncated short exact sequences");
  app.add_subcommand("enumerate", "list E(d) within the catalog bound");
  auto* closure = app.add_subcommand("closure", "closure of one generator with traces");
  closure->add_option("--generator", cfg.generator, "module vector, e.g. \"R^2 + m\"");
  auto* components = app.add_subcommand("components", "cover E(d) by the closures of the generator formula");
  components->add_option("--generator-rule", cfg.rule, "formula or all")->capture_default_str();
  auto* axioms = app.add_subcommand("axioms", "closure-operator axioms on E(d)");
  axioms->add_option("--samples", cfg.samples, "sampled pairs when E(d) is large")->capture_default_str();
  axioms->add_option("--exhaustive-limit", cfg.exhaustive_limit, "largest E(d) checked exhaustively")
      ->capture_default_str();
  auto* oracle = app.add_subcommand("oracle", "multiplicity of a presented module");
  oracle->add_option("--matrix-file", cfg.matrix_file, "file holding a relation matrix [[..], ..]");
  oracle->add_option("--matrix", cfg.matrix, "relation matrix given inline");
  oracle->add_option("--class", cfg.cls, "catalog module vector, e.g. \"Mminus[1]\"");
  app.add_subcommand("export", "graph of direct memberships on E(d)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "verify") return cmd_verify(cfg);
    if (cmd == "enumerate") return cmd_enumerate(cfg);
    if (cmd == "closure") return cmd_closure(cfg);
    if (cmd == "components") return cmd_components(cfg);
    if (cmd == "axioms") return cmd_axioms(cfg);
    if (cmd == "oracle") return cmd_oracle(cfg);
    return cmd_export(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedRing& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
