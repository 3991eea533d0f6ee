#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "mcmdeg/errors.hpp"
#include "mcmdeg/order.hpp"

using namespace mcmdeg;

namespace {

ModuleVector mv(const char* s) { return ModuleVector::parse(s); }

std::set<ModuleVector> member_set(const ClosureResult& r) {
  std::set<ModuleVector> s;
  for (const auto& [v, m] : r.members) s.insert(v);
  return s;
}

}  // namespace

TEST_CASE("E(d) enumeration") {
  Catalog cusp = load_catalog("cusp", 6);
  OrderEngine e(cusp, build_fact_store(cusp).facts());
  auto e4 = e.enumerate_E(4);
  REQUIRE(e4.size() == 3);
  CHECK(e4[0] == mv("R^2"));
  CHECK(e4[1] == mv("R + m"));
  CHECK(e4[2] == mv("m^2"));
  CHECK(e.enumerate_E(0) == std::vector<ModuleVector>{ModuleVector{}});
  CHECK(e.enumerate_E(-1).empty());

  Catalog d2 = load_catalog("Dinf-2", 4);
  OrderEngine e2(d2, {});
  for (long d : {1, 3, 5, 7}) CHECK(e2.enumerate_E(d).empty());
  CHECK_FALSE(e2.enumerate_E(4).empty());

  Catalog cone = load_catalog("cone", 6);
  OrderEngine ec(cone, {});
  auto e6 = ec.enumerate_E(6);
  CHECK(e6.size() == 10);
  for (const auto& v : e6) CHECK(v.size() == 3);

  // count against a direct composition count over Ainf-1: e(X) = 1, R and I_1..I_N have e = 2
  Catalog a = load_catalog("Ainf-1", 3);
  OrderEngine ea(a, {});
  auto choose = [](long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (long d = 1; d <= 9; ++d) {
    long count = 0;
    for (long x = d % 2; x <= d; x += 2) count += choose((d - x) / 2 + 3, 3);  // 4 classes of e = 2
    CHECK(static_cast<long>(ea.enumerate_E(d).size()) == count);
  }
}

TEST_CASE("cusp closure") {
  Catalog cusp = load_catalog("cusp", 6);
  OrderEngine e(cusp, build_fact_store(cusp).facts(), {2});
  ClosureResult c = e.closure(mv("R^2"));
  CHECK(member_set(c) == std::set<ModuleVector>{mv("R^2"), mv("R + m"), mv("m^2")});
  CHECK(c.not_found.empty());
  CHECK(c.members.at(mv("m^2")).scale == 1);
  CHECK(c.members.at(mv("R + m")).scale == 2);
  for (const auto& [v, m] : c.members) {
    std::string why;
    INFO(v.to_string() << " " << why);
    CHECK(e.replay(mv("R^2"), v, m, &why));
  }
  // at n_max = 1, R + m is out of reach
  OrderEngine e1(cusp, build_fact_store(cusp).facts(), {1});
  ClosureResult c1 = e1.closure(mv("R^2"));
  CHECK(c1.not_found == std::vector<ModuleVector>{mv("R + m")});
  // m^2 is closed
  CHECK(member_set(e.closure(mv("m^2"))) == std::set<ModuleVector>{mv("m^2")});
  CHECK(member_set(e.closure(ModuleVector{})) == std::set<ModuleVector>{ModuleVector{}});

  nlohmann::json j = to_json(c, e);
  CHECK(j["members"].size() == 3);
  CHECK(j["members"][0]["vector"] == "R^2");
  CHECK(j["unresolved_label"] == kNotFoundLabel);
  CHECK(j.dump() == to_json(e.closure(mv("R^2")), e).dump());
}

TEST_CASE("Ainf-1 closure of R + X") {
  Catalog a = load_catalog("Ainf-1", 6);
  OrderEngine e(a, build_fact_store(a).facts());
  ClosureResult c = e.closure(mv("R + X"));
  CHECK(c.members.count(mv("X^3")));
  for (long n = 1; n <= 6; ++n) CHECK(c.members.count(ModuleVector::parse("X + I[" + std::to_string(n) + "]")));
  CHECK(c.not_found.empty());
  for (const auto& [v, m] : c.members) CHECK(e.replay(mv("R + X"), v, m));
}

TEST_CASE("replay rejects forged traces") {
  Catalog cusp = load_catalog("cusp", 2);
  OrderEngine e(cusp, build_fact_store(cusp).facts(), {2});
  ClosureResult c = e.closure(mv("R^2"));
  Membership m = c.members.at(mv("R + m"));
  std::string why;
  CHECK_FALSE(e.replay(mv("R^2"), mv("m^2"), m, &why));
  Membership bad = m;
  bad.scale = 1;
  CHECK_FALSE(e.replay(mv("R^2"), mv("R + m"), bad, &why));
  bad = m;
  bad.trace.front().repeat = 3;
  CHECK_FALSE(e.replay(mv("R^2"), mv("R + m"), bad, &why));
}

TEST_CASE("decompositions") {
  SUBCASE("Ainf-1") {
    Catalog a = load_catalog("Ainf-1", 6);
    OrderEngine e(a, build_fact_store(a).facts());
    for (long d = 1; d <= 9; ++d) {
      DecompositionReport r = e.decompose_E(d);
      INFO(d);
      CHECK(r.generators.size() == 1);
      CHECK(r.complete());
    }
  }
  SUBCASE("Dinf-2 odd and even") {
    Catalog d2 = load_catalog("Dinf-2", 4);
    OrderEngine e(d2, build_fact_store(d2).facts());
    DecompositionReport r7 = e.decompose_E(7);
    CHECK(r7.entries.empty());
    CHECK(r7.generators.empty());
    CHECK(r7.complete());
    CHECK(e.decompose_E(4).complete());
  }
  SUBCASE("cone E(6)") {
    Catalog cone = load_catalog("cone", 6);
    OrderEngine e(cone, build_fact_store(cone).facts());
    DecompositionReport r = e.decompose_E(6);
    CHECK(r.generators.size() == 3);
    CHECK(r.entries.size() == 10);
    std::set<ModuleVector> un(r.unresolved.begin(), r.unresolved.end());
    CHECK(un == std::set<ModuleVector>{mv("R + I^2"), mv("R + J^2"), mv("I^3"), mv("J^3")});
    nlohmann::json j = to_json(r, e);
    CHECK(j["unresolved_label"] == kUnresolvedLabel);
    CHECK(j["complete"] == false);
    CHECK_THROWS_AS(e.decompose_E(6, "some"), Error);
  }
  SUBCASE("all of E(d) as generators") {
    Catalog d1 = load_catalog("Dinf-1", 3);
    OrderEngine e(d1, build_fact_store(d1).facts(), {2});
    DecompositionReport r = e.decompose_E(4, "all");
    CHECK(r.generators.size() == r.entries.size());
    CHECK(r.complete());
  }
}

TEST_CASE("engine properties") {
  Catalog d1 = load_catalog("Dinf-1", 4);
  std::vector<AtomicFact> facts = build_fact_store(d1).facts();
  OrderEngine e(d1, facts, {3});
  auto e4 = e.enumerate_E(4);

  SUBCASE("monotone in n_max") {
    OrderEngine small(d1, facts, {1});
    for (const auto& g : e4) {
      auto a = member_set(small.closure(g));
      auto b = member_set(e.closure(g));
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
  SUBCASE("monotone in N_max") {
    Catalog d1s = load_catalog("Dinf-1", 2);
    OrderEngine small(d1s, build_fact_store(d1s).facts(), {3});
    for (const auto& g : small.enumerate_E(4)) {
      auto a = member_set(small.closure(g));
      auto b = member_set(e.closure(g));
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
  SUBCASE("scaling coherence") {
    for (const auto& g : e4) {
      const auto& one = e.direct(g, 1);
      for (const auto& [v, m] : one) {
        Membership twice{2, {}};
        for (const auto& s : m.trace) twice.trace.push_back({s.steps, s.repeat * 2});
        CHECK(e.replay(g, v, twice));
      }
    }
  }
  SUBCASE("sum closure on random instances") {
    std::mt19937_64 rng(7);
    std::vector<ModuleVector> small;
    for (long d = 1; d <= 3; ++d)
      for (const auto& v : e.enumerate_E(d)) small.push_back(v);
    std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      ModuleVector m = small[pick(rng)], n = small[pick(rng)];
      auto cm = e.closure(m), cn = e.closure(n);
      auto cmn = e.closure(m + n);  // m + n -> a + n -> a + b, one summand at a time
      auto sa = member_set(cm), sb = member_set(cn);
      std::vector<ModuleVector> as(sa.begin(), sa.end()), bs(sb.begin(), sb.end());
      ModuleVector a = as[pick(rng) % as.size()], b = bs[pick(rng) % bs.size()];
      INFO(m.to_string() << " | " << n.to_string() << " -> " << a.to_string() << " | " << b.to_string());
      CHECK(cmn.members.count(a + b));
    }
  }
  SUBCASE("multiplicity conservation and generic points") {
    for (const auto& g : e4) {
      ClosureResult c = e.closure(g);
      auto cg = member_set(c);
      for (const auto& [v, m] : c.members) {
        CHECK(d1.total_e(v) == 4);
        CHECK(e.replay(g, v, m));
        auto cv = member_set(e.closure(v));
        CHECK(std::includes(cg.begin(), cg.end(), cv.begin(), cv.end()));
      }
    }
  }
  SUBCASE("closure_of_set agrees with unions of closures") {
    std::vector<ModuleVector> xs{e4[0], e4[3]};
    auto joint = e.closure_of_set(xs);
    std::set<ModuleVector> u;
    for (const auto& x : xs)
      for (const auto& v : member_set(e.closure(x))) u.insert(v);
    CHECK(std::set<ModuleVector>(joint.begin(), joint.end()) == u);
  }
}

TEST_CASE("topology axioms") {
  Catalog cusp = load_catalog("cusp", 6);
  OrderEngine ec(cusp, build_fact_store(cusp).facts(), {2});
  AxiomReport r = ec.check_topology_axioms(ec.enumerate_E(4));
  CHECK(r.exhaustive);
  CHECK(r.subsets_checked == 8);
  CHECK(r.pass());

  Catalog d1 = load_catalog("Dinf-1", 2);
  OrderEngine ed(d1, build_fact_store(d1).facts(), {2});
  AxiomReport r3 = ed.check_topology_axioms(ed.enumerate_E(3));
  INFO(r3.to_json().dump());
  CHECK(r3.exhaustive);
  CHECK(r3.pass());

  AxiomReport sampled = ed.check_topology_axioms(ed.enumerate_E(4), 0, 50, 3);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.pairs_checked == 50);
  CHECK(sampled.pass());

  AxiomReport single = ec.check_topology_axioms({mv("m^2")});
  CHECK(single.pass());
  CHECK(ec.check_topology_axioms({}).pass());
}

TEST_CASE("graph export") {
  Catalog cusp = load_catalog("cusp", 6);
  OrderEngine e(cusp, build_fact_store(cusp).facts(), {2});
  Graph g = e.export_graph(e.enumerate_E(4));
  CHECK(g.nodes.size() == 3);
  std::set<std::tuple<std::string, std::string, long>> edges;
  for (const auto& ed : g.edges) edges.insert({g.nodes[ed.from].to_string(), g.nodes[ed.to].to_string(), ed.scale});
  CHECK(edges == std::set<std::tuple<std::string, std::string, long>>{
                     {"R^2", "m^2", 1}, {"R^2", "R + m", 2}, {"R + m", "m^2", 2}});
  std::string dot = to_dot(g);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("n=2") != std::string::npos);
  CHECK(to_json(g)["edges"].size() == 3);

  Graph empty = e.export_graph({});
  CHECK(empty.nodes.empty());
  CHECK(empty.edges.empty());

  Catalog d1 = load_catalog("Dinf-1", 2);
  OrderEngine ed(d1, build_fact_store(d1).facts(), {2});
  Graph g3 = ed.export_graph(ed.enumerate_E(3));
  CHECK(g3.nodes.size() == 17);
  CHECK(g3.edges.size() == 11);  // regression snapshot
}

TEST_CASE("bounds") {
  Catalog cusp = load_catalog("cusp", 2);
  CHECK_THROWS_AS(OrderEngine(cusp, {}, {0}), Error);
  OrderEngine e(cusp, build_fact_store(cusp).facts(), {2, 1});
  ClosureResult c = e.closure(mv("R^2"));
  CHECK_FALSE(c.warnings.empty());
  OrderEngine big(cusp, build_fact_store(cusp).facts());
  CHECK_THROWS_AS(big.closure(mv("R^200")), Error);
}
