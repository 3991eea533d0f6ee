#include <doctest.h>

#include "mcmdeg/catalog.hpp"
#include "mcmdeg/errors.hpp"
#include "mcmdeg/parse.hpp"
#include "mcmdeg/truncation.hpp"

using namespace mcmdeg;

namespace {

ClassKey key(const char* s) { return ClassKey::parse(s); }

void require_all_pass(const std::vector<CatalogCheck>& checks) {
  for (const auto& c : checks) {
    INFO(c.subject << " " << c.check << " " << c.detail);
    CHECK(c.pass);
  }
}

}  // namespace

TEST_CASE("Ainf-1 catalog contents") {
  Catalog cat = load_catalog("Ainf-1", 3);
  auto u = cat.universe_classes();
  REQUIRE(u.size() == 5);
  CHECK(cat.get(key("R")).e == 2);
  CHECK(cat.get(key("X")).e == 1);
  for (const char* k : {"I[1]", "I[2]", "I[3]"}) CHECK(cat.get(key(k)).e == 2);
  CHECK_FALSE(cat.contains(key("I[4]")));
  CHECK(cat.get(key("I[0]")).alias);
  CHECK(cat.resolve(key("I[0]")) == ModuleVector::parse("R"));
}

TEST_CASE("Dinf-1 multiplicity table") {
  Catalog cat = load_catalog("Dinf-1", 2);
  const std::pair<const char*, long> table[] = {
      {"X_xy", 1},     {"X_x2", 1},     {"X_x", 2},      {"X_y", 2},      {"R", 3},
      {"Mplus[1]", 2}, {"Mplus[2]", 2}, {"Mminus[1]", 4}, {"Mminus[2]", 4}, {"Iplus[1]", 3},
      {"Iplus[2]", 3}, {"Iminus[1]", 3}, {"Iminus[2]", 3}};
  for (auto [k, e] : table) {
    INFO(k);
    CHECK(cat.get(key(k)).e == e);
    CHECK(multiplicity_oracle(cat.get(key(k)).presentation(cat.ring), cat.ring).e == e);
  }
  CHECK(cat.universe_classes().size() == 13);
}

TEST_CASE("every shipped catalog verifies, with oracle multiplicities") {
  for (const char* r : {"Ainf-1", "cusp", "Dinf-1", "Dinf-2", "cone"}) {
    INFO(r);
    require_all_pass(verify_catalog(load_catalog(r, 6), true));
  }
}

TEST_CASE("identifications") {
  Catalog cat = load_catalog("Dinf-1", 3);
  CHECK(cat.resolve(key("Mplus[0]")) == ModuleVector::parse("X_y"));
  CHECK(cat.resolve(key("Mminus[0]")) == ModuleVector::parse("R + X_x2"));
  CHECK(cat.resolve(key("Iplus[0]")) == ModuleVector::parse("R"));
  CHECK(cat.resolve(key("Iminus[0]")) == ModuleVector::parse("R"));
  CHECK(cat.resolve(ModuleVector::parse("Mminus[0]^2 + X_x")) == ModuleVector::parse("R^2 + X_x2^2 + X_x"));
  for (const auto& r : cat.identifications) CHECK(cat.get(r.lhs).e == cat.total_e(r.rhs));
}

TEST_CASE("ideal presentations annihilate their generators") {
  for (const char* r : {"Ainf-1", "cusp", "Dinf-1", "Dinf-2", "cone"}) {
    Catalog cat = load_catalog(r, 4);
    for (const auto& ip : ideal_presentations(cat)) {
      INFO(r << " " << ip.cls.to_string());
      REQUIRE(ip.generators.size() == ip.mf.size());
      std::vector<Polynomial> g;
      for (const auto& s : ip.generators) g.push_back(parse_polynomial(s, cat.ring.variables()));
      for (std::size_t i = 0; i < ip.mf.size(); ++i) {
        Polynomial acc(cat.ring.variables());
        for (std::size_t j = 0; j < g.size(); ++j) acc += ip.mf.phi(i, j) * g[j];
        CHECK(cat.ring.reduce(acc).is_zero());
      }
    }
  }
  Catalog d2 = load_catalog("Dinf-2", 1);
  CHECK(d2.get(key("I")).mf->phi.to_string() == "[[z, x], [-x*y, z]]");
  CHECK(d2.get(key("J")).mf->phi.to_string() == "[[z, y], [-x^2, z]]");
  Catalog d1 = load_catalog("Dinf-1", 3);
  CHECK(d1.get(key("Iplus[3]")).mf->phi.to_string() == "[[x, y^3], [0, -x*y]]");
}

TEST_CASE("generator rules") {
  Catalog a = load_catalog("Ainf-1", 2);
  CHECK(a.generators(5) == std::vector<ModuleVector>{ModuleVector::parse("R^2 + X")});
  CHECK(a.generators(6) == std::vector<ModuleVector>{ModuleVector::parse("R^3")});
  CHECK(a.generators(1) == std::vector<ModuleVector>{ModuleVector::parse("X")});

  Catalog d2 = load_catalog("Dinf-2", 2);
  CHECK(d2.generators(7).empty());
  CHECK(d2.generators(8) == std::vector<ModuleVector>{ModuleVector::parse("R^4")});

  Catalog c = load_catalog("cone", 1);
  CHECK(c.generators(6).size() == 3);
  CHECK_THROWS_AS(c.generators(4), Error);

  // brute-force count of solutions of 3l1 + l2 + 2l3 + 2l4 + l5 + 2l6 + 4l7 = d
  Catalog d1 = load_catalog("Dinf-1", 2);
  for (int d = 1; d <= 8; ++d) {
    int count = 0;
    for (int l1 = 0; 3 * l1 <= d; ++l1)
      for (int l2 = 0; l2 <= d; ++l2)
        for (int l3 = 0; l3 <= d; ++l3)
          for (int l4 = 0; l4 <= d; ++l4)
            for (int l5 = 0; l5 <= d; ++l5)
              for (int l6 = 0; l6 <= d; ++l6)
                for (int l7 = 0; 4 * l7 <= d; ++l7)
                  if (3 * l1 + l2 + 2 * l3 + 2 * l4 + l5 + 2 * l6 + 4 * l7 == d) ++count;
    auto gens = d1.generators(d);
    CHECK(static_cast<int>(gens.size()) == count);
    for (const auto& g : gens) CHECK(d1.total_e(g) == d);
  }
}

TEST_CASE("Knorrer-lifted catalog") {
  Catalog d3 = load_catalog("Dinf-3", 2);
  CHECK(d3.ring.label() == "Dinf-3");
  CHECK(d3.ring.f().to_string() == "x^2*y + u^2 + v^2");
  const std::pair<const char*, long> table[] = {
      {"R##", 2},        {"X_xy##", 2},      {"X_x##", 2},      {"X_y##", 2},       {"X_x2##", 2},
      {"Mplus##[1]", 4}, {"Mminus##[1]", 4}, {"Iplus##[1]", 4}, {"Iminus##[2]", 4}, {"Mplus##[2]", 4}};
  for (auto [k, e] : table) {
    INFO(k);
    CHECK(d3.get(key(k)).e == e);
  }
  CHECK(d3.resolve(key("Mplus##[0]")) == ModuleVector::parse("R## + X_y##"));
  CHECK(d3.resolve(key("Mminus##[0]")) == ModuleVector::parse("R## + X_x2##"));
  CHECK(d3.resolve(key("Iplus##[0]")) == ModuleVector::parse("R##^2"));
  require_all_pass(verify_catalog(d3, false));
  CHECK(d3.families.size() == load_catalog("Dinf-1", 2).families.size());

  Catalog a3 = load_catalog("Ainf-3", 2);
  CHECK(a3.ring.f().to_string() == "x^2 + u^2 + v^2");
  require_all_pass(verify_catalog(a3, true));
  CHECK(a3.get(key("R##")).e == 2);

  Catalog twice = lift_catalog(load_catalog("Ainf-1", 1), 2);
  CHECK(twice.ring.variables().size() == 6);
  require_all_pass(verify_catalog(twice, false));
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(load_catalog("E8", 3), UnsupportedRing);
  CHECK_THROWS_AS(load_catalog("Dinf-1", 0), Error);
  Catalog cat = load_catalog("Dinf-1", 2);
  CHECK_THROWS_AS(cat.get(key("Mplus[5]")), Error);
}

TEST_CASE("user-declared catalog in the same format") {
  auto doc = nlohmann::json::parse(R"({
    "ring": {"label": "A1", "variables": ["x", "y"], "f": "x^2 + y^2"},
    "classes": [
      {"family": "R", "free": true, "e": 2, "provenance": "free"},
      {"family": "P", "phi": "[[x + i*y]]", "psi": "[[x - i*y]]", "e": 1, "syzygy": "P2", "provenance": "line"},
      {"family": "P2", "phi": "[[x - i*y]]", "psi": "[[x + i*y]]", "e": 1, "syzygy": "P", "provenance": "line"}
    ],
    "generators": {"kind": "half_free", "odd": "P", "provenance": "test"}
  })");
  Catalog cat = parse_catalog(doc, 3);
  require_all_pass(verify_catalog(cat, true));
  CHECK(cat.generators(3) == std::vector<ModuleVector>{ModuleVector::parse("P + R")});
}
