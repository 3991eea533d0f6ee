#include <random>

#include "doctest.h"
#include "mcmdeg/errors.hpp"
#include "mcmdeg/parse.hpp"
#include "mcmdeg/ring.hpp"

using namespace mcmdeg;

namespace {

const Variables XY{"x", "y"};
const Variables XYUV{"x", "y", "u", "v"};

Polynomial P(const char* s, const Variables& v = XY) { return parse_polynomial(s, v); }

Polynomial random_poly(std::mt19937& rng, const Variables& vars, int terms, int maxdeg) {
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, maxdeg), im(0, 3);
  Polynomial p(vars);
  for (int t = 0; t < terms; ++t) {
    Exponent e(vars.size());
    for (auto& k : e) k = static_cast<std::uint32_t>(deg(rng));
    GaussianRational c(coef(rng), im(rng) == 0 ? coef(rng) : 0);
    p.add_term(e, c);
  }
  return p;
}

PolyMatrix random_matrix(std::mt19937& rng, const Variables& vars, std::size_t n, int maxdeg = 2) {
  PolyMatrix m(vars, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_poly(rng, vars, 2, maxdeg);
  return m;
}

}  // namespace

TEST_CASE("gaussian rationals") {
  GaussianRational i = GaussianRational::imag_unit();
  REQUIRE(i * i == GaussianRational(-1));
  GaussianRational a(mpq_class(1, 2), mpq_class(-3));
  REQUIRE(a * a.inverse() == GaussianRational(1));
  REQUIRE(a.to_string() == "(1/2 - 3*i)");
  REQUIRE((-i).to_string() == "-i");
  REQUIRE_THROWS_AS(GaussianRational().inverse(), Error);
}

TEST_CASE("polynomial arithmetic") {
  REQUIRE(P("(x + y)*(x - y)") == P("x^2 - y^2"));
  REQUIRE(P("x") * P("x*y") == P("x^2*y"));
  REQUIRE(P("(x + i*v)*(x - i*v)", XYUV) == P("x^2 + v^2", XYUV));
  REQUIRE_THROWS_AS(P("x") + P("x", XYUV), VariableMismatch);
  REQUIRE(P("x - x").is_zero());
}

TEST_CASE("printer round-trips through the parser") {
  std::mt19937 rng(7);
  for (int k = 0; k < 200; ++k) {
    Polynomial p = random_poly(rng, XYUV, 4, 3);
    p *= GaussianRational(mpq_class(1, 1 + k % 5), mpq_class(k % 3, 2));
    REQUIRE(parse_polynomial(p.to_string(), XYUV) == p);
  }
  REQUIRE(P("x^2*y - 3/2*y + 1").to_string() == "x^2*y - 3/2*y + 1");
}

TEST_CASE("templated exponents") {
  ParamBindings n{{"n", 3}};
  REQUIRE(parse_polynomial("y^n", XY, n) == P("y^3"));
  REQUIRE(parse_polynomial("t^2*y^(n+1)", Variables{"x", "y", "t"}, n) ==
          parse_polynomial("t^2*y^4", Variables{"x", "y", "t"}));
  REQUIRE(parse_int_expr("2*n - 1", n) == 5);
  REQUIRE_THROWS_AS(parse_polynomial("y^m", XY, n), ParseError);
  REQUIRE_THROWS_AS(parse_polynomial("x +", XY), ParseError);
  REQUIRE_THROWS_AS(parse_polynomial("w", XY), ParseError);
}

TEST_CASE("matrix text round-trip") {
  PolyMatrix m = parse_matrix("[[x, y^2], [0, -x]]", XY);
  REQUIRE(m.rows() == 2);
  REQUIRE(m(0, 1) == P("y^2"));
  REQUIRE(parse_matrix(m.to_string(), XY) == m);
  REQUIRE_THROWS_AS(parse_matrix("[[x, y], [0]]", XY), DimensionMismatch);
  REQUIRE_THROWS_AS(parse_matrix("[]", XY), ParseError);
}

TEST_CASE("normal form modulo f") {
  Polynomial f = P("x^2*y");
  REQUIRE(normal_form(P("x^2*y"), f).is_zero());
  REQUIRE(normal_form(P("x^3"), f) == P("x^3"));
  auto d3 = HypersurfaceRing::parse("Dinf-3", {"x", "y", "u", "v"}, "x^2*y + u^2 + v^2");
  REQUIRE(d3.reduce(P("x^2*y + u^2 + v^2 + u^2", XYUV)) == P("u^2", XYUV));

  std::mt19937 rng(11);
  Polynomial g = d3.f();
  for (int k = 0; k < 50; ++k) {
    Polynomial p = random_poly(rng, XYUV, 5, 3);
    Polynomial r = normal_form(p, g);
    REQUIRE(normal_form(r, g) == r);
    REQUIRE(normal_form(p * g, g).is_zero());
    Polynomial q = random_poly(rng, XYUV, 3, 2);
    REQUIRE(normal_form(p + q * g, g) == r);
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(3);
  for (int k = 0; k < 40; ++k) {
    Polynomial a = random_poly(rng, XYUV, 3, 2), b = random_poly(rng, XYUV, 3, 2), c = random_poly(rng, XYUV, 3, 2);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) - b == a);
  }
}

TEST_CASE("exact division") {
  REQUIRE(exact_divide(P("x^2*y^2"), P("x^2*y")) == P("y"));
  REQUIRE(exact_divide(P("x^2 + v^2", XYUV), P("x + i*v", XYUV)) == P("x - i*v", XYUV));
  REQUIRE_THROWS_AS(exact_divide(P("x^2*y"), P("y^2")), NotDivisible);
  REQUIRE_THROWS_AS(exact_divide(P("x^2 + y"), P("x + 1")), NotDivisible);
}

TEST_CASE("adjugate and determinant") {
  PolyMatrix a = parse_matrix("[[x, y^3], [0, -x]]", XY);
  REQUIRE(a.adjugate() == parse_matrix("[[-x, -y^3], [0, x]]", XY));
  REQUIRE(PolyMatrix::identity(XY, 2).adjugate() == PolyMatrix::identity(XY, 2));

  const Variables XYZ{"x", "y", "z"};
  PolyMatrix m = parse_matrix("[[x, y^2, z, 0], [0, -x, 0, z], [-z, 0, x*y, y^3], [0, -z, 0, -x*y]]", XYZ);
  Polynomial d = m.det();
  Polynomial f = parse_polynomial("x^2*y + z^2", XYZ);
  REQUIRE(d == f * f);
  PolyMatrix adj = m.adjugate();
  REQUIRE(m * adj == PolyMatrix::scalar(XYZ, 4, d));
  REQUIRE(adj * m == PolyMatrix::scalar(XYZ, 4, d));

  std::mt19937 rng(5);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (int k = 0; k < 5; ++k) {
      PolyMatrix r = random_matrix(rng, XY, n);
      Polynomial dr = r.det();
      REQUIRE(r * r.adjugate() == PolyMatrix::scalar(XY, n, dr));
      REQUIRE(r.adjugate() * r == PolyMatrix::scalar(XY, n, dr));
    }
  }
}

TEST_CASE("large determinants agree between expansion and elimination") {
  std::mt19937 rng(9);
  for (int k = 0; k < 3; ++k) {
    PolyMatrix a = random_matrix(rng, XY, 5, 1);
    PolyMatrix b = random_matrix(rng, XY, 6, 1);
    // 11 x 11, past the expansion cutoff, so this goes through elimination
    PolyMatrix big = PolyMatrix::block_diag(a, b);
    REQUIRE(big.det() == a.det() * b.det());
  }
}
