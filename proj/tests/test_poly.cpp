#include <doctest.h>

#include <random>

#include "specrig/groebner.hpp"
#include "specrig/poly.hpp"

using namespace specrig;

namespace {

RingPtr xy_lex() { return make_ring({"x", "y"}, MonomialOrder::Lex); }
RingPtr abcd() { return make_ring({"a", "b", "c", "d"}, MonomialOrder::GrevLex); }

QVector rand_point(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
  QVector pt(n);
  for (auto& q : pt) {
    q = Rational(num(rng), den(rng));
    q.canonicalize();
  }
  return pt;
}

}  // namespace

TEST_CASE("parser round trips the grammar") {
  auto ring = make_ring({"x_1_1", "x_1_2", "t_1"}, MonomialOrder::GrevLex);
  Polynomial p = parse_polynomial(ring, "2*x_1_1^2 - 1/3*x_1_2*t_1 + 7");
  CHECK(p.degree() == 2);
  CHECK(p.evaluate({Rational(1), Rational(3), Rational(2)}) == Rational(7));  // 2 - 2 + 7
  CHECK_THROWS_AS(parse_polynomial(ring, "zz + 1"), DomainError);
  CHECK_THROWS_AS(parse_polynomial(ring, "x_1_1 +"), DomainError);

  Polynomial q = parse_polynomial(ring, " x_1_1 ^ 2 - x_1_1*x_1_1 ");
  CHECK(q.is_zero());
}

TEST_CASE("ideal files skip comments and blank lines") {
  auto ring = xy_lex();
  auto polys = parse_polynomial_lines(ring, "# circle\nx^2 + y^2 - 1\n\nx - y # diagonal\n");
  REQUIRE(polys.size() == 2);
  CHECK(polys[0].degree() == 2);
  CHECK(polys[1].degree() == 1);
}

TEST_CASE("exact arithmetic: (p+q)-q == p bit-exactly") {
  std::mt19937 rng(99);
  auto ring = abcd();
  std::uniform_int_distribution<int> expd(0, 3), coeff(-9, 9);
  for (int it = 0; it < 50; ++it) {
    auto rand_poly = [&] {
      std::vector<Polynomial::Term> ts;
      for (int t = 0; t < 6; ++t) {
        Monomial m(4, 0);
        for (auto& e : m) e = expd(rng);
        ts.push_back({std::move(m), Rational(coeff(rng), 1 + (rng() % 5))});
      }
      return Polynomial::from_terms(ring, std::move(ts));
    };
    Polynomial p = rand_poly(), q = rand_poly();
    CHECK((p + q) - q == p);
  }
}

TEST_CASE("evaluate is a ring homomorphism at fixed points") {
  std::mt19937 rng(1234);
  auto ring = abcd();
  std::uniform_int_distribution<int> expd(0, 3), coeff(-9, 9);
  auto rand_poly = [&] {
    std::vector<Polynomial::Term> ts;
    for (int t = 0; t < 5; ++t) {
      Monomial m(4, 0);
      for (auto& e : m) e = expd(rng);
      ts.push_back({std::move(m), Rational(coeff(rng))});
    }
    return Polynomial::from_terms(ring, std::move(ts));
  };
  for (int it = 0; it < 30; ++it) {
    Polynomial p = rand_poly(), q = rand_poly();
    QVector pt = rand_point(rng, 4);
    CHECK(p.evaluate(pt) + q.evaluate(pt) == (p + q).evaluate(pt));
    CHECK(p.evaluate(pt) * q.evaluate(pt) == (p * q).evaluate(pt));
  }
}

TEST_CASE("evaluate fixtures") {
  auto ring = abcd();
  Polynomial det1 = parse_polynomial(ring, "a*d - b*c - 1");
  CHECK(det1.evaluate({Rational(1), Rational(0), Rational(0), Rational(1)}) == 0);
  Polynomial trm2 = parse_polynomial(ring, "a + d - 2");
  CHECK(trm2.evaluate({Rational(5), Rational(2), Rational(2), Rational(1)}) == Rational(4));
  CHECK_THROWS_AS(det1.evaluate({Rational(1)}), DomainError);
}

TEST_CASE("groebner: already-reduced basis is returned as is") {
  auto ring = xy_lex();
  Ideal ideal(ring, {parse_polynomial(ring, "x"), parse_polynomial(ring, "y")});
  const auto& basis = ideal.groebner_basis();
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == parse_polynomial(ring, "x"));
  CHECK(basis[1] == parse_polynomial(ring, "y"));
}

TEST_CASE("groebner circle/diagonal fixture") {
  auto ring = xy_lex();
  Ideal ideal(ring, {parse_polynomial(ring, "x^2 + y^2 - 1"), parse_polynomial(ring, "x - y")});
  const auto& basis = ideal.groebner_basis();
  REQUIRE(basis.size() == 2);
  CHECK(basis[0] == parse_polynomial(ring, "x - y"));
  CHECK(basis[1] == parse_polynomial(ring, "2*y^2 - 1"));
  CHECK(verify_groebner(basis));
  // substitution oracle: on x = y the circle becomes 2y^2 - 1
  for (long k = -3; k <= 3; ++k) {
    QVector pt{Rational(k, 2), Rational(k, 2)};
    bool on_input = ideal.vanishes_at(pt);
    bool on_basis = Ideal(ring, basis).vanishes_at(pt);
    CHECK(on_input == on_basis);
  }
}

TEST_CASE("groebner detects the unit ideal") {
  auto ring = xy_lex();
  Ideal ideal(ring, {parse_polynomial(ring, "x*y - 1"), parse_polynomial(ring, "x")});
  const auto& basis = ideal.groebner_basis();
  REQUIRE(basis.size() == 1);
  CHECK(basis[0] == parse_polynomial(ring, "1"));
  CHECK(ideal.is_unit());
}

TEST_CASE("groebner: input generators reduce to zero against the basis") {
  auto ring = abcd();
  Ideal ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1"), parse_polynomial(ring, "a + d - 2")});
  for (const auto& g : ideal.generators()) CHECK(ideal.contains(g));
  CHECK(verify_groebner(ideal.groebner_basis()));
}

TEST_CASE("groebner is idempotent") {
  auto ring = abcd();
  Ideal ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1"), parse_polynomial(ring, "a + d - 2")});
  Ideal again(ring, ideal.groebner_basis());
  CHECK(ideal.same_ideal(again));
  CHECK(again.groebner_basis() == ideal.groebner_basis());
}

TEST_CASE("resource cap aborts instead of answering") {
  auto ring = make_ring({"x", "y", "z", "w"}, MonomialOrder::GrevLex);
  Ideal ideal(ring, {parse_polynomial(ring, "x^3*y - z*w^2 + x"),
                     parse_polynomial(ring, "y^3*z - x*w + 1"),
                     parse_polynomial(ring, "z^3*x - y^2*w^2 + w")});
  GroebnerOptions tiny;
  tiny.max_steps = 3;
  CHECK_THROWS_AS(ideal.groebner_basis(tiny), ComputationAborted);
}

TEST_CASE("dimension fixtures") {
  auto ring = abcd();
  CHECK(dimension(Ideal(ring, {})) == 4);
  CHECK(dimension(Ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1")})) == 3);
  CHECK(dimension(Ideal(ring, {parse_polynomial(ring, "1")})) == std::nullopt);

  auto rxy = xy_lex();
  Ideal circle_line(rxy, {parse_polynomial(rxy, "x^2 + y^2 - 1"), parse_polynomial(rxy, "x - y")});
  CHECK(dimension(circle_line) == 0);
}

TEST_CASE("degree fixtures") {
  auto ring = abcd();
  CHECK(degree(Ideal(ring, {parse_polynomial(ring, "a - 1")})) == 1);
  CHECK(degree(Ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1")})) == 2);
  CHECK(degree(Ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1"),
                            parse_polynomial(ring, "a + d - 2")})) == 2);
  CHECK_THROWS_AS(degree(Ideal(ring, {parse_polynomial(ring, "1")})), DomainError);
}

TEST_CASE("hilbert dimension agrees with independent-set dimension") {
  auto ring = abcd();
  std::vector<Ideal> fixtures;
  fixtures.emplace_back(ring, std::vector<Polynomial>{parse_polynomial(ring, "a*d - b*c - 1")});
  fixtures.emplace_back(ring, std::vector<Polynomial>{parse_polynomial(ring, "a*d - b*c - 1"),
                                                      parse_polynomial(ring, "a + d - 2")});
  fixtures.emplace_back(ring, std::vector<Polynomial>{parse_polynomial(ring, "a^2 - b"),
                                                      parse_polynomial(ring, "c*d - 1")});
  for (const auto& ideal : fixtures) {
    auto dd = hilbert_dimension_degree(ideal);
    CHECK(dd.first == dimension(ideal).value());
  }
}

TEST_CASE("dimension/degree invariant under adding a redundant generator") {
  std::mt19937 rng(5);
  auto ring = abcd();
  Ideal ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1"), parse_polynomial(ring, "a + d - 2")});
  std::uniform_int_distribution<int> coeff(-4, 4), pick(0, 1);
  for (int it = 0; it < 20; ++it) {
    // random combination of the generators lies in the ideal
    Polynomial comb = ideal.generators()[0].scaled(coeff(rng)) +
                      ideal.generators()[1].scaled(coeff(rng)) *
                          parse_polynomial(ring, pick(rng) ? "a" : "d - 1");
    Ideal bigger = ideal.joined(Ideal(ring, {comb}));
    CHECK(dimension(bigger) == dimension(ideal));
    if (!bigger.is_unit()) CHECK(degree(bigger) == degree(ideal));
  }
}

TEST_CASE("membership via cached basis agrees with a fresh basis") {
  auto ring = abcd();
  Ideal ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1"), parse_polynomial(ring, "a + d - 2")});
  Polynomial probe = parse_polynomial(ring, "(a + d - 2)*(b - c) + (a*d - b*c - 1)*a");
  CHECK(ideal.contains(probe));  // computes and caches
  Ideal fresh(ring, ideal.generators());
  CHECK(fresh.contains(probe));
  CHECK(ideal.has_cached_basis());
}

TEST_CASE("decompose fixtures") {
  auto ring = xy_lex();

  auto d1 = decompose(Ideal(ring, {parse_polynomial(ring, "x*y")}));
  REQUIRE(d1.supported);
  REQUIRE(d1.components.size() == 2);

  auto d2 = decompose(Ideal(ring, {parse_polynomial(ring, "x^2")}));
  REQUIRE(d2.supported);
  REQUIRE(d2.components.size() == 1);
  CHECK(d2.components[0].generators()[0] == parse_polynomial(ring, "x"));

  auto d3 = decompose(Ideal(ring, {parse_polynomial(ring, "x^2 - y^2")}));
  REQUIRE(d3.supported);
  REQUIRE(d3.components.size() == 2);

  // membership equivalence on random rational points: a point is on the
  // input variety iff it is on some component
  std::mt19937 rng(31);
  for (int it = 0; it < 100; ++it) {
    QVector pt = rand_point(rng, 2);
    bool on_input = (pt[0] * pt[0] - pt[1] * pt[1] == 0);
    bool on_comp = false;
    for (const auto& c : d3.components) on_comp = on_comp || c.vanishes_at(pt);
    CHECK(on_input == on_comp);
  }
}

TEST_CASE("decompose zero-dimensional shape position") {
  auto ring = xy_lex();
  // {x - y, 2y^2 - 1}: two conjugate points, one irreducible quadratic
  Ideal ideal(ring, {parse_polynomial(ring, "x^2 + y^2 - 1"), parse_polynomial(ring, "x - y")});
  auto d = decompose(ideal);
  REQUIRE(d.supported);
  CHECK(d.components.size() == 1);  // 2y^2-1 is irreducible over Q

  Ideal split(ring, {parse_polynomial(ring, "y^2 - 1"), parse_polynomial(ring, "x - y")});
  auto ds = decompose(split);
  REQUIRE(ds.supported);
  CHECK(ds.components.size() == 2);  // y = 1 and y = -1
}

TEST_CASE("decompose reports unsupported ideals") {
  auto ring = abcd();
  Ideal ideal(ring, {parse_polynomial(ring, "a*d - b*c - 1"), parse_polynomial(ring, "a + d - 2")});
  auto d = decompose(ideal);
  CHECK_FALSE(d.supported);
  CHECK_FALSE(d.reason.empty());
}
