#include <doctest.h>

#include <random>

#include "specrig/variety.hpp"

using namespace specrig;

namespace {

QMatrix mat2(long a, long b, long c, long d) {
  return QMatrix::from_longs({{a, b}, {c, d}});
}

RepresentationSpec sanov() {
  return RepresentationSpec(AmbientGroup::special_linear(2),
                            {{"a", mat2(1, 2, 0, 1)}, {"b", mat2(1, 0, 2, 1)}});
}

Variety trace2_variety(const AmbientPtr& sl2) {
  return Variety(sl2, Ideal(sl2->ring(), {sl2->parse("x_1_1 + x_2_2 - 2")}));
}

// random rational point on {tr = 2} inside SL(2)
QMatrix random_trace2_point(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
  while (true) {
    Rational a(num(rng), den(rng));
    Rational b(num(rng), den(rng));
    if (b == 0) continue;
    Rational d = Rational(2) - a;
    Rational c = (a * d - 1) / b;
    QMatrix m(2, 2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = c;
    m.at(1, 1) = d;
    return m;
  }
}

}  // namespace

TEST_CASE("translate by the identity keeps the reduced basis") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  Variety t = translate(v, QMatrix::identity(2));
  CHECK(t.ideal().same_ideal(v.ideal()));
}

TEST_CASE("translate membership oracle: y in gX iff g^{-1}y in X") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  QMatrix g = mat2(1, 2, 0, 1);
  Variety gv = translate(v, g);
  std::mt19937 rng(2024);
  for (int it = 0; it < 50; ++it) {
    QMatrix x = random_trace2_point(rng);
    REQUIRE(v.contains(x));
    CHECK(gv.contains(g * x));
    // perturb off the variety: trace changes
    QMatrix y = x;
    y.at(0, 0) += 1;
    y.at(1, 0) = (y.at(0, 0) * y.at(1, 1) - 1) / y.at(0, 1);
    CHECK_FALSE(v.contains(y));
    CHECK_FALSE(gv.contains(g * y));
  }
}

TEST_CASE("translate round trip and composition") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  QMatrix g = mat2(1, 2, 0, 1);
  QMatrix h = mat2(1, 0, 2, 1);

  Variety back = translate(translate(v, g), g.inverse());
  CHECK(back.ideal().same_ideal(v.ideal()));

  // translate(translate(v, g), h) == translate(v, h g)
  Variety lhs = translate(translate(v, g), h);
  Variety rhs = translate(v, h * g);
  CHECK(lhs.ideal().same_ideal(rhs.ideal()));
}

TEST_CASE("translate preserves dimension and degree") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  Variety t = translate(v, mat2(5, 2, 2, 1));
  auto dv = dimension(v.joined_ideal());
  auto dt = dimension(t.joined_ideal());
  CHECK(dv == dt);
  CHECK(degree(v.joined_ideal()) == degree(t.joined_ideal()));
}

TEST_CASE("intersection is idempotent and drops dimension on translates") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  CHECK(intersect(v, v).ideal().same_ideal(v.ideal()));

  QMatrix ab = mat2(1, 2, 0, 1) * mat2(1, 0, 2, 1);
  Variety w = intersect(v, translate(v, ab));
  auto dv = dimension(v.joined_ideal());
  auto dw = dimension(w.joined_ideal());
  REQUIRE(dv.has_value());
  REQUIRE(dw.has_value());
  CHECK(*dw < *dv);
}

TEST_CASE("ambient mismatch is rejected") {
  auto sl2 = AmbientGroup::special_linear(2);
  auto sl3 = AmbientGroup::special_linear(3);
  Variety v2 = trace2_variety(sl2);
  Variety v3(sl3, Ideal(sl3->ring(), {sl3->parse("x_1_1 - 1")}));
  CHECK_THROWS_AS(intersect(v2, v3), DomainError);
}

TEST_CASE("profile fixtures") {
  // {tr=2} in SL(2): dimension 2, Bezout upper bound <= 2
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  auto p = profile_of(v);
  REQUIRE(p.has_value());
  CHECK(p->d == 2);
  CHECK(p->certainty == ProfileCertainty::UpperBound);
  CHECK(p->irr <= 2);
  CHECK(p->mdeg <= 2);

  // <xy> in the plane: two lines, exact
  auto plane = make_ring({"x", "y"}, MonomialOrder::GrevLex);
  auto pxy = profile_of_ideal(Ideal(plane, {parse_polynomial(plane, "x*y")}));
  REQUIRE(pxy.has_value());
  CHECK(pxy->irr == 2);
  CHECK(pxy->mdeg == 1);
  CHECK(pxy->d == 1);
  CHECK(pxy->certainty == ProfileCertainty::Exact);

  // unit ideal: empty marker
  CHECK_FALSE(profile_of_ideal(Ideal(plane, {parse_polynomial(plane, "1")})).has_value());
}

TEST_CASE("escape tower on the sanov trace fixture") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  TowerReport report = escape_tower(v, sanov());
  CHECK(report.status == TowerReport::Status::Escaped);
  CHECK(report.initial_dimension == 2);
  CHECK(report.final_dimension < 2);
  CHECK(static_cast<long>(report.steps.size()) <= report.initial_profile.irr);
  CHECK(report.lemma_inequalities_hold);

  // Lemma-style bound decrement across the escape round
  VarietyProfile parent = report.initial_profile;
  VarietyProfile child = report.steps.back().tracked;
  auto dec = check_bound_decrement(parent, child);
  CHECK(dec.status == CheckOutcome::Status::Ok);
  CHECK(dec.holds);
}

TEST_CASE("escape tower respects an asserted exact profile") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  v.assert_profile(VarietyProfile(1, 2, 2, ProfileCertainty::Exact));
  TowerReport report = escape_tower(v, sanov());
  CHECK(report.status == TowerReport::Status::Escaped);
  CHECK(report.steps.size() == 1);
  CHECK(report.lemma_inequalities_hold);
}

TEST_CASE("escape tower stalls on a stabilized variety") {
  auto sl2 = AmbientGroup::special_linear(2);
  // lower-triangular subgroup is stable under left translation by its own
  // elements
  Variety v(sl2, Ideal(sl2->ring(), {sl2->parse("x_1_2")}));
  RepresentationSpec rep(sl2, {{"b", mat2(1, 0, 2, 1)}});
  TowerReport report = escape_tower(v, rep);
  CHECK(report.status == TowerReport::Status::StalledStable);
  REQUIRE(report.final_variety.has_value());
  CHECK(report.final_variety->ideal().same_ideal(v.ideal()));
}

TEST_CASE("escape tower shrinks a zero-dimensional variety by point count") {
  auto sl2 = AmbientGroup::special_linear(2);
  // two points: the identity and the generator a = [[1,2],[0,1]]
  Ideal two_points(sl2->ring(), {sl2->parse("x_1_1 - 1"), sl2->parse("x_2_1"),
                                 sl2->parse("x_2_2 - 1"),
                                 sl2->parse("x_1_2*(x_1_2 - 2)")});
  Variety v(sl2, two_points);
  CHECK(degree(v.joined_ideal()) == 2);  // point-count oracle
  TowerReport report = escape_tower(v, sanov());
  CHECK(report.status == TowerReport::Status::Escaped);
  CHECK(report.final_dimension == -1);  // reached the empty variety
  REQUIRE(!report.steps.empty());
  // the first step already has fewer points (degree dropped from 2)
  CHECK(report.steps.front().degree < 2);
}

TEST_CASE("escape witness fixtures") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  RepresentationSpec rep = sanov();

  WitnessResult w = escape_witness(v, rep, 5);
  REQUIRE(w.found);
  CHECK(w.word.size() == 2);
  CHECK(rep.word_string(w.word) == "ab");
  CHECK(w.matrix == mat2(5, 2, 2, 1));

  // identity off the variety: empty word
  Variety off(sl2, Ideal(sl2->ring(), {sl2->parse("x_1_1 - 5")}));
  WitnessResult w0 = escape_witness(off, rep, 3);
  REQUIRE(w0.found);
  CHECK(w0.word.empty());

  // improper variety (ambient ideal only): never escapes
  Variety improper(sl2, sl2->defining_ideal());
  WitnessResult none = escape_witness(improper, rep, 3);
  CHECK_FALSE(none.found);
}

TEST_CASE("witness length stays within the escape bound of the profile") {
  auto sl2 = AmbientGroup::special_linear(2);
  Variety v = trace2_variety(sl2);
  v.assert_profile(VarietyProfile(1, 2, 2, ProfileCertainty::Exact));
  WitnessResult w = escape_witness(v, sanov(), 5);
  REQUIRE(w.found);
  TowerInt bound = escape_bound(*v.asserted_profile());
  TowerInt len(static_cast<long>(w.word.size()));
  CHECK(len.certified_leq(bound));
}
