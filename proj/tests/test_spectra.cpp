#include <doctest.h>

#include <cmath>
#include <random>

#include "specrig/spectra.hpp"

using namespace specrig;

namespace {

QMatrix mat2(long a, long b, long c, long d) {
  return QMatrix::from_longs({{a, b}, {c, d}});
}

QMatrix rand_sl2(std::mt19937& rng) {
  std::uniform_int_distribution<long> coeff(-3, 3);
  QMatrix m = QMatrix::identity(2);
  for (int k = 0; k < 4; ++k) {
    long t = coeff(rng);
    m = m * ((k % 2 == 0) ? mat2(1, t, 0, 1) : mat2(1, 0, t, 1));
  }
  return m;
}

QMatrix rand_invertible(std::mt19937& rng, long n) {
  std::uniform_int_distribution<long> coeff(-3, 3);
  while (true) {
    QMatrix m(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) m.at(i, j) = coeff(rng);
    if (m.det() != 0) return m;
  }
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

// random loxodromic affine fixture with rational eigenvalues 4, 1, 1/4
AffineElement rand_lox_affine(std::mt19937& rng) {
  QMatrix p = rand_invertible(rng, 3);
  QMatrix d(3, 3);
  d.at(0, 0) = 4;
  d.at(1, 1) = 1;
  d.at(2, 2) = Rational(1, 4);
  QMatrix a = p * d * p.inverse();
  std::uniform_int_distribution<long> coeff(-5, 5);
  QVector x{Rational(coeff(rng)), Rational(coeff(rng)), Rational(coeff(rng))};
  return AffineElement(a, x);
}

}  // namespace

TEST_CASE("cartan fixtures") {
  Eigen::MatrixXd rot(2, 2);
  double th = 0.7;
  rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  CartanVector r = cartan(rot);
  CHECK(std::fabs(r.entries[0]) < 1e-12);
  CHECK(std::fabs(r.entries[1]) < 1e-12);

  CartanVector d = cartan(QMatrix::from_strings({{"2", "0"}, {"0", "1/2"}}));
  CHECK(d.entries[0] == doctest::Approx(std::log(2)).epsilon(1e-10));
  CHECK(d.entries[1] == doctest::Approx(-std::log(2)).epsilon(1e-10));

  // unipotent [[1,1],[0,1]]: singular values phi, 1/phi
  CartanVector u = cartan(mat2(1, 1, 0, 1));
  double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(std::fabs(u.entries[0] - std::log(phi)) < 1e-8);
  CHECK(std::fabs(u.entries[1] + std::log(phi)) < 1e-8);
  CHECK(std::fabs(u.entries[0] + u.entries[1]) < 1e-10);
}

TEST_CASE("jordan fixtures") {
  JordanVector u = jordan(mat2(1, 1, 0, 1));
  CHECK(std::fabs(u.entries[0]) < 1e-8);
  CHECK_FALSE(u.loxodromic);

  JordanVector t = jordan(QMatrix::from_strings({{"2", "1"}, {"0", "1/2"}}));
  CHECK(t.entries[0] == doctest::Approx(std::log(2)).epsilon(1e-10));
  CHECK(t.loxodromic);
}

TEST_CASE("jordan of an affine embedding ignores the translation part") {
  // loxodromic linear part: the symmetric square of [[5,2],[2,1]]
  QMatrix g = sym_power(mat2(5, 2, 2, 1), 3);
  QVector u{Rational(7), Rational(-3), Rational(1, 2)};
  QVector zero{Rational(0), Rational(0), Rational(0)};
  JordanVector with_u = jordan(affine_embed_matrix(AffineElement(g, u)));
  JordanVector without = jordan(affine_embed_matrix(AffineElement(g, zero)));
  CHECK(max_abs_diff(with_u.entries, without.entries) < 1e-9);
  // spectrum of the block matrix is spectrum(g) plus one extra unit eigenvalue
  JordanVector base = jordan(g);
  CHECK(with_u.entries.size() == base.entries.size() + 1);
}

TEST_CASE("jordan conjugation invariance") {
  std::mt19937 rng(42);
  int done = 0;
  while (done < 100) {
    QMatrix g = mat2(5, 2, 2, 1) * rand_sl2(rng);
    if (abs(g.trace()) < 3) continue;  // keep the fixtures loxodromic
    QMatrix h = rand_sl2(rng);
    JordanVector a = jordan(g);
    JordanVector b = jordan(h * g * h.inverse());
    CHECK(max_abs_diff(a.entries, b.entries) < 1e-8);
    ++done;
  }
}

TEST_CASE("cartan K-bi-invariance") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> angle(0, 6.28318);
  for (int it = 0; it < 100; ++it) {
    Eigen::MatrixXd g = (mat2(5, 2, 2, 1) * rand_sl2(rng)).to_double();
    double t1 = angle(rng), t2 = angle(rng);
    Eigen::MatrixXd k1(2, 2), k2(2, 2);
    k1 << std::cos(t1), -std::sin(t1), std::sin(t1), std::cos(t1);
    k2 << std::cos(t2), -std::sin(t2), std::sin(t2), std::cos(t2);
    CHECK(max_abs_diff(cartan(g).entries, cartan(k1 * g * k2).entries) < 1e-8);
  }
}

TEST_CASE("jordan scales linearly under powers") {
  QMatrix g = mat2(5, 2, 2, 1);  // loxodromic
  JordanVector base = jordan(g);
  for (long n = 2; n <= 5; ++n) {
    JordanVector p = jordan(g.pow(n));
    for (std::size_t i = 0; i < base.entries.size(); ++i) {
      double expected = static_cast<double>(n) * base.entries[i];
      CHECK(std::fabs(p.entries[i] - expected) <=
            1e-7 * std::max(1.0, std::fabs(expected)));
    }
  }
}

TEST_CASE("cartan equals jordan on diagonal fixtures") {
  std::mt19937 rng(44);
  std::uniform_int_distribution<long> num(1, 9);
  for (int it = 0; it < 100; ++it) {
    Rational t(num(rng), num(rng));
    if (t == 1) continue;
    QMatrix d(2, 2);
    d.at(0, 0) = t;
    d.at(1, 1) = 1 / t;
    CHECK(max_abs_diff(cartan(d).entries, jordan(d).entries) < 1e-8);
  }
}

TEST_CASE("wedge traces fixtures") {
  QVector id3 = wedge_traces_exact(QMatrix::identity(3));
  CHECK(id3 == QVector{Rational(1), Rational(3), Rational(3), Rational(1)});

  QMatrix d(3, 3);
  d.at(0, 0) = 1;
  d.at(1, 1) = 2;
  d.at(2, 2) = 3;
  CHECK(wedge_traces_exact(d) == QVector{Rational(1), Rational(6), Rational(11), Rational(6)});

  std::mt19937 rng(45);
  for (int it = 0; it < 20; ++it) {
    QMatrix b = rand_invertible(rng, 3);
    QVector e = wedge_traces_exact(b);
    CHECK(e[3] == b.det());  // top exterior power
    std::vector<double> ed = wedge_traces(b.to_double());
    for (int k = 0; k <= 3; ++k)
      CHECK(std::fabs(ed[k] - e[k].get_d()) <= 1e-9 * std::max(1.0, std::fabs(e[k].get_d())));
  }
}

TEST_CASE("margulis invariant on the diagonal fixture is the middle coordinate") {
  QMatrix a(3, 3);
  a.at(0, 0) = 4;
  a.at(1, 1) = 1;
  a.at(2, 2) = Rational(1, 4);
  std::mt19937 rng(46);
  std::uniform_int_distribution<long> coeff(-7, 7);
  for (int it = 0; it < 20; ++it) {
    Rational xa(coeff(rng)), xb(coeff(rng)), xc(coeff(rng));
    AffineElement e(a, {xa, xb, xc});
    auto exact = margulis_invariant_exact(e);
    REQUIRE(exact.has_value());
    REQUIRE(exact->vector.size() == 1);
    CHECK(exact->vector[0] == xb);  // exactly b . e_2
    CHECK(exact->zero_basis[0] == QVector{Rational(0), Rational(1), Rational(0)});
    CHECK(exact->norm_squared == xb * xb);

    MargulisInvariant numeric = margulis_invariant(e);
    CHECK(numeric.status == MargulisInvariant::Status::Ok);
    CHECK(std::fabs(numeric.norm - std::fabs(xb.get_d())) < 1e-9);
    CHECK(numeric.identity_residual < 1e-10);
  }
}

TEST_CASE("margulis invariant vanishes on zero and coboundary translations") {
  std::mt19937 rng(47);
  for (int it = 0; it < 20; ++it) {
    AffineElement fixture = rand_lox_affine(rng);
    const QMatrix& a = fixture.linear();

    AffineElement zero(a, {Rational(0), Rational(0), Rational(0)});
    auto ez = margulis_invariant_exact(zero);
    REQUIRE(ez.has_value());
    CHECK(ez->norm_squared == 0);

    // coboundary X = (I - A) Y
    std::uniform_int_distribution<long> coeff(-5, 5);
    QVector y{Rational(coeff(rng)), Rational(coeff(rng)), Rational(coeff(rng))};
    QMatrix ia = QMatrix::identity(3) - a;
    AffineElement cob(a, ia.apply(y));
    auto ec = margulis_invariant_exact(cob);
    REQUIRE(ec.has_value());
    CHECK(is_zero(ec->vector));
    CHECK(ec->norm_squared == 0);
  }
}

TEST_CASE("margulis invariant requires a loxodromic linear part") {
  AffineElement unip(mat2(1, 1, 0, 1), {Rational(1), Rational(0)});
  CHECK_THROWS_AS(margulis_invariant(unip), DomainError);
  CHECK_THROWS_AS(margulis_norm(unip), DomainError);
}

TEST_CASE("margulis norm agrees with the vector-path norm on 100 random fixtures") {
  std::mt19937 rng(48);
  for (int it = 0; it < 100; ++it) {
    AffineElement e = rand_lox_affine(rng);
    MargulisInvariant inv = margulis_invariant(e);
    if (inv.status != MargulisInvariant::Status::Ok) continue;
    MargulisNorm nv = margulis_norm(e);
    REQUIRE(nv.status == MargulisNorm::Status::Ok);
    double scale = std::max(1.0, std::fabs(inv.norm));
    CHECK(std::fabs(nv.value - inv.norm) <= 1e-8 * scale);
    if (inv.norm > 1e-9) CHECK(inv.identity_residual < 1e-8);
  }
}

TEST_CASE("functional A vanishes on cartan-equal pairs") {
  std::mt19937 rng(49);
  std::uniform_real_distribution<double> angle(0, 6.28318);
  for (int it = 0; it < 100; ++it) {
    Eigen::MatrixXd g = (mat2(5, 2, 2, 1) * rand_sl2(rng)).to_double();
    double t1 = angle(rng), t2 = angle(rng);
    Eigen::MatrixXd k1(2, 2), k2(2, 2);
    k1 << std::cos(t1), -std::sin(t1), std::sin(t1), std::cos(t1);
    k2 << std::cos(t2), -std::sin(t2), std::sin(t2), std::cos(t2);
    Eigen::MatrixXd h = k1 * g * k2;  // same cartan projection
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(4, 4);
    block.topLeftCorner(2, 2) = g;
    block.bottomRightCorner(2, 2) = h;
    double norm = std::max(1.0, g.squaredNorm());
    CHECK(std::fabs(functional_A(block)) <= 1e-8 * norm);
  }
}

TEST_CASE("functional P vanishes on jordan-equal split loxodromic pairs") {
  std::mt19937 rng(50);
  std::uniform_int_distribution<long> num(2, 9);
  for (int it = 0; it < 100; ++it) {
    Rational t(num(rng));
    QMatrix d(2, 2);
    d.at(0, 0) = t;
    d.at(1, 1) = 1 / t;
    QMatrix minus_d = -d;  // elliptic part m with m^2 = e
    QMatrix p = rand_sl2(rng), q = rand_sl2(rng);
    QMatrix g = p * d * p.inverse();
    QMatrix h = q * minus_d * q.inverse();
    // both loxodromic with equal jordan projections
    CHECK(max_abs_diff(jordan(g).entries, jordan(h).entries) < 1e-8);
    CHECK(functional_P_exact(aleph_matrix(g, h)) == 0);
  }
  // identical blocks: trivially zero
  QMatrix g = mat2(5, 2, 2, 1);
  CHECK(functional_P_exact(aleph_matrix(g, g)) == 0);
}

TEST_CASE("functional R matches the margulis identity data") {
  QMatrix a(3, 3);
  a.at(0, 0) = 4;
  a.at(1, 1) = 1;
  a.at(2, 2) = Rational(1, 4);
  AffineElement e(a, {Rational(2), Rational(5), Rational(-3)});
  QMatrix emb = affine_embed_matrix(e);
  QVector r = functional_R_exact(emb, 2);
  // P_A(I-A)X = P_A(0) * b * e_2 with P_A(0) = (1-4)(1-1/4)
  Rational p0 = Rational(1 - 4) * (Rational(1) - Rational(1, 4));
  CHECK(r == QVector{Rational(0), p0 * 5, Rational(0)});
  CHECK(functional_R_norm2_exact(emb, 2) == p0 * p0 * 25);

  auto norm2 = margulis_norm_squared_exact(e, 1);
  REQUIRE(norm2.has_value());
  CHECK(*norm2 == 25);
}

TEST_CASE("functional E vanishes on symmetric pairs") {
  std::mt19937 rng(51);
  for (int it = 0; it < 20; ++it) {
    AffineElement e = rand_lox_affine(rng);
    AffineElement neg(e.linear(), scaled(e.translation(), Rational(-1)));
    QMatrix pair = aleph_matrix(affine_embed_matrix(e), affine_embed_matrix(neg));
    CHECK(functional_E_exact(pair, 2) == 0);
  }
}

TEST_CASE("zero-set ideals agree with the functional values") {
  auto prod = AmbientGroup::product(2);
  Ideal za = zero_set_A_ideal(prod);
  Ideal zp = zero_set_P_ideal(prod);
  std::mt19937 rng(52);
  for (int it = 0; it < 10; ++it) {
    QMatrix g = rand_sl2(rng), h = rand_sl2(rng);
    QMatrix block = aleph_matrix(g, h);
    QVector point(16);
    for (long i = 0; i < 4; ++i)
      for (long j = 0; j < 4; ++j) point[prod->var_index(i, j)] = block.at(i, j);
    CHECK(za.generators()[0].evaluate(point) == functional_A_exact(block));
    CHECK(zp.generators()[0].evaluate(point) == functional_P_exact(block));
  }
}

TEST_CASE("zero-set R ideal evaluates to the exact functional") {
  auto aff = AmbientGroup::affine(3);
  Ideal zr = zero_set_R_ideal(aff, 2);
  std::mt19937 rng(53);
  for (int it = 0; it < 5; ++it) {
    AffineElement e = rand_lox_affine(rng);
    QMatrix emb = affine_embed_matrix(e);
    QVector point(16);
    for (long i = 0; i < 4; ++i)
      for (long j = 0; j < 4; ++j) point[aff->var_index(i, j)] = emb.at(i, j);
    QVector r = functional_R_exact(emb, 2);
    // the ideal's generators are the nonzero entries of P_A(I-A)X up to
    // content normalization; vanishing must agree
    bool r_zero = is_zero(r);
    CHECK(zr.vanishes_at(point) == r_zero);
  }
  // a coboundary translation lands on Z_R
  QMatrix a(3, 3);
  a.at(0, 0) = 4;
  a.at(1, 1) = 1;
  a.at(2, 2) = Rational(1, 4);
  QMatrix ia = QMatrix::identity(3) - a;
  AffineElement cob(a, ia.apply(QVector{Rational(1), Rational(2), Rational(3)}));
  QMatrix emb = affine_embed_matrix(cob);
  QVector point(16);
  for (long i = 0; i < 4; ++i)
    for (long j = 0; j < 4; ++j) point[aff->var_index(i, j)] = emb.at(i, j);
  CHECK(zr.vanishes_at(point));
}

TEST_CASE("sym-power jordan doubles the top exponent") {
  std::mt19937 rng(54);
  for (int it = 0; it < 20; ++it) {
    QMatrix g = mat2(5, 2, 2, 1) * rand_sl2(rng);
    JordanVector base = jordan(g);
    if (!base.loxodromic) continue;
    JordanVector cube = jordan(sym_power(g, 3));
    REQUIRE(cube.entries.size() == 3);
    CHECK(std::fabs(cube.entries[0] - 2 * base.entries[0]) < 1e-8);
    CHECK(std::fabs(cube.entries[1]) < 1e-8);
    CHECK(std::fabs(cube.entries[2] + 2 * base.entries[0]) < 1e-8);
  }
}

TEST_CASE("spectrum tables are sorted and stable") {
  RepresentationSpec rep(AmbientGroup::special_linear(2),
                         {{"a", mat2(1, 2, 0, 1)}, {"b", mat2(1, 0, 2, 1)}});
  SpectrumTable t = spectrum(rep, InvariantKind::Jordan, 2);
  REQUIRE(t.rows.size() == 17);
  CHECK(t.rows[0].word_str == "e");
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    CHECK(t.rows[i - 1].word.size() <= t.rows[i].word.size());
  std::string text = t.to_text();
  CHECK(text.find("invariant jordan") == 0);
}
