#include <doctest.h>

#include <random>

#include "specrig/bounds.hpp"

using namespace specrig;

namespace {

// Independent brute-force re-implementation of the recursion, used as the
// oracle for small inputs. Plain mpz arithmetic, no tower machinery.
std::pair<mpz_class, mpz_class> brute_step(const mpz_class& x, const mpz_class& y) {
  unsigned long xl = x.get_ui();
  mpz_class p2x;
  mpz_ui_pow_ui(p2x.get_mpz_t(), 2, xl);  // 2^x
  unsigned long e = p2x.get_ui();
  mpz_class a, b, c;
  mpz_pow_ui(a.get_mpz_t(), x.get_mpz_t(), e);
  mpz_pow_ui(b.get_mpz_t(), y.get_mpz_t(), xl * e);
  mpz_pow_ui(c.get_mpz_t(), y.get_mpz_t(), e);
  return {a * b, c};
}

mpz_class brute_bound(long irr, long mdeg, long d) {
  mpz_class x = irr, y = mdeg, sum = 0;
  for (long i = 0;; ++i) {
    sum += x;
    if (i == d) break;
    auto nxt = brute_step(x, y);
    x = nxt.first;
    y = nxt.second;
  }
  return sum;
}

}  // namespace

TEST_CASE("f_step hand-derived values") {
  auto r11 = f_step(TowerInt(1), TowerInt(1));
  CHECK(r11.first.exact_value() == 1);
  CHECK(r11.second.exact_value() == 1);

  auto r21 = f_step(TowerInt(2), TowerInt(1));
  CHECK(r21.first.exact_value() == 16);
  CHECK(r21.second.exact_value() == 1);

  auto r22 = f_step(TowerInt(2), TowerInt(2));
  CHECK(r22.first.exact_value() == 4096);
  CHECK(r22.second.exact_value() == 16);
}

TEST_CASE("f_step rejects zero inputs") {
  CHECK_THROWS_AS(f_step(TowerInt(0), TowerInt(1)), DomainError);
  CHECK_THROWS_AS(f_step(TowerInt(1), TowerInt(0)), DomainError);
}

TEST_CASE("escape_bound hand-derived values") {
  CHECK(escape_bound(VarietyProfile(1, 1, 0)).exact_value() == 1);
  CHECK(escape_bound(VarietyProfile(2, 1, 1)).exact_value() == 18);

  // M(1,2,2) = 1 + 4 + 4^80 = 5 + 2^160
  mpz_class expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 2, 160);
  expected += 5;
  TowerInt m = escape_bound(VarietyProfile(1, 2, 2));
  REQUIRE(m.is_exact());
  CHECK(m.exact_value() == expected);
}

TEST_CASE("escape_bound agrees with the brute-force oracle") {
  for (long x = 1; x <= 3; ++x)
    for (long y = 1; y <= 3; ++y)
      for (long d = 0; d <= 1; ++d) {
        TowerInt m = escape_bound(VarietyProfile(x, y, d));
        REQUIRE(m.is_exact());
        CHECK(m.exact_value() == brute_bound(x, y, d));
      }
}

TEST_CASE("first coordinate of f is nondecreasing, bound strictly increasing in d") {
  for (long x = 1; x <= 3; ++x)
    for (long y = 1; y <= 2; ++y) {
      TowerInt prev = escape_bound(VarietyProfile(x, y, 0));
      for (long d = 1; d <= 3; ++d) {
        TowerInt cur = escape_bound(VarietyProfile(x, y, d));
        Cmp c = TowerInt::compare(prev, cur);
        if (x == 1 && y == 1) {
          CHECK(c == Cmp::Less);  // adds +1 each step
        } else {
          CHECK((c == Cmp::Less || c == Cmp::Equal));
        }
        prev = cur;
      }
    }
}

TEST_CASE("symbolic mode engages above the digit budget") {
  auto big = f_step(TowerInt(2, 3), TowerInt(2, 3));  // budget: 3 digits
  CHECK_FALSE(big.first.is_exact());
  CHECK(big.second.exact_value() == 16);
  // symbolic value still compares correctly against exact values
  CHECK(TowerInt::compare(TowerInt(4096), big.first) == Cmp::Equal);
}

TEST_CASE("symbolic comparison agrees with exact comparison on small towers") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<long> base(2, 5), expo(2, 40);
  for (int it = 0; it < 200; ++it) {
    long b1 = base(rng), e1 = expo(rng), b2 = base(rng), e2 = expo(rng);
    // exact route
    TowerInt x1 = TowerInt(b1).pow(TowerInt(e1));
    TowerInt x2 = TowerInt(b2).pow(TowerInt(e2));
    REQUIRE(x1.is_exact());
    REQUIRE(x2.is_exact());
    int exact = cmp(x1.exact_value(), x2.exact_value());
    // symbolic route: budget of one digit forces tower mode
    TowerInt s1 = TowerInt(b1, 1).pow(TowerInt(e1, 1));
    TowerInt s2 = TowerInt(b2, 1).pow(TowerInt(e2, 1));
    Cmp c = TowerInt::compare(s1, s2);
    if (c == Cmp::Unknown) continue;  // band ties are allowed to abstain
    int got = c == Cmp::Less ? -1 : c == Cmp::Greater ? 1 : 0;
    CHECK(got == (exact < 0 ? -1 : exact > 0 ? 1 : 0));
  }
}

TEST_CASE("log10 estimate is accurate in exact mode") {
  TowerInt m = escape_bound(VarietyProfile(1, 2, 2));
  double expected = 160.0 * std::log10(2.0);  // 5 + 2^160 ~ 2^160
  CHECK(m.log10_estimate() == doctest::Approx(expected).epsilon(1e-6));
  TowerInt small(12345);
  CHECK(small.log10_estimate() == doctest::Approx(std::log10(12345.0)).epsilon(1e-9));
}

TEST_CASE("symbolic towers far beyond exact range keep usable estimates") {
  // f_{2,2}(2) has ~10^1233 digits; must not materialize
  auto f2 = f_iterate(TowerInt(2), TowerInt(2), 2);
  CHECK_FALSE(f2.first.is_exact());
  LogRep l = f2.first.log_rep();
  CHECK(l.height >= 2);
  CHECK(TowerInt::compare(escape_bound(VarietyProfile(1, 2, 2)), f2.first) == Cmp::Less);
}

TEST_CASE("check_f_monotone examples") {
  auto t1 = check_f_monotone(TowerInt(1), TowerInt(1), TowerInt(1), TowerInt(1), 3);
  CHECK(t1.status == CheckOutcome::Status::Ok);
  CHECK(t1.holds);

  auto t2 = check_f_monotone(TowerInt(16), TowerInt(1), TowerInt(2), TowerInt(1), 0);
  CHECK(t2.status == CheckOutcome::Status::Ok);
  CHECK(t2.holds);

  auto t3 = check_f_monotone(TowerInt(4), TowerInt(4), TowerInt(1), TowerInt(2), 1);
  CHECK(t3.status == CheckOutcome::Status::Ok);
  CHECK(t3.holds);

  auto bad = check_f_monotone(TowerInt(17), TowerInt(1), TowerInt(2), TowerInt(1), 0);
  CHECK(bad.status == CheckOutcome::Status::PreconditionFailed);

  CHECK_THROWS_AS(check_f_monotone(TowerInt(1), TowerInt(1), TowerInt(1), TowerInt(1), -1),
                  DomainError);
}

TEST_CASE("check_f_monotone holds on 100 randomized admissible instances") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> small(1, 3);
  int done = 0;
  while (done < 100) {
    long big_a = small(rng), big_b = small(rng);
    auto f1 = f_step(TowerInt(big_a), TowerInt(big_b));
    if (!f1.first.is_exact() || !f1.second.is_exact()) continue;
    // sample (a,b) <= f_{A,B}(1) componentwise
    mpz_class xm = f1.first.exact_value(), ym = f1.second.exact_value();
    std::uniform_int_distribution<long> ax(1, std::min(200L, static_cast<long>(xm.get_ui())));
    std::uniform_int_distribution<long> ay(1, std::min(200L, static_cast<long>(ym.get_ui())));
    long a = ax(rng), b = ay(rng);
    long n = static_cast<long>(rng() % 2);
    auto out = check_f_monotone(TowerInt(a), TowerInt(b), TowerInt(big_a), TowerInt(big_b), n);
    REQUIRE(out.status == CheckOutcome::Status::Ok);
    CHECK(out.holds);
    ++done;
  }
}

TEST_CASE("check_bound_decrement examples") {
  auto e1 = check_bound_decrement(VarietyProfile(1, 2, 2), VarietyProfile(4, 4, 1));
  CHECK(e1.status == CheckOutcome::Status::Ok);
  CHECK(e1.holds);

  auto e2 = check_bound_decrement(VarietyProfile(1, 1, 1), VarietyProfile(1, 1, 0));
  CHECK(e2.status == CheckOutcome::Status::Ok);
  CHECK(e2.holds);

  auto e3 = check_bound_decrement(VarietyProfile(2, 1, 1), VarietyProfile(16, 1, 0));
  CHECK(e3.status == CheckOutcome::Status::Ok);
  CHECK(e3.holds);

  auto pre = check_bound_decrement(VarietyProfile(1, 2, 2), VarietyProfile(4, 4, 2));
  CHECK(pre.status == CheckOutcome::Status::PreconditionFailed);
}

TEST_CASE("tower string rendering") {
  TowerInt m = escape_bound(VarietyProfile(1, 2, 2), /*digit_budget=*/4);
  CHECK_FALSE(m.is_exact());
  CHECK(m.to_string() == "4^80 + 5");
  CHECK(escape_bound(VarietyProfile(2, 1, 1)).to_string() == "18");
}
