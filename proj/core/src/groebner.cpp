#include "specrig/groebner.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_set>

namespace specrig {

// ---------------------------------------------------------------------------
// Reduction and Buchberger
// ---------------------------------------------------------------------------

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       long* step_budget) {
  Polynomial rem = Polynomial::zero(p.ring());
  Polynomial work = p;
  while (!work.is_zero()) {
    const auto& lt = work.leading_term();
    bool reduced = false;
    for (const Polynomial& g : basis) {
      if (g.is_zero()) continue;
      const auto& glt = g.leading_term();
      if (!monomial_divides(glt.mono, lt.mono)) continue;
      if (step_budget) {
        if (*step_budget <= 0)
          throw ComputationAborted("groebner reduction step cap exceeded", 0);
        --*step_budget;
      }
      work = work - g.mul_term(monomial_div(lt.mono, glt.mono), lt.coeff / glt.coeff);
      reduced = true;
      break;
    }
    if (!reduced) {
      // move the irreducible leading term to the remainder
      Polynomial t = Polynomial::from_terms(p.ring(), {lt});
      rem = rem + t;
      work = work - t;
    }
  }
  return rem;
}

namespace {

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  long sugar;
  long lcm_degree;
};

bool pair_less(const Pair& a, const Pair& b) {
  if (a.sugar != b.sugar) return a.sugar < b.sugar;
  if (a.lcm_degree != b.lcm_degree) return a.lcm_degree < b.lcm_degree;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > 0 && b[k] > 0) return false;
  return true;
}

}  // namespace

std::vector<Polynomial> buchberger(const RingPtr& ring, std::vector<Polynomial> gens,
                                   const GroebnerOptions& options) {
  long budget = options.max_steps;
  std::vector<Polynomial> g;
  std::vector<long> sugar;
  for (auto& p : gens) {
    if (p.is_zero()) continue;
    Polynomial q = p.with_ring(ring).normalized_integer();
    g.push_back(q);
    sugar.push_back(q.degree());
  }

  std::vector<Pair> pairs;
  auto push_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Monomial& mi = g[i].leading_term().mono;
      const Monomial& mj = g[j].leading_term().mono;
      if (coprime(mi, mj)) continue;  // product criterion
      Monomial l = monomial_lcm(mi, mj);
      long ld = total_degree(l);
      long s = std::max(sugar[i] + ld - total_degree(mi), sugar[j] + ld - total_degree(mj));
      pairs.push_back(Pair{i, j, std::move(l), s, ld});
    }
  };
  for (std::size_t j = 1; j < g.size(); ++j) push_pairs(j);

  while (!pairs.empty()) {
    auto it = std::min_element(pairs.begin(), pairs.end(), pair_less);
    Pair pr = *it;
    pairs.erase(it);

    const Polynomial& f1 = g[pr.i];
    const Polynomial& f2 = g[pr.j];
    const auto& l1 = f1.leading_term();
    const auto& l2 = f2.leading_term();
    Polynomial s1 = f1.mul_term(monomial_div(pr.lcm, l1.mono), 1 / l1.coeff);
    Polynomial s2 = f2.mul_term(monomial_div(pr.lcm, l2.mono), 1 / l2.coeff);
    Polynomial spoly = s1 - s2;
    Polynomial nf = normal_form(spoly, g, &budget);
    if (nf.is_zero()) continue;
    g.push_back(nf.normalized_integer());
    sugar.push_back(std::max(pr.sugar, nf.degree()));
    push_pairs(g.size() - 1);
    if (budget <= 0)
      throw ComputationAborted("groebner step cap exceeded", options.max_steps);
  }

  // minimalize: drop generators whose leading term another leading term
  // strictly divides; among duplicate leading terms keep the first
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Monomial& mi = g[i].leading_term().mono;
    bool drop = false;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      const Monomial& mj = g[j].leading_term().mono;
      if (!monomial_divides(mj, mi)) continue;
      if (mj != mi || j < i) {
        drop = true;
        break;
      }
    }
    if (!drop) minimal.push_back(g[i]);
  }

  // interreduce tails
  std::vector<Polynomial> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial nf = normal_form(minimal[i], others, &budget);
    if (!nf.is_zero()) reduced.push_back(nf.normalized_integer());
  }

  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return monomial_compare(a.leading_term().mono, b.leading_term().mono, ring->order()) > 0;
  });
  return reduced;
}

bool verify_groebner(const std::vector<Polynomial>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      const auto& l1 = basis[i].leading_term();
      const auto& l2 = basis[j].leading_term();
      Monomial l = monomial_lcm(l1.mono, l2.mono);
      Polynomial s = basis[i].mul_term(monomial_div(l, l1.mono), 1 / l1.coeff) -
                     basis[j].mul_term(monomial_div(l, l2.mono), 1 / l2.coeff);
      if (!normal_form(s, basis).is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Ideal
// ---------------------------------------------------------------------------

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), gens_(std::move(generators)) {
  for (auto& p : gens_) p = p.with_ring(ring_);
}

const std::vector<Polynomial>& Ideal::groebner_basis(const GroebnerOptions& options) const {
  if (!cache_) cache_ = buchberger(ring_, gens_, options);
  return *cache_;
}

bool Ideal::contains(const Polynomial& p, const GroebnerOptions& options) const {
  return normal_form(p.with_ring(ring_), groebner_basis(options)).is_zero();
}

bool Ideal::is_unit(const GroebnerOptions& options) const {
  const auto& basis = groebner_basis(options);
  return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
}

bool Ideal::is_zero_ideal() const {
  for (const auto& p : gens_)
    if (!p.is_zero()) return false;
  return true;
}

bool Ideal::vanishes_at(const QVector& point) const {
  for (const auto& p : gens_)
    if (p.evaluate(point) != 0) return false;
  return true;
}

Ideal Ideal::with_order(MonomialOrder order) const {
  if (order == ring_->order()) return *this;
  RingPtr r = make_ring(ring_->variables(), order);
  std::vector<Polynomial> gens;
  gens.reserve(gens_.size());
  for (const auto& p : gens_) {
    std::vector<Polynomial::Term> ts = p.terms();
    gens.push_back(Polynomial::from_terms(r, std::move(ts)));
  }
  return Ideal(r, std::move(gens));
}

Ideal Ideal::joined(const Ideal& other) const {
  if (ring_->variables() != other.ring_->variables())
    throw DomainError("joined: variable mismatch");
  std::vector<Polynomial> gens = gens_;
  for (const auto& p : other.gens_) {
    std::vector<Polynomial::Term> ts = p.terms();
    gens.push_back(Polynomial::from_terms(ring_, std::move(ts)));
  }
  // drop duplicates to keep bases small
  std::vector<Polynomial> unique;
  for (auto& p : gens) {
    bool seen = false;
    for (const auto& q : unique)
      if (p == q) {
        seen = true;
        break;
      }
    if (!seen) unique.push_back(std::move(p));
  }
  return Ideal(ring_, std::move(unique));
}

bool Ideal::same_ideal(const Ideal& other, const GroebnerOptions& options) const {
  if (ring_->variables() != other.ring_->variables()) return false;
  Ideal o = other.ring_->order() == ring_->order() ? other : other.with_order(ring_->order());
  const auto& a = groebner_basis(options);
  const auto& b = o.groebner_basis(options);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

long Ideal::max_generator_degree() const {
  long d = 0;
  for (const auto& p : gens_) d = std::max(d, p.degree());
  return d;
}

long Ideal::generator_degree_product() const {
  long prod = 1;
  for (const auto& p : gens_) {
    long d = std::max(1L, p.degree());
    if (prod > (1L << 40) / std::max(1L, d)) return 1L << 40;  // saturate
    prod *= d;
  }
  return prod;
}

// ---------------------------------------------------------------------------
// Dimension via independent variable sets
// ---------------------------------------------------------------------------

std::optional<long> dimension(const Ideal& ideal, const GroebnerOptions& options) {
  const auto& basis = ideal.groebner_basis(options);
  std::size_t n = ideal.ring()->nvars();
  if (n > 64) throw DomainError("dimension: more than 64 variables unsupported");
  for (const auto& p : basis)
    if (p.is_constant() && !p.is_zero()) return std::nullopt;  // empty variety

  std::vector<std::uint64_t> supports;
  for (const auto& p : basis) {
    std::uint64_t s = 0;
    const Monomial& m = p.leading_term().mono;
    for (std::size_t i = 0; i < n; ++i)
      if (m[i] > 0) s |= (1ull << i);
    supports.push_back(s);
  }
  // minimal supports only
  std::sort(supports.begin(), supports.end(), [](std::uint64_t a, std::uint64_t b) {
    return __builtin_popcountll(a) < __builtin_popcountll(b);
  });
  std::vector<std::uint64_t> minimal;
  for (std::uint64_t s : supports) {
    bool covered = false;
    for (std::uint64_t t : minimal)
      if ((t & s) == t) {
        covered = true;
        break;
      }
    if (!covered) minimal.push_back(s);
  }

  long best = 0;
  std::unordered_set<std::uint64_t> visited;
  std::uint64_t full = n == 64 ? ~0ull : ((1ull << n) - 1);
  auto dfs = [&](auto&& self, std::uint64_t candidate) -> void {
    if (__builtin_popcountll(candidate) <= best) return;
    if (!visited.insert(candidate).second) return;
    const std::uint64_t* offending = nullptr;
    for (const std::uint64_t& s : minimal)
      if ((s & candidate) == s) {
        offending = &s;
        break;
      }
    if (!offending) {
      best = std::max<long>(best, __builtin_popcountll(candidate));
      return;
    }
    std::uint64_t s = *offending;
    while (s) {
      std::uint64_t bit = s & (~s + 1);
      self(self, candidate & ~bit);
      s ^= bit;
    }
  };
  dfs(dfs, full);
  return best;
}

// ---------------------------------------------------------------------------
// Hilbert series of the leading-term ideal
// ---------------------------------------------------------------------------

namespace {

using ZPoly = std::vector<mpz_class>;  // coeff[i] of t^i

ZPoly zp_one() { return {mpz_class(1)}; }

ZPoly zp_add(const ZPoly& a, const ZPoly& b) {
  ZPoly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i < a.size()) out[i] += a[i];
    if (i < b.size()) out[i] += b[i];
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

ZPoly zp_shift(const ZPoly& a, long k) {
  if (a.empty()) return {};
  ZPoly out(a.size() + k);
  for (std::size_t i = 0; i < a.size(); ++i) out[i + k] = a[i];
  return out;
}

ZPoly zp_one_minus_tk(long k) {
  ZPoly out(k + 1);
  out[0] = 1;
  out[k] = -1;
  return out;
}

mpz_class zp_eval1(const ZPoly& a) {
  mpz_class s = 0;
  for (const auto& c : a) s += c;
  return s;
}

// exact division by (1 - t); caller must ensure a(1) == 0
ZPoly zp_div_one_minus_t(const ZPoly& a) {
  if (a.empty()) return {};
  ZPoly b(a.size() - 1);
  mpz_class carry = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) {
    carry += a[i];
    b[i] = carry;
  }
  while (!b.empty() && b.back() == 0) b.pop_back();
  return b;
}

std::vector<Monomial> minimal_monomials(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
    return total_degree(a) < total_degree(b);
  });
  std::vector<Monomial> minimal;
  for (const Monomial& m : gens) {
    bool covered = false;
    for (const Monomial& t : minimal)
      if (monomial_divides(t, m)) {
        covered = true;
        break;
      }
    if (!covered) minimal.push_back(m);
  }
  return minimal;
}

std::string monomials_key(const std::vector<Monomial>& gens) {
  std::string key;
  for (const Monomial& m : gens) {
    for (int e : m) {
      key += std::to_string(e);
      key += ',';
    }
    key += ';';
  }
  return key;
}

struct HilbertContext {
  std::map<std::string, ZPoly> memo;
  long nodes = 0;
  long node_cap = 0;

  // Numerator of the Hilbert series of R/I for the monomial ideal I:
  // HS(t) = N(t) / (1-t)^nvars.
  ZPoly numerator(std::vector<Monomial> gens) {
    gens = minimal_monomials(std::move(gens));
    if (gens.empty()) return zp_one();
    for (const Monomial& m : gens)
      if (total_degree(m) == 0) return {};  // unit ideal, quotient is zero
    std::string key = monomials_key(gens);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    if (++nodes > node_cap)
      throw ComputationAborted("hilbert series node cap exceeded", nodes);

    std::size_t nvars = gens[0].size();
    // pivot: variable occurring in the most generators
    std::size_t pivot = 0;
    long best_count = 0;
    for (std::size_t v = 0; v < nvars; ++v) {
      long count = 0;
      for (const Monomial& m : gens)
        if (m[v] > 0) ++count;
      if (count > best_count) {
        best_count = count;
        pivot = v;
      }
    }

    ZPoly result;
    if (best_count <= 1) {
      // pairwise coprime generators form a regular sequence
      result = zp_one();
      for (const Monomial& m : gens)
        result = zp_mul(result, zp_one_minus_tk(total_degree(m)));
    } else {
      // N(I) = N(I + <x>) + t * N(I : x)
      Monomial xv(nvars, 0);
      xv[pivot] = 1;
      std::vector<Monomial> plus;
      plus.push_back(xv);
      for (const Monomial& m : gens)
        if (m[pivot] == 0) plus.push_back(m);
      std::vector<Monomial> colon;
      for (const Monomial& m : gens) {
        Monomial c = m;
        if (c[pivot] > 0) c[pivot] -= 1;
        colon.push_back(std::move(c));
      }
      ZPoly a = numerator(std::move(plus));
      ZPoly b = numerator(std::move(colon));
      result = zp_add(a, zp_shift(b, 1));
    }
    memo.emplace(std::move(key), result);
    return result;
  }
};

}  // namespace

std::pair<long, long> hilbert_dimension_degree(const Ideal& ideal,
                                               const GroebnerOptions& options) {
  Ideal graded = ideal.with_order(MonomialOrder::GrevLex);
  const auto& basis = graded.groebner_basis(options);
  std::size_t n = ideal.ring()->nvars();
  for (const auto& p : basis)
    if (p.is_constant() && !p.is_zero())
      throw DomainError("hilbert series of the unit ideal");
  std::vector<Monomial> lts;
  for (const auto& p : basis) lts.push_back(p.leading_term().mono);

  HilbertContext ctx;
  ctx.node_cap = options.max_steps;
  ZPoly num = ctx.numerator(std::move(lts));

  long k = 0;
  while (!num.empty() && zp_eval1(num) == 0) {
    num = zp_div_one_minus_t(num);
    ++k;
  }
  long dim = static_cast<long>(n) - k;
  mpz_class deg = zp_eval1(num);
  if (deg < 0) deg = -deg;
  return {dim, static_cast<long>(deg.get_si())};
}

long degree(const Ideal& ideal, const GroebnerOptions& options) {
  return hilbert_dimension_degree(ideal, options).second;
}

// ---------------------------------------------------------------------------
// Decomposition on the supported class
// ---------------------------------------------------------------------------

namespace {

// Univariate polynomial as dense rational coefficients, index = power.
using UniPoly = std::vector<Rational>;

void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long uni_degree(const UniPoly& p) { return static_cast<long>(p.size()) - 1; }

Rational uni_eval(const UniPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

UniPoly uni_derivative(const UniPoly& p) {
  UniPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  uni_trim(d);
  return d;
}

// division with remainder; returns quotient, remainder in-place
UniPoly uni_divmod(UniPoly a, const UniPoly& b, UniPoly& rem) {
  UniPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rational(0));
  while (uni_degree(a) >= uni_degree(b) && !a.empty()) {
    long shift = uni_degree(a) - uni_degree(b);
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    uni_trim(a);
  }
  rem = std::move(a);
  uni_trim(q);
  return q;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniPoly r;
    uni_divmod(a, b, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a) c /= lead;
  }
  return a;
}

// divisors of |n| by trial division; nullopt when n is too large to factor
std::optional<std::vector<mpz_class>> small_divisors(const mpz_class& n0) {
  mpz_class n = abs(n0);
  if (n == 0) return std::vector<mpz_class>{};
  if (mpz_sizeinbase(n.get_mpz_t(), 2) > 64) return std::nullopt;
  std::vector<std::pair<mpz_class, int>> factors;
  mpz_class m = n;
  for (mpz_class p = 2; p * p <= m && p < 1'000'000; ++p) {
    if (m % p == 0) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      factors.push_back({p, e});
    }
  }
  if (m > 1) {
    if (m > 1'000'000'000'000L) return std::nullopt;  // residual too big to trust
    factors.push_back({m, 1});
  }
  std::vector<mpz_class> divisors{1};
  for (auto& [p, e] : factors) {
    std::size_t sz = divisors.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) divisors.push_back(divisors[i] * pk);
    }
    if (divisors.size() > 4096) return std::nullopt;
  }
  return divisors;
}

// Full factorization of a squarefree rational univariate polynomial into
// irreducible factors, or nullopt when outside the supported class.
std::optional<std::vector<UniPoly>> uni_factor_squarefree(UniPoly p) {
  uni_trim(p);
  std::vector<UniPoly> out;
  if (uni_degree(p) <= 0) return out;

  // root at zero
  while (!p.empty() && p[0] == 0) {
    out.push_back(UniPoly{Rational(0), Rational(1)});  // x
    p.erase(p.begin());
    break;  // squarefree: multiplicity one
  }
  if (uni_degree(p) <= 0) return out;

  // primitive integer form for rational-root candidates
  mpz_class den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> zc;
  for (const auto& c : p) zc.push_back(c.get_num() * (den / c.get_den()));
  auto lead_divs = small_divisors(zc.back());
  auto const_divs = small_divisors(zc.front());
  if (!lead_divs || !const_divs) return std::nullopt;

  bool found = true;
  while (found && uni_degree(p) > 0) {
    found = false;
    for (const mpz_class& a : *const_divs) {
      for (const mpz_class& b : *lead_divs) {
        for (int sign = 1; sign >= -1; sign -= 2) {
          Rational root(a * sign, b);
          root.canonicalize();
          if (uni_eval(p, root) != 0) continue;
          // divide out (x - root)
          UniPoly lin{-root, Rational(1)};
          UniPoly rem;
          p = uni_divmod(p, lin, rem);
          out.push_back(lin);
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
  }

  long d = uni_degree(p);
  if (d <= 0) return out;
  if (d == 1 || d == 2) {
    // no rational roots remain, so a leftover quadratic is irreducible
    out.push_back(p);
    return out;
  }
  return std::nullopt;  // higher-degree residual: outside the supported class
}

}  // namespace

std::optional<std::vector<std::pair<Rational, long>>> rational_roots_full_split(
    const std::vector<Rational>& coefficients) {
  UniPoly p = coefficients;
  uni_trim(p);
  if (p.empty()) return std::nullopt;
  std::vector<std::pair<Rational, long>> roots;
  if (uni_degree(p) == 0) return roots;

  long zero_mult = 0;
  while (!p.empty() && p[0] == 0) {
    ++zero_mult;
    p.erase(p.begin());
  }
  if (zero_mult > 0) roots.push_back({Rational(0), zero_mult});
  if (uni_degree(p) == 0) return roots;

  mpz_class den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> zc;
  for (const auto& c : p) zc.push_back(c.get_num() * (den / c.get_den()));
  auto lead_divs = small_divisors(zc.back());
  auto const_divs = small_divisors(zc.front());
  if (!lead_divs || !const_divs) return std::nullopt;

  bool progress = true;
  while (progress && uni_degree(p) > 0) {
    progress = false;
    for (const mpz_class& a : *const_divs) {
      for (const mpz_class& b : *lead_divs) {
        for (int sign = 1; sign >= -1 && !progress; sign -= 2) {
          Rational root(a * sign, b);
          root.canonicalize();
          long mult = 0;
          while (uni_degree(p) > 0 && uni_eval(p, root) == 0) {
            UniPoly lin{-root, Rational(1)};
            UniPoly rem;
            p = uni_divmod(p, lin, rem);
            ++mult;
          }
          if (mult > 0) {
            roots.push_back({root, mult});
            progress = true;
          }
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  if (uni_degree(p) > 0) return std::nullopt;  // does not split over Q
  return roots;
}

std::optional<std::vector<Polynomial>> factor_supported(const Polynomial& p0) {
  if (p0.is_zero()) return std::nullopt;
  Polynomial p = p0.normalized_integer();
  const RingPtr& ring = p.ring();
  std::size_t n = ring->nvars();
  std::vector<Polynomial> factors;

  // monomial content: variables dividing every term
  std::vector<int> minexp(n, INT32_MAX);
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < n; ++i) minexp[i] = std::min(minexp[i], t.mono[i]);
  bool any_content = false;
  for (std::size_t i = 0; i < n; ++i)
    if (minexp[i] > 0) any_content = true;
  if (any_content) {
    std::vector<Polynomial::Term> ts = p.terms();
    for (auto& t : ts)
      for (std::size_t i = 0; i < n; ++i) t.mono[i] -= minexp[i];
    p = Polynomial::from_terms(ring, std::move(ts));
    for (std::size_t i = 0; i < n; ++i)
      if (minexp[i] > 0) factors.push_back(Polynomial::variable(ring, i));
  }

  if (p.is_constant()) return factors;

  // support variables
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : p.terms())
      if (t.mono[i] > 0) {
        support.push_back(i);
        break;
      }
  }

  if (support.size() == 1) {
    std::size_t v = support[0];
    UniPoly u;
    for (const auto& t : p.terms()) {
      if (static_cast<std::size_t>(t.mono[v]) >= u.size()) u.resize(t.mono[v] + 1, Rational(0));
      u[t.mono[v]] = t.coeff;
    }
    UniPoly sf;
    {
      UniPoly d = uni_derivative(u);
      UniPoly g = uni_gcd(u, d);
      if (uni_degree(g) <= 0) {
        sf = u;
      } else {
        UniPoly rem;
        sf = uni_divmod(u, g, rem);
      }
    }
    auto parts = uni_factor_squarefree(sf);
    if (!parts) return std::nullopt;
    for (const UniPoly& f : *parts) {
      std::vector<Polynomial::Term> ts;
      for (std::size_t k = 0; k < f.size(); ++k) {
        if (f[k] == 0) continue;
        Monomial m(n, 0);
        m[v] = static_cast<int>(k);
        ts.push_back({std::move(m), f[k]});
      }
      factors.push_back(Polynomial::from_terms(ring, std::move(ts)).normalized_integer());
    }
    return factors;
  }

  if (support.size() == 2) {
    // homogeneous bivariate: dehomogenize, factor, homogenize back
    std::size_t vx = support[0], vy = support[1];
    long d = p.degree();
    bool homogeneous = true;
    for (const auto& t : p.terms())
      if (total_degree(t.mono) != d) homogeneous = false;
    if (homogeneous) {
      UniPoly u(d + 1, Rational(0));
      for (const auto& t : p.terms()) u[t.mono[vx]] = t.coeff;
      UniPoly sf;
      {
        UniPoly der = uni_derivative(u);
        UniPoly g = uni_gcd(u, der);
        if (uni_degree(g) <= 0) {
          sf = u;
        } else {
          UniPoly rem;
          sf = uni_divmod(u, g, rem);
        }
      }
      auto parts = uni_factor_squarefree(sf);
      if (!parts) return std::nullopt;
      for (const UniPoly& f : *parts) {
        long e = uni_degree(f);
        std::vector<Polynomial::Term> ts;
        for (std::size_t k = 0; k < f.size(); ++k) {
          if (f[k] == 0) continue;
          Monomial m(n, 0);
          m[vx] = static_cast<int>(k);
          m[vy] = static_cast<int>(e - static_cast<long>(k));
          ts.push_back({std::move(m), f[k]});
        }
        factors.push_back(Polynomial::from_terms(ring, std::move(ts)).normalized_integer());
      }
      return factors;
    }
  }

  return std::nullopt;
}

DecomposeResult decompose(const Ideal& ideal, const GroebnerOptions& options) {
  DecomposeResult result;
  const auto& basis = ideal.groebner_basis(options);
  if (basis.empty()) {
    result.supported = true;  // zero ideal: the whole space is one component
    result.components.push_back(ideal);
    return result;
  }
  if (ideal.is_unit(options)) {
    result.supported = true;  // empty variety, no components
    return result;
  }

  if (basis.size() == 1) {
    auto factors = factor_supported(basis[0]);
    if (!factors) {
      result.reason = "principal generator outside the supported factorization class";
      return result;
    }
    for (const Polynomial& f : *factors)
      result.components.emplace_back(ideal.ring(), std::vector<Polynomial>{f});
    result.supported = true;
    return result;
  }

  // zero-dimensional shape position: lex basis {x_i - h_i(x_last), g(x_last)}
  Ideal lex = ideal.with_order(MonomialOrder::Lex);
  const auto& lb = lex.groebner_basis(options);
  std::size_t n = ideal.ring()->nvars();
  if (lb.size() == n) {
    std::size_t last = n - 1;
    std::vector<const Polynomial*> linear(n, nullptr);
    const Polynomial* univ = nullptr;
    bool shape = true;
    for (const auto& p : lb) {
      const Monomial& lm = p.leading_term().mono;
      std::size_t lv = 0;
      bool single = false;
      for (std::size_t i = 0; i < n; ++i)
        if (lm[i] > 0) {
          lv = i;
          single = std::count_if(lm.begin(), lm.end(), [](int e) { return e > 0; }) == 1;
          break;
        }
      if (!single) {
        shape = false;
        break;
      }
      if (lv == last) {
        univ = &p;
        // tail must be univariate in the last variable
        for (const auto& t : p.terms())
          for (std::size_t i = 0; i + 1 < n; ++i)
            if (t.mono[i] > 0) shape = false;
      } else {
        if (lm[lv] != 1) {
          shape = false;
          break;
        }
        for (const auto& t : p.terms())
          for (std::size_t i = 0; i < n; ++i)
            if (i != lv && i != last && t.mono[i] > 0) shape = false;
        linear[lv] = &p;
      }
    }
    if (shape && univ) {
      auto factors = factor_supported(*univ);
      if (factors) {
        for (const Polynomial& f : *factors) {
          std::vector<Polynomial> gens;
          for (std::size_t i = 0; i + 1 < n; ++i)
            if (linear[i]) {
              std::vector<Polynomial::Term> ts = linear[i]->terms();
              gens.push_back(Polynomial::from_terms(ideal.ring(), std::move(ts)));
            }
          std::vector<Polynomial::Term> ts = f.terms();
          gens.push_back(Polynomial::from_terms(ideal.ring(), std::move(ts)));
          result.components.emplace_back(ideal.ring(), std::move(gens));
        }
        result.supported = true;
        return result;
      }
    }
  }

  result.reason = "ideal outside the supported decomposition class";
  return result;
}

}  // namespace specrig
