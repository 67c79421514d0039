#include "specrig/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "specrig/rational.hpp"

namespace specrig {

namespace {

constexpr double kHeightCap = 1e300;   // escalate above this
constexpr double kHeightFloor = 300.0; // de-escalate below this

LogRep raise_once(LogRep r) {
  // value must be positive to take a log
  if (r.value <= 0) {
    // log10 of a number <= 1; only reachable at height 0 for tiny inputs
    r.value = -1e9;
    r.height += 1;
    return r;
  }
  r.value = std::log10(r.value);
  r.height += 1;
  return r;
}

double comparison_band(double vmax) {
  return 1e-9 + 1e-12 * std::fabs(vmax);
}

LogRep mpz_logrep(const mpz_class& z) {
  if (z == 0) return LogRep{0, 0.0};
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  if (e < 1000) return LogRep::of_double(mpz_get_d(z.get_mpz_t()));
  double log10v = std::log10(std::fabs(d)) + static_cast<double>(e) * M_LN2 / M_LN10;
  return LogRep{1, log10v}.normalized();
}

double mpz_log10(const mpz_class& z) {
  signed long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log10(std::fabs(d)) + static_cast<double>(e) * M_LN2 / M_LN10;
}

long mpz_digits(const mpz_class& z) {
  return static_cast<long>(mpz_sizeinbase(z.get_mpz_t(), 10));
}

}  // namespace

LogRep LogRep::normalized() const {
  LogRep r = *this;
  while (r.value > kHeightCap) r = raise_once(r);
  while (r.height > 0 && r.value <= kHeightFloor) {
    r.value = std::pow(10.0, r.value);
    r.height -= 1;
  }
  return r;
}

LogRep LogRep::of_double(double v) { return LogRep{0, v}.normalized(); }

LogRep LogRep::log10_rep() const {
  LogRep r = normalized();
  if (r.height == 0) return LogRep::of_double(std::log10(std::max(r.value, 1e-300)));
  return LogRep{r.height - 1, r.value}.normalized();
}

LogRep LogRep::exp10_rep() const {
  LogRep r = normalized();
  return LogRep{r.height + 1, r.value}.normalized();
}

LogRep LogRep::add(const LogRep& a0, const LogRep& b0) {
  LogRep a = a0.normalized();
  LogRep b = b0.normalized();
  while (a.height < b.height) a = raise_once(a);
  while (b.height < a.height) b = raise_once(b);
  if (a.value < b.value) std::swap(a, b);
  if (a.height == 0) return LogRep::of_double(a.value + b.value);
  if (a.height == 1) {
    double diff = b.value - a.value;  // <= 0
    double corr = diff < -300 ? 0.0 : std::log1p(std::pow(10.0, diff)) / M_LN10;
    return LogRep{1, a.value + corr}.normalized();
  }
  // At height >= 2 the smaller operand is beyond double resolution.
  return a;
}

LogRep LogRep::mul(const LogRep& a, const LogRep& b) {
  LogRep an = a.normalized();
  LogRep bn = b.normalized();
  if (an.height == 0 && bn.height == 0) return LogRep::of_double(an.value * bn.value);
  return add(an.log10_rep(), bn.log10_rep()).exp10_rep();
}

LogRep LogRep::pow(const LogRep& base, const LogRep& exponent) {
  return mul(exponent, base.log10_rep()).exp10_rep();
}

std::optional<int> LogRep::compare(const LogRep& a0, const LogRep& b0) {
  LogRep a = a0.normalized();
  LogRep b = b0.normalized();
  while (a.height < b.height) a = raise_once(a);
  while (b.height < a.height) b = raise_once(b);
  double band = comparison_band(std::max(std::fabs(a.value), std::fabs(b.value)));
  if (std::fabs(a.value - b.value) <= band) return std::nullopt;
  return a.value < b.value ? -1 : 1;
}

// ---------------------------------------------------------------------------
// TowerInt
// ---------------------------------------------------------------------------

struct TowerInt::Node {
  enum class Kind { Exact, Add, Mul, Pow } kind = Kind::Exact;
  mpz_class exact;
  std::vector<NodePtr> kids;  // Pow: kids[0] = base, kids[1] = exponent
  LogRep lrep;
  std::string key;
};

TowerInt::TowerInt(NodePtr node, long budget) : node_(std::move(node)), budget_(budget) {}

TowerInt::TowerInt(long v, long digit_budget) : TowerInt(mpz_class(v), digit_budget) {}

TowerInt::TowerInt(const mpz_class& v, long digit_budget) : budget_(digit_budget) {
  if (v < 0) throw DomainError("TowerInt values are nonnegative");
  node_ = make_exact(v);
}

TowerInt TowerInt::from_string(const std::string& decimal, long digit_budget) {
  mpz_class v;
  if (v.set_str(decimal, 10) != 0) throw DomainError("bad integer literal: " + decimal);
  return TowerInt(v, digit_budget);
}

TowerInt::NodePtr TowerInt::make_exact(mpz_class v) {
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Exact;
  node->exact = std::move(v);
  node->lrep = mpz_logrep(node->exact);
  node->key = "#" + node->exact.get_str();
  return node;
}

bool TowerInt::is_exact() const { return node_->kind == Node::Kind::Exact; }

const mpz_class& TowerInt::exact_value() const {
  if (!is_exact()) throw DomainError("TowerInt is symbolic");
  return node_->exact;
}

LogRep TowerInt::log_rep() const { return node_->lrep; }

double TowerInt::log10_estimate() const {
  if (is_exact()) {
    if (node_->exact == 0) return -std::numeric_limits<double>::infinity();
    return mpz_log10(node_->exact);
  }
  LogRep l = node_->lrep.log10_rep();
  if (l.height == 0) return l.value;
  return std::numeric_limits<double>::infinity();
}

std::string TowerInt::canonical_key() const { return node_->key; }

namespace {

// Sort key for canonical child ordering inside Add/Mul nodes.
bool node_before(const LogRep& la, const std::string& ka,
                 const LogRep& lb, const std::string& kb) {
  auto c = LogRep::compare(la, lb);
  if (c.has_value() && *c != 0) return *c > 0;  // descending numeric order
  return ka < kb;
}

}  // namespace

TowerInt::NodePtr TowerInt::make_add(std::vector<NodePtr> terms, long budget) {
  (void)budget;
  std::vector<NodePtr> flat;
  mpz_class exact_sum = 0;
  bool have_exact = false;
  auto absorb = [&](auto&& self, const NodePtr& t) -> void {
    if (t->kind == Node::Kind::Add) {
      for (const auto& k : t->kids) self(self, k);
    } else if (t->kind == Node::Kind::Exact) {
      exact_sum += t->exact;
      have_exact = true;
    } else {
      flat.push_back(t);
    }
  };
  for (const auto& t : terms) absorb(absorb, t);
  if (have_exact && (exact_sum != 0 || flat.empty()))
    flat.push_back(make_exact(exact_sum));
  if (flat.empty()) return make_exact(0);
  if (flat.size() == 1) return flat[0];
  std::sort(flat.begin(), flat.end(), [](const NodePtr& a, const NodePtr& b) {
    return node_before(a->lrep, a->key, b->lrep, b->key);
  });
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Add;
  node->kids = std::move(flat);
  LogRep l = node->kids[0]->lrep;
  for (std::size_t i = 1; i < node->kids.size(); ++i) l = LogRep::add(l, node->kids[i]->lrep);
  node->lrep = l;
  std::string key = "(+";
  for (const auto& k : node->kids) key += " " + k->key;
  key += ")";
  node->key = std::move(key);
  return node;
}

TowerInt::NodePtr TowerInt::make_mul(std::vector<NodePtr> factors, long budget) {
  // Factor list canonicalization: flatten, fold exact factors, merge powers
  // with structurally equal bases.
  std::vector<NodePtr> flat;
  auto absorb = [&](auto&& self, const NodePtr& f) -> void {
    if (f->kind == Node::Kind::Mul) {
      for (const auto& k : f->kids) self(self, k);
    } else {
      flat.push_back(f);
    }
  };
  for (const auto& f : factors) absorb(absorb, f);

  mpz_class coeff = 1;
  auto try_fold = [&](const mpz_class& v) -> bool {
    if (v == 1) return true;
    mpz_class tmp = coeff * v;
    if (mpz_digits(tmp) > budget) return false;
    coeff = std::move(tmp);
    return true;
  };

  // base key -> (base node, exponent as TowerInt)
  std::map<std::string, std::pair<NodePtr, TowerInt>> powers;
  auto add_power = [&](NodePtr base, TowerInt exp) {
    std::string key = base->key;
    auto it = powers.find(key);
    if (it == powers.end())
      powers.emplace(std::move(key), std::make_pair(std::move(base), std::move(exp)));
    else
      it->second.second = it->second.second + exp;
  };

  for (const auto& f : flat) {
    if (f->kind == Node::Kind::Exact) {
      if (f->exact == 0) return make_exact(0);
      if (try_fold(f->exact)) continue;
    }
    if (f->kind == Node::Kind::Pow)
      add_power(f->kids[0], TowerInt(f->kids[1], budget));
    else
      add_power(f, TowerInt(1, budget));
  }

  std::vector<NodePtr> out;
  for (auto& [key, bp] : powers) {
    (void)key;
    NodePtr p = make_pow(bp.first, bp.second.node_, budget);
    if (p->kind == Node::Kind::Exact) {
      if (p->exact == 0) return make_exact(0);
      if (try_fold(p->exact)) continue;
    }
    out.push_back(std::move(p));
  }
  if (coeff != 1 || out.empty()) out.push_back(make_exact(coeff));
  if (out.empty()) return make_exact(1);
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(), [](const NodePtr& a, const NodePtr& b) {
    return node_before(a->lrep, a->key, b->lrep, b->key);
  });
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Mul;
  node->kids = std::move(out);
  LogRep l = node->kids[0]->lrep;
  for (std::size_t i = 1; i < node->kids.size(); ++i) l = LogRep::mul(l, node->kids[i]->lrep);
  node->lrep = l;
  std::string key = "(*";
  for (const auto& k : node->kids) key += " " + k->key;
  key += ")";
  node->key = std::move(key);
  return node;
}

TowerInt::NodePtr TowerInt::make_pow(NodePtr base, NodePtr exp, long budget) {
  if (exp->kind == Node::Kind::Exact) {
    if (exp->exact == 0) return make_exact(1);
    if (exp->exact == 1) return base;
  }
  if (base->kind == Node::Kind::Exact) {
    if (base->exact == 0) return make_exact(0);
    if (base->exact == 1) return make_exact(1);
    if (exp->kind == Node::Kind::Exact) {
      // materialize when the result stays within the digit budget
      double digits = mpz_get_d(exp->exact.get_mpz_t()) * mpz_log10(base->exact);
      if (digits <= static_cast<double>(budget) && exp->exact.fits_ulong_p()) {
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base->exact.get_mpz_t(), exp->exact.get_ui());
        if (mpz_digits(r) <= budget) return make_exact(r);
      }
    }
  }
  if (base->kind == Node::Kind::Pow) {
    // (b^e1)^e2 = b^(e1*e2)
    TowerInt e1(base->kids[1], budget);
    TowerInt e2(exp, budget);
    return make_pow(base->kids[0], (e1 * e2).node_, budget);
  }
  if (base->kind == Node::Kind::Mul) {
    // (f1*...*fk)^e = f1^e * ... * fk^e
    std::vector<NodePtr> factors;
    for (const auto& f : base->kids) factors.push_back(make_pow(f, exp, budget));
    return make_mul(std::move(factors), budget);
  }
  auto node = std::make_shared<Node>();
  node->kind = Node::Kind::Pow;
  node->kids = {std::move(base), std::move(exp)};
  node->lrep = LogRep::pow(node->kids[0]->lrep, node->kids[1]->lrep);
  node->key = "(^ " + node->kids[0]->key + " " + node->kids[1]->key + ")";
  return node;
}

TowerInt TowerInt::operator+(const TowerInt& rhs) const {
  long budget = std::min(budget_, rhs.budget_);
  return TowerInt(make_add({node_, rhs.node_}, budget), budget);
}

TowerInt TowerInt::operator*(const TowerInt& rhs) const {
  long budget = std::min(budget_, rhs.budget_);
  return TowerInt(make_mul({node_, rhs.node_}, budget), budget);
}

TowerInt TowerInt::pow(const TowerInt& exp) const {
  long budget = std::min(budget_, exp.budget_);
  return TowerInt(make_pow(node_, exp.node_, budget), budget);
}

namespace {

// Bounded exact evaluation used only for comparisons: a symbolic node whose
// value happens to be small (possible under tiny digit budgets) still
// compares like an integer.
constexpr long kCompareMaterializeDigits = 1 << 14;

}  // namespace

std::optional<mpz_class> TowerInt::try_materialize(const NodePtr& node, long limit_digits) {
  LogRep l = node->lrep.normalized();
  if (l.height > 1 || (l.height == 1 && l.value > static_cast<double>(limit_digits)))
    return std::nullopt;
  switch (node->kind) {
    case Node::Kind::Exact:
      return node->exact;
    case Node::Kind::Add: {
      mpz_class sum = 0;
      for (const auto& k : node->kids) {
        auto v = try_materialize(k, limit_digits);
        if (!v) return std::nullopt;
        sum += *v;
      }
      return sum;
    }
    case Node::Kind::Mul: {
      mpz_class prod = 1;
      for (const auto& k : node->kids) {
        auto v = try_materialize(k, limit_digits);
        if (!v) return std::nullopt;
        prod *= *v;
        if (mpz_digits(prod) > limit_digits) return std::nullopt;
      }
      return prod;
    }
    case Node::Kind::Pow: {
      auto base = try_materialize(node->kids[0], limit_digits);
      auto exp = try_materialize(node->kids[1], limit_digits);
      if (!base || !exp || !exp->fits_ulong_p()) return std::nullopt;
      double digits = exp->get_d() * mpz_log10(*base);
      if (digits > static_cast<double>(limit_digits)) return std::nullopt;
      mpz_class r;
      mpz_pow_ui(r.get_mpz_t(), base->get_mpz_t(), exp->get_ui());
      return r;
    }
  }
  return std::nullopt;
}

Cmp TowerInt::compare(const TowerInt& a, const TowerInt& b) {
  if (a.node_->kind == Node::Kind::Exact && b.node_->kind == Node::Kind::Exact) {
    int c = cmp(a.node_->exact, b.node_->exact);
    return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
  }
  if (a.node_->key == b.node_->key) return Cmp::Equal;
  {
    auto av = try_materialize(a.node_, kCompareMaterializeDigits);
    if (av) {
      auto bv = try_materialize(b.node_, kCompareMaterializeDigits);
      if (bv) {
        int c = cmp(*av, *bv);
        return c < 0 ? Cmp::Less : c > 0 ? Cmp::Greater : Cmp::Equal;
      }
    }
  }
  // structural rules for powers over a shared base or shared exponent
  if (a.node_->kind == Node::Kind::Pow && b.node_->kind == Node::Kind::Pow) {
    const auto& ab = a.node_->kids[0];
    const auto& bb = b.node_->kids[0];
    long budget = std::min(a.budget_, b.budget_);
    if (ab->key == bb->key) {
      bool base_ge2 = ab->kind != Node::Kind::Exact || ab->exact >= 2;
      if (base_ge2)
        return compare(TowerInt(a.node_->kids[1], budget), TowerInt(b.node_->kids[1], budget));
    }
    if (a.node_->kids[1]->key == b.node_->kids[1]->key)
      return compare(TowerInt(ab, budget), TowerInt(bb, budget));
  }
  auto c = LogRep::compare(a.node_->lrep, b.node_->lrep);
  if (!c.has_value()) return Cmp::Unknown;
  return *c < 0 ? Cmp::Less : Cmp::Greater;
}

int TowerInt::order(const TowerInt& a, const TowerInt& b) {
  switch (compare(a, b)) {
    case Cmp::Less: return -1;
    case Cmp::Greater: return 1;
    case Cmp::Equal: return 0;
    case Cmp::Unknown: break;
  }
  return a.node_->key.compare(b.node_->key);
}

std::string TowerInt::to_string() const {
  struct Printer {
    static std::string print(const Node& n, bool parens_for_sum) {
      switch (n.kind) {
        case Node::Kind::Exact:
          return n.exact.get_str();
        case Node::Kind::Add: {
          std::string s;
          for (std::size_t i = 0; i < n.kids.size(); ++i) {
            if (i) s += " + ";
            s += print(*n.kids[i], false);
          }
          return parens_for_sum ? "(" + s + ")" : s;
        }
        case Node::Kind::Mul: {
          std::string s;
          for (std::size_t i = 0; i < n.kids.size(); ++i) {
            if (i) s += "*";
            s += print(*n.kids[i], true);
          }
          return s;
        }
        case Node::Kind::Pow: {
          std::string base = print(*n.kids[0], true);
          if (n.kids[0]->kind == Node::Kind::Mul || n.kids[0]->kind == Node::Kind::Pow)
            base = "(" + base + ")";
          std::string exp = print(*n.kids[1], true);
          if (n.kids[1]->kind != Node::Kind::Exact) exp = "(" + exp + ")";
          return base + "^" + exp;
        }
      }
      return "?";
    }
  };
  return Printer::print(*node_, false);
}

// ---------------------------------------------------------------------------
// Escape-bound recursion
// ---------------------------------------------------------------------------

VarietyProfile::VarietyProfile(long irr_, long mdeg_, long d_, ProfileCertainty c)
    : irr(irr_), mdeg(mdeg_), d(d_), certainty(c) {
  if (irr < 1) throw DomainError("profile needs irr >= 1");
  if (mdeg < 1) throw DomainError("profile needs mdeg >= 1");
  if (d < 0) throw DomainError("profile needs d >= 0");
}

namespace {

void require_positive(const TowerInt& v, const char* what) {
  if (v.is_exact() && v.exact_value() < 1)
    throw DomainError(std::string(what) + " must be >= 1");
}

}  // namespace

std::pair<TowerInt, TowerInt> f_step(const TowerInt& x, const TowerInt& y) {
  require_positive(x, "f_step x");
  require_positive(y, "f_step y");
  long budget = std::min(x.digit_budget(), y.digit_budget());
  TowerInt two(2, budget);
  TowerInt p = two.pow(x);          // 2^x
  TowerInt xp = x * p;              // x * 2^x
  TowerInt nx = x.pow(p) * y.pow(xp);
  TowerInt ny = y.pow(p);
  return {nx, ny};
}

std::pair<TowerInt, TowerInt> f_iterate(const TowerInt& x, const TowerInt& y, long n) {
  if (n < 0) throw DomainError("f iteration count must be nonnegative");
  std::pair<TowerInt, TowerInt> cur{x, y};
  for (long i = 0; i < n; ++i) cur = f_step(cur.first, cur.second);
  return cur;
}

TowerInt escape_bound(const VarietyProfile& profile, long digit_budget) {
  TowerInt x(profile.irr, digit_budget);
  TowerInt y(profile.mdeg, digit_budget);
  TowerInt sum(0, digit_budget);
  for (long i = 0;; ++i) {
    sum = sum + x;
    if (i == profile.d) break;
    auto next = f_step(x, y);
    x = next.first;
    y = next.second;
  }
  return sum;
}

CheckOutcome CheckOutcome::ok(bool holds) {
  CheckOutcome o;
  o.status = Status::Ok;
  o.holds = holds;
  return o;
}

CheckOutcome CheckOutcome::precondition_failed(std::string detail) {
  CheckOutcome o;
  o.status = Status::PreconditionFailed;
  o.detail = std::move(detail);
  return o;
}

CheckOutcome CheckOutcome::undecided(std::string detail) {
  CheckOutcome o;
  o.status = Status::Undecided;
  o.detail = std::move(detail);
  return o;
}

namespace {

// Certified a <= b, with Unknown surfaced separately.
std::optional<bool> certified_leq_opt(const TowerInt& a, const TowerInt& b) {
  switch (TowerInt::compare(a, b)) {
    case Cmp::Less:
    case Cmp::Equal: return true;
    case Cmp::Greater: return false;
    case Cmp::Unknown: return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

CheckOutcome check_f_monotone(const TowerInt& a, const TowerInt& b,
                              const TowerInt& big_a, const TowerInt& big_b,
                              long n) {
  if (n < 0) throw DomainError("check_f_monotone needs n >= 0");
  require_positive(a, "a");
  require_positive(b, "b");
  require_positive(big_a, "A");
  require_positive(big_b, "B");
  auto f1 = f_step(big_a, big_b);
  auto pre1 = certified_leq_opt(a, f1.first);
  auto pre2 = certified_leq_opt(b, f1.second);
  if (!pre1.has_value() || !pre2.has_value())
    return CheckOutcome::undecided("precondition comparison inside unreliability band");
  if (!*pre1 || !*pre2)
    return CheckOutcome::precondition_failed("(a,b) exceeds f_{A,B}(1) componentwise");
  auto lhs = f_iterate(a, b, n);
  auto rhs = f_iterate(big_a, big_b, n + 1);
  auto c1 = certified_leq_opt(lhs.first, rhs.first);
  auto c2 = certified_leq_opt(lhs.second, rhs.second);
  if (!c1.has_value() || !c2.has_value())
    return CheckOutcome::undecided("comparison inside unreliability band");
  return CheckOutcome::ok(*c1 && *c2);
}

CheckOutcome check_bound_decrement(const VarietyProfile& parent,
                                   const VarietyProfile& child,
                                   long digit_budget) {
  if (child.d >= parent.d)
    return CheckOutcome::precondition_failed("child dimension must drop");
  TowerInt irr(parent.irr, digit_budget);
  TowerInt mdeg(parent.mdeg, digit_budget);
  auto bound = f_step(irr, mdeg);  // (irr^{2^irr} mdeg^{irr 2^irr}, mdeg^{2^irr})
  auto pre1 = certified_leq_opt(TowerInt(child.irr, digit_budget), bound.first);
  auto pre2 = certified_leq_opt(TowerInt(child.mdeg, digit_budget), bound.second);
  if (!pre1.has_value() || !pre2.has_value())
    return CheckOutcome::undecided("precondition comparison inside unreliability band");
  if (!*pre1 || !*pre2)
    return CheckOutcome::precondition_failed("child profile exceeds the intersection-tower bounds");
  TowerInt lhs = escape_bound(child, digit_budget) + irr;
  TowerInt rhs = escape_bound(parent, digit_budget);
  auto c = certified_leq_opt(lhs, rhs);
  if (!c.has_value()) return CheckOutcome::undecided("bound comparison inside unreliability band");
  return CheckOutcome::ok(*c);
}

}  // namespace specrig
