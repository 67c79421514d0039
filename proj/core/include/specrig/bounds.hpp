#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specrig/errors.hpp"

namespace specrig {

// Iterated-logarithm representation of a positive real r: applying log10
// `height` times to r gives `value`. Height 0 stores r itself. Values that
// would overflow a double escalate to the next height.
struct LogRep {
  int height = 0;
  double value = 0.0;

  static LogRep of_double(double v);
  LogRep log10_rep() const;   // representation of log10(r); requires r >= 1
  LogRep exp10_rep() const;   // representation of 10^r

  static LogRep add(const LogRep& a, const LogRep& b);
  static LogRep mul(const LogRep& a, const LogRep& b);
  static LogRep pow(const LogRep& base, const LogRep& exponent);

  // -1 / 0 / +1, or nullopt when the estimates fall inside the declared
  // unreliability band.
  static std::optional<int> compare(const LogRep& a, const LogRep& b);

  LogRep normalized() const;
};

enum class Cmp { Less, Equal, Greater, Unknown };

// Nonnegative integer that switches from exact big-integer storage to a
// symbolic {+, *, ^} expression tree once the configured decimal digit
// budget is exceeded. Values above the budget never get materialized.
class TowerInt {
 public:
  static constexpr long kDefaultDigitBudget = 1'000'000;

  TowerInt() : TowerInt(0) {}
  TowerInt(long v, long digit_budget = kDefaultDigitBudget);
  TowerInt(const mpz_class& v, long digit_budget = kDefaultDigitBudget);

  static TowerInt from_string(const std::string& decimal,
                              long digit_budget = kDefaultDigitBudget);

  bool is_exact() const;
  // Only valid in exact mode.
  const mpz_class& exact_value() const;

  long digit_budget() const { return budget_; }

  TowerInt operator+(const TowerInt& rhs) const;
  TowerInt operator*(const TowerInt& rhs) const;
  // Raises to the power of `exp`; exp >= 0 required.
  TowerInt pow(const TowerInt& exp) const;

  // Exact when exact mode holds; +inf when even log10 of the value cannot be
  // held in a double (the full iterated-log estimate is kept internally).
  double log10_estimate() const;
  LogRep log_rep() const;

  // Certified comparison: Unknown only when symbolic estimates land in the
  // unreliability band and no structural rule applies.
  static Cmp compare(const TowerInt& a, const TowerInt& b);
  // Total order used for sorting and printing: certified result when
  // available, canonical-string tie-break otherwise.
  static int order(const TowerInt& a, const TowerInt& b);

  bool operator==(const TowerInt& rhs) const { return compare(*this, rhs) == Cmp::Equal; }
  bool certified_leq(const TowerInt& rhs) const {
    Cmp c = compare(*this, rhs);
    return c == Cmp::Less || c == Cmp::Equal;
  }

  // Exact decimal digits in exact mode; canonical tower expression such as
  // "4^80 + 5" in symbolic mode.
  std::string to_string() const;

  std::string canonical_key() const;

 private:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  explicit TowerInt(NodePtr node, long budget);

  static NodePtr make_exact(mpz_class v);
  static NodePtr make_add(std::vector<NodePtr> terms, long budget);
  static NodePtr make_mul(std::vector<NodePtr> factors, long budget);
  static NodePtr make_pow(NodePtr base, NodePtr exp, long budget);
  static std::optional<mpz_class> try_materialize(const NodePtr& node, long limit_digits);

  NodePtr node_;
  long budget_ = kDefaultDigitBudget;
};

enum class ProfileCertainty { Exact, UpperBound };

// (irr, mdeg, d) of a nonempty variety: component count, maximal component
// degree, maximal component dimension. The empty variety never gets a
// profile; callers use an explicit empty marker instead.
struct VarietyProfile {
  long irr = 1;
  long mdeg = 1;
  long d = 0;
  ProfileCertainty certainty = ProfileCertainty::Exact;

  VarietyProfile() = default;
  VarietyProfile(long irr_, long mdeg_, long d_,
                 ProfileCertainty c = ProfileCertainty::Exact);
};

// One step of the escape recursion:
// (x, y) -> (x^(2^x) * y^(x*2^x), y^(2^x)).  Requires x, y >= 1.
std::pair<TowerInt, TowerInt> f_step(const TowerInt& x, const TowerInt& y);

// n-fold iteration from (x, y); returns (x_n, y_n).
std::pair<TowerInt, TowerInt> f_iterate(const TowerInt& x, const TowerInt& y, long n);

// M(irr, mdeg, d) = sum_{i=0}^{d} x_i of the recursion started at (irr, mdeg).
TowerInt escape_bound(const VarietyProfile& profile,
                      long digit_budget = TowerInt::kDefaultDigitBudget);

struct CheckOutcome {
  enum class Status { Ok, PreconditionFailed, Undecided };
  Status status = Status::Ok;
  bool holds = false;
  std::string detail;

  static CheckOutcome ok(bool holds);
  static CheckOutcome precondition_failed(std::string detail);
  static CheckOutcome undecided(std::string detail);
};

// Monotonicity predicate: whether f_{a,b}(n) <= f_{A,B}(n+1) componentwise.
// Precondition (a,b) <= f_{A,B}(1): violations produce a
// precondition-failed outcome instead of an answer.
CheckOutcome check_f_monotone(const TowerInt& a, const TowerInt& b,
                              const TowerInt& big_a, const TowerInt& big_b,
                              long n);

// Bound decrement predicate: whether M(child) + parent.irr <= M(parent).
// Preconditions: child.d < parent.d and the child profile satisfies the
// intersection-tower inequalities relative to the parent.
CheckOutcome check_bound_decrement(const VarietyProfile& parent,
                                   const VarietyProfile& child,
                                   long digit_budget = TowerInt::kDefaultDigitBudget);

}  // namespace specrig
