#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "specrig/rational.hpp"

namespace specrig {

enum class MonomialOrder { Lex, GrevLex };

// Exponent vector over the ring's variables.
using Monomial = std::vector<int>;

long total_degree(const Monomial& m);
bool monomial_divides(const Monomial& a, const Monomial& b);  // a | b
Monomial monomial_mul(const Monomial& a, const Monomial& b);
Monomial monomial_div(const Monomial& a, const Monomial& b);  // requires b | a
Monomial monomial_lcm(const Monomial& a, const Monomial& b);
// < 0, 0, > 0 like strcmp; descending sort uses compare(a,b) > 0 first.
int monomial_compare(const Monomial& a, const Monomial& b, MonomialOrder order);

// Variable names plus the monomial order that canonicalizes term storage.
class PolyRing {
 public:
  PolyRing(std::vector<std::string> variables, MonomialOrder order);

  const std::vector<std::string>& variables() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  MonomialOrder order() const { return order_; }
  std::optional<std::size_t> variable_index(const std::string& name) const;

  bool operator==(const PolyRing& rhs) const {
    return vars_ == rhs.vars_ && order_ == rhs.order_;
  }

 private:
  std::vector<std::string> vars_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

RingPtr make_ring(std::vector<std::string> variables,
                  MonomialOrder order = MonomialOrder::GrevLex);

// Multivariate polynomial with exact rational coefficients. Terms are kept
// sorted descending in the ring's monomial order with no zero coefficients,
// so the representation is canonical per (variable order, monomial order).
class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].mono) == 0);
  }
  long degree() const;  // total degree; -1 for the zero polynomial

  const Term& leading_term() const;

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(long e) const;

  bool operator==(const Polynomial& rhs) const;
  bool operator!=(const Polynomial& rhs) const { return !(*this == rhs); }

  // Clears denominators and content, makes the leading coefficient positive.
  Polynomial normalized_integer() const;
  // Leading coefficient 1.
  Polynomial monic() const;

  // Exact evaluation; point length must equal the variable count.
  Rational evaluate(const QVector& point) const;

  // Substitutes images[i] for variable i. All images must share a target ring.
  Polynomial substitute(const std::vector<Polynomial>& images) const;

  // Same polynomial re-sorted under another ring (same variables required).
  Polynomial with_ring(const RingPtr& ring) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;  // sorted descending, canonical

  void sort_and_combine(std::vector<Term>&& raw);
};

// Parses the polynomial grammar: variables, integer/rational literals `p/q`,
// operators + - * ^ and parentheses; whitespace insignificant.
Polynomial parse_polynomial(const RingPtr& ring, const std::string& text);

// Ideal files: one polynomial per line, `#` starts a comment.
std::vector<Polynomial> parse_polynomial_lines(const RingPtr& ring, const std::string& text);

}  // namespace specrig
