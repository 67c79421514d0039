#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specrig/poly.hpp"

namespace specrig {

struct GroebnerOptions {
  // Reduction-step cap across the whole Buchberger run; exceeding it aborts
  // the computation instead of returning a wrong answer.
  long max_steps = 2'000'000;
};

// Full normal form of p modulo basis: no term of the result is divisible by
// any leading term of the basis.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& basis,
                       long* step_budget = nullptr);

// Reduced Groebner basis under the ring's order: Buchberger with
// sugar-strategy pair selection, coefficient normalization to content-free
// integer form, leading coefficients positive, sorted by leading monomial
// descending.
std::vector<Polynomial> buchberger(const RingPtr& ring, std::vector<Polynomial> gens,
                                   const GroebnerOptions& options = {});

// All S-polynomials of the basis reduce to zero.
bool verify_groebner(const std::vector<Polynomial>& basis);

// Finitely generated ideal with its monomial order and a reduced-basis cache.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  MonomialOrder order() const { return ring_->order(); }

  const std::vector<Polynomial>& groebner_basis(const GroebnerOptions& options = {}) const;
  bool has_cached_basis() const { return cache_.has_value(); }

  bool contains(const Polynomial& p, const GroebnerOptions& options = {}) const;
  bool is_unit(const GroebnerOptions& options = {}) const;
  bool is_zero_ideal() const;

  // True when the point satisfies every generator (no basis needed).
  bool vanishes_at(const QVector& point) const;

  Ideal with_order(MonomialOrder order) const;
  // Union of generator sets (same variables required).
  Ideal joined(const Ideal& other) const;
  bool same_ideal(const Ideal& other, const GroebnerOptions& options = {}) const;

  long max_generator_degree() const;
  // Product of generator degrees (>= 1 each); the generalized-Bezout input.
  long generator_degree_product() const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  mutable std::optional<std::vector<Polynomial>> cache_;
};

// Krull dimension of the affine variety via maximal independent variable
// sets modulo the leading-term ideal; nullopt marks the empty variety.
std::optional<long> dimension(const Ideal& ideal, const GroebnerOptions& options = {});

// Degree read from the Hilbert series of the leading-term ideal under
// grevlex. Affine convention; unit ideals are a domain error.
long degree(const Ideal& ideal, const GroebnerOptions& options = {});

// dimension + degree from one Hilbert-series pass (grevlex).
std::pair<long, long> hilbert_dimension_degree(const Ideal& ideal,
                                               const GroebnerOptions& options = {});

struct DecomposeResult {
  bool supported = false;
  std::vector<Ideal> components;
  std::string reason;  // set when unsupported
};

// Component decomposition on the supported class: principal ideals whose
// generator factors over Q by content extraction, rational roots,
// quadratics and homogeneous-bivariate reduction; and zero-dimensional
// ideals in shape position. Components share the input's radical.
DecomposeResult decompose(const Ideal& ideal, const GroebnerOptions& options = {});

// Irreducible factors over Q (multiplicities dropped) for the supported
// class; nullopt when the polynomial falls outside it.
std::optional<std::vector<Polynomial>> factor_supported(const Polynomial& p);

// Roots with multiplicities of a univariate polynomial given by dense
// coefficients (index = power), when it splits completely over Q; nullopt
// when it does not split or root search is infeasible.
std::optional<std::vector<std::pair<Rational, long>>> rational_roots_full_split(
    const std::vector<Rational>& coefficients);

}  // namespace specrig
