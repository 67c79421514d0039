#pragma once

#include <memory>
#include <string>

#include "specrig/groebner.hpp"
#include "specrig/rational.hpp"

namespace specrig {

enum class AmbientKind { SpecialLinear, Affine, Product };

// Ambient algebraic group written in matrix-entry coordinates x_i_j
// (1-based, row-major). Every group element must satisfy the defining ideal
// exactly.
//
//   SpecialLinear(n): n x n, det = 1
//   Affine(n):        SL(n) |x R^n in (n+1) x (n+1) block form [A X; 0 1]
//   Product(n):       block-diagonal image [g 0; 0 h] of SL(n) x SL(n)
class AmbientGroup {
 public:
  static std::shared_ptr<const AmbientGroup> special_linear(long n);
  static std::shared_ptr<const AmbientGroup> affine(long n);
  static std::shared_ptr<const AmbientGroup> product(long n);

  AmbientKind kind() const { return kind_; }
  long n() const { return n_; }
  // Size of the matrices actually stored: n, n+1, or 2n.
  long matrix_size() const { return size_; }

  const RingPtr& ring() const { return ring_; }
  const Ideal& defining_ideal() const { return defining_; }

  std::size_t var_index(long row, long col) const;  // 0-based row/col

  bool contains(const QMatrix& m) const;
  void require_member(const QMatrix& m) const;  // throws DomainError

  // Parses the polynomial grammar over this ambient's variables; in the
  // affine ambient t_k aliases the translation entry x_k_(n+1).
  Polynomial parse(const std::string& text) const;
  std::vector<Polynomial> parse_lines(const std::string& text) const;

  std::string kind_string() const;

 private:
  AmbientGroup(AmbientKind kind, long n);

  AmbientKind kind_;
  long n_;
  long size_;
  RingPtr ring_;
  Ideal defining_;
};

using AmbientPtr = std::shared_ptr<const AmbientGroup>;

// Determinant of the submatrix of variables rows x cols as a polynomial
// (cofactor expansion; intended for small blocks).
Polynomial symbolic_det(const RingPtr& ring,
                        const std::vector<std::vector<std::size_t>>& var_indices);

}  // namespace specrig
