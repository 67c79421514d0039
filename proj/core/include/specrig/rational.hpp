#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specrig/errors.hpp"

namespace specrig {

using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "p/q" or "p" (optional sign); denominator must be nonzero.
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& value);

using QVector = std::vector<Rational>;

// Dense matrix over Q. Row-major storage, exact arithmetic throughout.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  static QMatrix zero(std::size_t rows, std::size_t cols);
  static QMatrix from_strings(const std::vector<std::vector<std::string>>& entries);
  static QMatrix from_longs(const std::vector<std::vector<long>>& entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  QMatrix operator*(const QMatrix& rhs) const;
  QMatrix operator+(const QMatrix& rhs) const;
  QMatrix operator-(const QMatrix& rhs) const;
  QMatrix operator-() const;
  QMatrix scaled(const Rational& c) const;
  QVector apply(const QVector& v) const;

  bool operator==(const QMatrix& rhs) const;
  bool operator!=(const QMatrix& rhs) const { return !(*this == rhs); }

  QMatrix transpose() const;
  Rational det() const;
  Rational trace() const;
  // Throws DomainError if singular.
  QMatrix inverse() const;

  QMatrix pow(long e) const;  // negative exponents go through inverse()

  // Largest bit size over all numerators and denominators; used for entry
  // growth budgets during ball enumeration.
  std::size_t max_entry_bits() const;

  // Canonical key: entries in reduced form joined with separators. Two
  // matrices are equal iff their keys are equal.
  std::string canonical_key() const;

  Eigen::MatrixXd to_double() const;

  std::string to_pretty_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Solves A x = b exactly by Gauss-Jordan elimination. Returns false when the
// system is inconsistent; free variables are set to zero.
bool solve_linear(const QMatrix& a, const QVector& b, QVector& solution);

// Reduced row echelon basis of the right nullspace of a (rows are basis
// vectors of {x : a x = 0}).
std::vector<QVector> nullspace(const QMatrix& a);

QVector operator+(const QVector& a, const QVector& b);
QVector operator-(const QVector& a, const QVector& b);
QVector scaled(const QVector& v, const Rational& c);
bool is_zero(const QVector& v);

double to_double(const Rational& value);

}  // namespace specrig
