#include "specrig/rational.hpp"

#include <sstream>

namespace specrig {

Rational parse_rational(const std::string& text) {
  std::string trimmed;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) trimmed += c;
  if (trimmed.empty()) throw DomainError("empty rational literal");
  mpq_class q;
  if (q.set_str(trimmed, 10) != 0)
    throw DomainError("bad rational literal: " + text);
  if (q.get_den() == 0) throw DomainError("zero denominator: " + text);
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& value) {
  return value.get_str();
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

QMatrix QMatrix::zero(std::size_t rows, std::size_t cols) {
  return QMatrix(rows, cols);
}

QMatrix QMatrix::from_strings(const std::vector<std::vector<std::string>>& entries) {
  if (entries.empty()) return QMatrix();
  QMatrix m(entries.size(), entries[0].size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != m.cols()) throw DomainError("ragged matrix literal");
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = parse_rational(entries[i][j]);
  }
  return m;
}

QMatrix QMatrix::from_longs(const std::vector<std::vector<long>>& entries) {
  if (entries.empty()) return QMatrix();
  QMatrix m(entries.size(), entries[0].size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].size() != m.cols()) throw DomainError("ragged matrix literal");
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entries[i][j];
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw DomainError("matrix product shape mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& aik = at(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out.at(i, j) += aik * rhs.at(k, j);
    }
  return out;
}

QMatrix QMatrix::operator+(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix sum shape mismatch");
  QMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + rhs.data_[i];
  return out;
}

QMatrix QMatrix::operator-(const QMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DomainError("matrix diff shape mismatch");
  QMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

QMatrix QMatrix::operator-() const {
  QMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = -data_[i];
  return out;
}

QMatrix QMatrix::scaled(const Rational& c) const {
  QMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] * c;
  return out;
}

QVector QMatrix::apply(const QVector& v) const {
  if (v.size() != cols_) throw DomainError("matrix-vector shape mismatch");
  QVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i] += at(i, j) * v[j];
  return out;
}

bool QMatrix::operator==(const QMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

QMatrix QMatrix::transpose() const {
  QMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

Rational QMatrix::trace() const {
  if (!is_square()) throw DomainError("trace of non-square matrix");
  Rational t = 0;
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

Rational QMatrix::det() const {
  if (!is_square()) throw DomainError("det of non-square matrix");
  QMatrix work = *this;
  std::size_t n = rows_;
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(work.at(pivot, j), work.at(col, j));
      det = -det;
    }
    det *= work.at(col, col);
    Rational inv = 1 / work.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (work.at(r, col) == 0) continue;
      Rational f = work.at(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) work.at(r, j) -= f * work.at(col, j);
    }
  }
  return det;
}

QMatrix QMatrix::inverse() const {
  if (!is_square()) throw DomainError("inverse of non-square matrix");
  std::size_t n = rows_;
  QMatrix work = *this;
  QMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw DomainError("matrix is singular");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    Rational p = 1 / work.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      work.at(col, j) *= p;
      inv.at(col, j) *= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work.at(r, col) == 0) continue;
      Rational f = work.at(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        work.at(r, j) -= f * work.at(col, j);
        inv.at(r, j) -= f * inv.at(col, j);
      }
    }
  }
  return inv;
}

QMatrix QMatrix::pow(long e) const {
  if (!is_square()) throw DomainError("pow of non-square matrix");
  if (e < 0) return inverse().pow(-e);
  QMatrix result = identity(rows_);
  QMatrix base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::size_t QMatrix::max_entry_bits() const {
  std::size_t bits = 0;
  for (const Rational& q : data_) {
    bits = std::max(bits, mpz_sizeinbase(q.get_num().get_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(q.get_den().get_mpz_t(), 2));
  }
  return bits;
}

std::string QMatrix::canonical_key() const {
  std::string key;
  key += std::to_string(rows_) + "x" + std::to_string(cols_) + ":";
  for (const Rational& q : data_) {
    key += q.get_str();
    key += ",";
  }
  return key;
}

Eigen::MatrixXd QMatrix::to_double() const {
  Eigen::MatrixXd out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(i, j) = at(i, j).get_d();
  return out;
}

std::string QMatrix::to_pretty_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      os << at(i, j).get_str();
      if (j + 1 < cols_) os << ",";
    }
    os << "]";
    if (i + 1 < rows_) os << ",";
  }
  os << "]";
  return os.str();
}

namespace {

// Gauss-Jordan on an augmented system; returns pivot columns.
std::vector<std::size_t> row_reduce(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(row, j));
    Rational p = 1 / m.at(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(row, j) *= p;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      Rational f = m.at(r, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

bool solve_linear(const QMatrix& a, const QVector& b, QVector& solution) {
  if (b.size() != a.rows()) throw DomainError("solve_linear shape mismatch");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  std::vector<std::size_t> pivots = row_reduce(aug);
  // Inconsistent iff a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == a.cols()) return false;
  solution.assign(a.cols(), Rational(0));
  for (std::size_t r = 0; r < pivots.size(); ++r)
    solution[pivots[r]] = aug.at(r, a.cols());
  return true;
}

std::vector<QVector> nullspace(const QMatrix& a) {
  QMatrix m = a;
  std::vector<std::size_t> pivots = row_reduce(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    QVector v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -m.at(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

QVector operator+(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DomainError("vector sum shape mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

QVector operator-(const QVector& a, const QVector& b) {
  if (a.size() != b.size()) throw DomainError("vector diff shape mismatch");
  QVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

QVector scaled(const QVector& v, const Rational& c) {
  QVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * c;
  return out;
}

bool is_zero(const QVector& v) {
  for (const Rational& q : v)
    if (q != 0) return false;
  return true;
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace specrig
