#include "specrig/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "specrig/groebner.hpp"

namespace specrig {

CartanVector cartan(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  CartanVector out;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    double s = sv(i);
    if (!(s > 0.0) || !std::isfinite(s))
      throw PrecisionLoss("singular value out of range in cartan projection");
    out.entries.push_back(std::log(s));
  }
  std::sort(out.entries.begin(), out.entries.end(), std::greater<double>());
  return out;
}

CartanVector cartan(const QMatrix& g) { return cartan(g.to_double()); }

namespace {

// Parlett-Reinsch balancing: diagonal similarity scaling by powers of two;
// improves eigenvalue accuracy for badly scaled conjugates. Returns the
// scaling D with balanced = D^{-1} A D.
Eigen::MatrixXd balance(Eigen::MatrixXd& a, Eigen::VectorXd* scaling = nullptr) {
  const double radix = 2.0;
  Eigen::Index n = a.rows();
  Eigen::VectorXd d = Eigen::VectorXd::Ones(n);
  bool converged = false;
  int guard = 0;
  while (!converged && ++guard < 100) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = a.col(i).cwiseAbs().sum() - std::abs(a(i, i));
      double r = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      double s = c + r;
      while (c < r / radix) {
        c *= radix;
        r /= radix;
        f *= radix;
      }
      while (c > r * radix) {
        c /= radix;
        r *= radix;
        f /= radix;
      }
      if ((c + r) < 0.95 * s && f != 1.0) {
        converged = false;
        d(i) *= f;
        a.col(i) *= f;
        a.row(i) /= f;
      }
    }
  }
  if (scaling) *scaling = d;
  return a;
}

}  // namespace

JordanVector jordan(const Eigen::MatrixXd& g, double gap_tol) {
  Eigen::MatrixXd balanced = g;
  balance(balanced);
  Eigen::EigenSolver<Eigen::MatrixXd> es(balanced, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw PrecisionLoss("eigenvalue solver did not converge");
  JordanVector out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double m = std::abs(es.eigenvalues()(i));
    if (!(m > 0.0) || !std::isfinite(m))
      throw PrecisionLoss("eigenvalue modulus out of range in jordan projection");
    out.entries.push_back(std::log(m));
  }
  std::sort(out.entries.begin(), out.entries.end(), std::greater<double>());
  out.gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < out.entries.size(); ++i)
    out.gap = std::min(out.gap, out.entries[i] - out.entries[i + 1]);
  if (out.entries.size() <= 1) out.gap = std::numeric_limits<double>::infinity();
  out.loxodromic = out.gap > gap_tol;
  return out;
}

// For exact input the characteristic polynomial is computed exactly, so the
// log-moduli come from a companion-matrix root solve whose input is
// identical across conjugate matrices. This keeps conjugation invariance at
// root-solver accuracy regardless of how non-normal the matrix is.
JordanVector jordan(const QMatrix& g, double gap_tol) {
  if (!g.is_square()) throw DomainError("jordan needs a square matrix");
  std::size_t n = g.rows();
  if (n == 0) return JordanVector{};
  QVector e = wedge_traces_exact(g);
  // monic characteristic polynomial p(x) = sum_k (-1)^k e_k x^(n-k), so the
  // coefficient of x^j is c_j = (-1)^(n-j) e_(n-j); companion last column
  // holds -c_j at row j
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    double cj = e[n - j].get_d() * ((n - j) % 2 == 0 ? 1.0 : -1.0);
    comp(j, n - 1) = -cj;
  }
  return jordan(comp, gap_tol);
}

// ---------------------------------------------------------------------------
// Faddeev-LeVerrier elementary symmetric functions
// ---------------------------------------------------------------------------

std::vector<double> wedge_traces(const Eigen::MatrixXd& b) {
  Eigen::Index n = b.rows();
  std::vector<double> e(n + 1);
  e[0] = 1.0;
  Eigen::MatrixXd m = b;
  double c = m.trace();
  for (long k = 1; k <= n; ++k) {
    e[k] = (k % 2 == 1 ? c : -c);
    if (k == n) break;
    m = b * (m - c * Eigen::MatrixXd::Identity(n, n));
    c = m.trace() / static_cast<double>(k + 1);
  }
  return e;
}

QVector wedge_traces_exact(const QMatrix& b) {
  if (!b.is_square()) throw DomainError("wedge_traces needs a square matrix");
  std::size_t n = b.rows();
  QVector e(n + 1);
  e[0] = 1;
  QMatrix m = b;
  Rational c = m.trace();
  for (std::size_t k = 1; k <= n; ++k) {
    e[k] = (k % 2 == 1) ? c : -c;
    if (k == n) break;
    QMatrix shift = m;
    for (std::size_t i = 0; i < n; ++i) shift.at(i, i) -= c;
    m = b * shift;
    c = m.trace() / Rational(static_cast<long>(k) + 1);
  }
  return e;
}

// ---------------------------------------------------------------------------
// Margulis-Smilga invariant
// ---------------------------------------------------------------------------

namespace {

// P_A(x) = sum_k (-1)^(d-k) tr(wedge^(d-k)(I-A)) x^k evaluated at the
// operator (I-A), applied to X.
Eigen::VectorXd apply_pa(const Eigen::MatrixXd& ia, const std::vector<double>& e, long d,
                         const Eigen::VectorXd& x) {
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd power = x;  // (I-A)^k X
  for (long k = 0; k <= d; ++k) {
    double coeff = e[d - k] * ((d - k) % 2 == 0 ? 1.0 : -1.0);
    acc += coeff * power;
    if (k < d) power = ia * power;
  }
  return acc;
}

QVector apply_pa_exact(const QMatrix& ia, const QVector& e, long d, const QVector& x) {
  QVector acc(x.size(), Rational(0));
  QVector power = x;
  for (long k = 0; k <= d; ++k) {
    Rational coeff = e[d - k];
    if ((d - k) % 2 == 1) coeff = -coeff;
    for (std::size_t i = 0; i < x.size(); ++i) acc[i] += coeff * power[i];
    if (k < d) power = ia.apply(power);
  }
  return acc;
}

double form_value(const Eigen::VectorXd& v, const Eigen::MatrixXd* q) {
  if (!q) return v.squaredNorm();
  return v.dot((*q) * v);
}

Rational form_value_exact(const QVector& v, const QMatrix* q) {
  Rational s = 0;
  if (!q) {
    for (const Rational& c : v) s += c * c;
    return s;
  }
  QVector qv = q->apply(v);
  for (std::size_t i = 0; i < v.size(); ++i) s += v[i] * qv[i];
  return s;
}

void fix_column_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index imax = 0;
    for (Eigen::Index i = 1; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > std::abs(m(imax, j))) imax = i;
    if (m(imax, j) < 0) m.col(j) = -m.col(j);
  }
}

}  // namespace

MargulisInvariant margulis_invariant(const AffineElement& e, const WeightSpaceSpec& spec) {
  long n = e.dim();
  Eigen::MatrixXd a = e.linear().to_double();
  Eigen::VectorXd x(n);
  for (long i = 0; i < n; ++i) x(i) = e.translation()[i].get_d();

  Eigen::MatrixXd balanced_a = a;
  Eigen::VectorXd scaling;
  balance(balanced_a, &scaling);
  Eigen::EigenSolver<Eigen::MatrixXd> es(balanced_a);
  if (es.info() != Eigen::Success) throw PrecisionLoss("eigenvalue solver did not converge");

  struct Eig {
    std::complex<double> lambda;
    Eigen::VectorXcd vec;
  };
  std::vector<Eig> eigs;
  for (long i = 0; i < n; ++i) {
    Eigen::VectorXcd v = es.eigenvectors().col(i);
    for (long r = 0; r < n; ++r) v(r) *= scaling(r);  // undo the balancing
    v.normalize();
    eigs.push_back({es.eigenvalues()(i), std::move(v)});
  }
  std::stable_sort(eigs.begin(), eigs.end(), [](const Eig& l, const Eig& r) {
    double ml = std::abs(l.lambda), mr = std::abs(r.lambda);
    if (std::abs(ml - mr) > 1e-14) return ml > mr;
    return l.lambda.real() > r.lambda.real();
  });

  MargulisInvariant out;
  long k = 0;  // dim V0
  for (const Eig& eg : eigs) {
    double mod = std::abs(eg.lambda);
    if (std::abs(mod - 1.0) <= spec.gap_tol) {
      if (std::abs(eg.lambda - std::complex<double>(1.0, 0.0)) <= 1e-6) {
        ++k;
      } else {
        out.elliptic_flagged = true;  // -1 or unit-circle block goes to V^{!=0}
      }
    }
  }
  long d = n - k;
  if (d == 0 || k + d != n)
    throw DomainError("margulis invariant needs a loxodromic linear part");
  if (spec.zero_weight_dim >= 0 && spec.zero_weight_dim != k)
    throw DomainError("declared zero-weight dimension does not match the eigenvalue split");

  // V0 basis: kernel of (A - I), orthonormal via SVD
  Eigen::MatrixXd ai = a - Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(ai, Eigen::ComputeFullV);
  double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  long kernel_dim = 0;
  for (long i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) <= std::max(1e-12, 1e-10 * smax)) ++kernel_dim;
  if (kernel_dim != k)
    throw PrecisionLoss("zero-weight block is not diagonalizable within tolerance");
  Eigen::MatrixXd b = svd.matrixV().rightCols(k);
  fix_column_signs(b);

  // h columns in nonincreasing eigenvalue-modulus order; the V0 block sits
  // where the unit-modulus eigenvalues sit
  Eigen::MatrixXd h(n, n);
  std::vector<long> v0_positions;
  long col = 0, used_v0 = 0;
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const Eig& eg = eigs[i];
    double mod = std::abs(eg.lambda);
    bool is_v0 = std::abs(mod - 1.0) <= spec.gap_tol &&
                 std::abs(eg.lambda - std::complex<double>(1.0, 0.0)) <= 1e-6;
    if (is_v0) {
      if (used_v0 < k) {
        h.col(col) = b.col(used_v0);
        v0_positions.push_back(col);
        ++used_v0;
        ++col;
      }
      continue;
    }
    if (std::abs(eg.lambda.imag()) > 1e-12) {
      if (eg.lambda.imag() < 0) continue;  // one realified pair per conjugate pair
      Eigen::VectorXd re = eg.vec.real(), im = eg.vec.imag();
      re.normalize();
      im.normalize();
      h.col(col++) = re;
      h.col(col++) = im;
    } else {
      Eigen::VectorXd re = eg.vec.real();
      re.normalize();
      h.col(col++) = re;
    }
  }
  if (col != n) throw PrecisionLoss("eigenbasis assembly failed");
  fix_column_signs(h);
  // the V0 columns keep the SVD kernel basis exactly
  for (std::size_t i = 0; i < v0_positions.size(); ++i) h.col(v0_positions[i]) = b.col(i);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(h);
  if (!lu.isInvertible()) throw PrecisionLoss("eigenbasis is numerically singular");
  Eigen::VectorXd coords = lu.solve(x);

  out.vector.resize(k);
  Eigen::VectorXd model = Eigen::VectorXd::Zero(n);
  for (long i = 0; i < k; ++i) {
    out.vector[i] = coords(v0_positions[i]);
    model(v0_positions[i]) = coords(v0_positions[i]);
  }
  Eigen::VectorXd element = b * Eigen::Map<Eigen::VectorXd>(out.vector.data(), k);

  std::optional<Eigen::MatrixXd> qd;
  if (spec.invariant_form) qd = spec.invariant_form->to_double();
  out.norm = std::sqrt(std::abs(form_value(element, qd ? &*qd : nullptr)));
  out.h = h;
  out.zero_weight_basis = b;

  // polynomial identity cross-check: P_A(I-A)X = P_A(0) R_h M
  std::vector<double> e_syms = wedge_traces(Eigen::MatrixXd(-ai));  // I - A
  double p0 = e_syms[d] * (d % 2 == 0 ? 1.0 : -1.0);
  if (std::abs(p0) <= 1e-12 * (1.0 + std::abs(e_syms[d]))) {
    out.status = MargulisInvariant::Status::Degenerate;
    return out;
  }
  Eigen::VectorXd lhs = apply_pa(-ai, e_syms, d, x);
  Eigen::VectorXd rhs = p0 * (h * model);
  double denom = std::max(rhs.norm(), 1e-12);
  out.identity_residual = (lhs - rhs).norm() / denom;
  return out;
}

std::optional<ExactMargulis> margulis_invariant_exact(const AffineElement& e,
                                                      const WeightSpaceSpec& spec) {
  long n = e.dim();
  const QMatrix& a = e.linear();
  // characteristic polynomial p(t) = sum_k (-1)^k e_k t^(n-k)
  QVector esym = wedge_traces_exact(a);
  std::vector<Rational> coeffs(n + 1);
  for (long k = 0; k <= n; ++k) {
    Rational c = esym[n - k];  // coefficient of t^k
    if ((n - k) % 2 == 1) c = -c;
    coeffs[k] = c;
  }
  auto roots = rational_roots_full_split(coeffs);
  if (!roots) return std::nullopt;

  struct Block {
    Rational lambda;
    std::vector<QVector> basis;
  };
  std::vector<Block> blocks;
  for (const auto& [lambda, mult] : *roots) {
    QMatrix shifted = a;
    for (long i = 0; i < n; ++i) shifted.at(i, i) -= lambda;
    std::vector<QVector> basis = nullspace(shifted);
    if (static_cast<long>(basis.size()) != mult) return std::nullopt;  // not diagonalizable
    blocks.push_back({lambda, std::move(basis)});
  }
  std::sort(blocks.begin(), blocks.end(), [](const Block& l, const Block& r) {
    Rational ml = abs(l.lambda), mr = abs(r.lambda);
    if (ml != mr) return ml > mr;
    return l.lambda > r.lambda;
  });

  QMatrix h(n, n);
  std::vector<long> v0_positions;
  std::vector<QVector> zero_basis;
  long col = 0;
  for (const Block& blk : blocks) {
    for (const QVector& v : blk.basis) {
      for (long i = 0; i < n; ++i) h.at(i, col) = v[i];
      if (blk.lambda == 1) {
        v0_positions.push_back(col);
        zero_basis.push_back(v);
      }
      ++col;
    }
  }
  long k = static_cast<long>(v0_positions.size());
  if (n - k == 0) throw DomainError("margulis invariant needs a loxodromic linear part");
  if (spec.zero_weight_dim >= 0 && spec.zero_weight_dim != k)
    throw DomainError("declared zero-weight dimension does not match the eigenvalue split");

  QVector coords;
  QMatrix hinv = h.inverse();
  coords = hinv.apply(e.translation());

  ExactMargulis out;
  out.vector.resize(k);
  QVector element(n, Rational(0));
  for (long i = 0; i < k; ++i) {
    out.vector[i] = coords[v0_positions[i]];
    for (long r = 0; r < n; ++r) element[r] += out.vector[i] * zero_basis[i][r];
  }
  out.zero_basis = std::move(zero_basis);
  const QMatrix* form = spec.invariant_form ? &*spec.invariant_form : nullptr;
  out.norm_squared = form_value_exact(element, form);
  return out;
}

std::optional<Rational> margulis_norm_squared_exact(const AffineElement& e, long zero_weight_dim,
                                                    const QMatrix* form) {
  long n = e.dim();
  if (zero_weight_dim < 0 || zero_weight_dim > n)
    throw DomainError("zero-weight dimension out of range");
  long d = n - zero_weight_dim;
  QMatrix ia = QMatrix::identity(n) - e.linear();
  QVector esym = wedge_traces_exact(ia);
  Rational p0 = esym[d];
  if (d % 2 == 1) p0 = -p0;
  if (p0 == 0) return std::nullopt;  // degenerate weight structure
  QVector r = apply_pa_exact(ia, esym, d, e.translation());
  Rational val = form_value_exact(r, form);
  return val / (p0 * p0);
}

MargulisNorm margulis_norm(const AffineElement& e, const WeightSpaceSpec& spec) {
  long n = e.dim();
  long k = spec.zero_weight_dim;
  if (k < 0) {
    // read the split off the eigenvalue moduli
    Eigen::EigenSolver<Eigen::MatrixXd> es(e.linear().to_double(), false);
    if (es.info() != Eigen::Success) throw PrecisionLoss("eigenvalue solver did not converge");
    k = 0;
    for (long i = 0; i < n; ++i) {
      std::complex<double> l = es.eigenvalues()(i);
      if (std::abs(std::abs(l) - 1.0) <= spec.gap_tol &&
          std::abs(l - std::complex<double>(1.0, 0.0)) <= 1e-6)
        ++k;
    }
  }
  if (n - k == 0) throw DomainError("margulis norm needs a loxodromic linear part");

  MargulisNorm out;
  const QMatrix* form = spec.invariant_form ? &*spec.invariant_form : nullptr;
  auto exact = margulis_norm_squared_exact(e, k, form);
  if (!exact) {
    out.status = MargulisNorm::Status::Degenerate;
    return out;
  }
  out.value = std::sqrt(std::abs(exact->get_d()));
  return out;
}

// ---------------------------------------------------------------------------
// Zero-set functionals
// ---------------------------------------------------------------------------

namespace {

void require_even_square(const QMatrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0)
    throw DomainError("block functional needs an even square matrix");
}

}  // namespace

Rational functional_A_exact(const QMatrix& block) {
  require_even_square(block);
  std::size_t n = block.rows() / 2;
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s += block.at(i, j) * block.at(i, j);
      s -= block.at(n + i, n + j) * block.at(n + i, n + j);
    }
  return s;
}

double functional_A(const Eigen::MatrixXd& block) {
  Eigen::Index n = block.rows() / 2;
  return block.topLeftCorner(n, n).squaredNorm() - block.bottomRightCorner(n, n).squaredNorm();
}

Rational functional_P_exact(const QMatrix& block) {
  require_even_square(block);
  std::size_t n = block.rows() / 2;
  Rational s = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s += block.at(i, j) * block.at(j, i);
      s -= block.at(n + i, n + j) * block.at(n + j, n + i);
    }
  return s;
}

double functional_P(const Eigen::MatrixXd& block) {
  Eigen::Index n = block.rows() / 2;
  Eigen::MatrixXd a = block.topLeftCorner(n, n);
  Eigen::MatrixXd b = block.bottomRightCorner(n, n);
  return (a * a).trace() - (b * b).trace();
}

QVector functional_R_exact(const QMatrix& affine_block, long d) {
  AffineElement e = AffineElement::from_embedded(affine_block);
  long n = e.dim();
  if (d < 0 || d > n) throw DomainError("functional R: bad nonzero-weight dimension");
  QMatrix ia = QMatrix::identity(n) - e.linear();
  QVector esym = wedge_traces_exact(ia);
  return apply_pa_exact(ia, esym, d, e.translation());
}

Rational functional_R_norm2_exact(const QMatrix& affine_block, long d, const QMatrix* form) {
  return form_value_exact(functional_R_exact(affine_block, d), form);
}

Rational functional_E_exact(const QMatrix& pair_block, long d, const QMatrix* form) {
  require_even_square(pair_block);
  std::size_t half = pair_block.rows() / 2;
  QMatrix b11(half, half), b22(half, half);
  for (std::size_t i = 0; i < half; ++i)
    for (std::size_t j = 0; j < half; ++j) {
      b11.at(i, j) = pair_block.at(i, j);
      b22.at(i, j) = pair_block.at(half + i, half + j);
    }
  AffineElement e1 = AffineElement::from_embedded(b11);
  AffineElement e2 = AffineElement::from_embedded(b22);
  long n = e1.dim();
  QMatrix ia1 = QMatrix::identity(n) - e1.linear();
  QMatrix ia2 = QMatrix::identity(n) - e2.linear();
  QVector es1 = wedge_traces_exact(ia1);
  QVector es2 = wedge_traces_exact(ia2);
  Rational p01 = es1[d], p02 = es2[d];
  if (d % 2 == 1) {
    p01 = -p01;
    p02 = -p02;
  }
  QVector r1 = apply_pa_exact(ia1, es1, d, e1.translation());
  QVector r2 = apply_pa_exact(ia2, es2, d, e2.translation());
  return p01 * p01 * form_value_exact(r2, form) - p02 * p02 * form_value_exact(r1, form);
}

Ideal zero_set_A_ideal(const AmbientPtr& product_ambient) {
  if (product_ambient->kind() != AmbientKind::Product)
    throw DomainError("Z_A lives over the product ambient");
  long n = product_ambient->n();
  const RingPtr& ring = product_ambient->ring();
  Polynomial p = Polynomial::zero(ring);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Polynomial upper = Polynomial::variable(ring, product_ambient->var_index(i, j));
      Polynomial lower = Polynomial::variable(ring, product_ambient->var_index(n + i, n + j));
      p = p + upper * upper - lower * lower;
    }
  return Ideal(ring, {p});
}

Ideal zero_set_P_ideal(const AmbientPtr& product_ambient) {
  if (product_ambient->kind() != AmbientKind::Product)
    throw DomainError("Z_P lives over the product ambient");
  long n = product_ambient->n();
  const RingPtr& ring = product_ambient->ring();
  Polynomial p = Polynomial::zero(ring);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Polynomial u1 = Polynomial::variable(ring, product_ambient->var_index(i, j));
      Polynomial u2 = Polynomial::variable(ring, product_ambient->var_index(j, i));
      Polynomial l1 = Polynomial::variable(ring, product_ambient->var_index(n + i, n + j));
      Polynomial l2 = Polynomial::variable(ring, product_ambient->var_index(n + j, n + i));
      p = p + u1 * u2 - l1 * l2;
    }
  return Ideal(ring, {p});
}

namespace {

using PolyMatrix = std::vector<std::vector<Polynomial>>;

PolyMatrix poly_mul(const PolyMatrix& a, const PolyMatrix& b) {
  long n = static_cast<long>(a.size());
  PolyMatrix out(n, std::vector<Polynomial>(n, Polynomial::zero(a[0][0].ring())));
  for (long i = 0; i < n; ++i)
    for (long k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (long j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        out[i][j] = out[i][j] + a[i][k] * b[k][j];
      }
    }
  return out;
}

Polynomial poly_trace(const PolyMatrix& a) {
  Polynomial t = Polynomial::zero(a[0][0].ring());
  for (std::size_t i = 0; i < a.size(); ++i) t = t + a[i][i];
  return t;
}

}  // namespace

Ideal zero_set_R_ideal(const AmbientPtr& affine_ambient, long d) {
  if (affine_ambient->kind() != AmbientKind::Affine)
    throw DomainError("Z_R lives over the affine ambient");
  long n = affine_ambient->n();
  if (d < 0 || d > n) throw DomainError("Z_R: bad nonzero-weight dimension");
  const RingPtr& ring = affine_ambient->ring();

  // IA = I - A over the polynomial ring
  PolyMatrix ia(n, std::vector<Polynomial>(n, Polynomial::zero(ring)));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      Polynomial entry = -Polynomial::variable(ring, affine_ambient->var_index(i, j));
      if (i == j) entry = entry + Polynomial::constant(ring, 1);
      ia[i][j] = entry;
    }

  // elementary symmetric functions by Faddeev-LeVerrier over the poly ring
  std::vector<Polynomial> esym(n + 1, Polynomial::zero(ring));
  esym[0] = Polynomial::constant(ring, 1);
  PolyMatrix m = ia;
  Polynomial c = poly_trace(m);
  for (long k = 1; k <= n; ++k) {
    esym[k] = (k % 2 == 1) ? c : -c;
    if (k == n) break;
    PolyMatrix shifted = m;
    for (long i = 0; i < n; ++i) shifted[i][i] = shifted[i][i] - c;
    m = poly_mul(ia, shifted);
    c = poly_trace(m).scaled(Rational(1, k + 1));
  }

  // X column
  std::vector<Polynomial> x(n, Polynomial::zero(ring));
  for (long i = 0; i < n; ++i) x[i] = Polynomial::variable(ring, affine_ambient->var_index(i, n));

  std::vector<Polynomial> acc(n, Polynomial::zero(ring));
  std::vector<Polynomial> power = x;
  for (long k = 0; k <= d; ++k) {
    Polynomial coeff = esym[d - k];
    if ((d - k) % 2 == 1) coeff = -coeff;
    for (long i = 0; i < n; ++i) acc[i] = acc[i] + coeff * power[i];
    if (k < d) {
      std::vector<Polynomial> next(n, Polynomial::zero(ring));
      for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
          if (!ia[i][j].is_zero() && !power[j].is_zero())
            next[i] = next[i] + ia[i][j] * power[j];
      power = std::move(next);
    }
  }
  std::vector<Polynomial> gens;
  for (long i = 0; i < n; ++i)
    if (!acc[i].is_zero()) gens.push_back(acc[i].normalized_integer());
  return Ideal(ring, std::move(gens));
}

// ---------------------------------------------------------------------------
// Spectrum tables
// ---------------------------------------------------------------------------

std::string invariant_name(InvariantKind kind) {
  switch (kind) {
    case InvariantKind::Cartan: return "cartan";
    case InvariantKind::Jordan: return "jordan";
    case InvariantKind::Margulis: return "margulis";
    case InvariantKind::MargulisNorm: return "margulis-norm";
  }
  return "?";
}

std::optional<InvariantKind> invariant_from_name(const std::string& name) {
  if (name == "cartan") return InvariantKind::Cartan;
  if (name == "jordan") return InvariantKind::Jordan;
  if (name == "margulis") return InvariantKind::Margulis;
  if (name == "margulis-norm") return InvariantKind::MargulisNorm;
  return std::nullopt;
}

std::vector<double> invariant_values(InvariantKind kind, const QMatrix& m,
                                     const WeightSpaceSpec& weights, std::string* error) {
  try {
    switch (kind) {
      case InvariantKind::Cartan:
        return cartan(m).entries;
      case InvariantKind::Jordan:
        return jordan(m, weights.gap_tol).entries;
      case InvariantKind::Margulis: {
        MargulisInvariant inv = margulis_invariant(AffineElement::from_embedded(m), weights);
        if (inv.status == MargulisInvariant::Status::Degenerate) {
          if (error) *error = "degenerate-invariant";
          return {};
        }
        return inv.vector;
      }
      case InvariantKind::MargulisNorm: {
        MargulisNorm nv = margulis_norm(AffineElement::from_embedded(m), weights);
        if (nv.status == MargulisNorm::Status::Degenerate) {
          if (error) *error = "degenerate-invariant";
          return {};
        }
        return {nv.value};
      }
    }
  } catch (const DomainError& e) {
    if (error) *error = e.what();
    return {};
  } catch (const PrecisionLoss& e) {
    if (error) *error = std::string("precision-loss: ") + e.what();
    return {};
  }
  return {};
}

SpectrumTable spectrum(const RepresentationSpec& rep, InvariantKind kind, long radius,
                       const SpectrumOptions& options) {
  bool needs_affine = kind == InvariantKind::Margulis || kind == InvariantKind::MargulisNorm;
  if (needs_affine && rep.ambient()->kind() != AmbientKind::Affine)
    throw DomainError("margulis invariants need an affine representation");

  WeightSpaceSpec weights = options.weights;
  if (!weights.invariant_form && rep.invariant_form) weights.invariant_form = rep.invariant_form;
  if (needs_affine && weights.invariant_form) {
    auto violation = norm_violation(rep, *weights.invariant_form, options.tol);
    if (violation) throw DomainError("norm-violation: " + *violation);
  }

  SpectrumTable table;
  table.kind = kind;
  table.radius = radius;
  table.tol = options.tol;

  WordBall b = ball(rep, radius, options.ball);
  table.coincidences = b.coincidences;
  for (const auto& entry : b.entries) {
    if (needs_affine && options.skip_identity_for_margulis && entry.word.empty()) continue;
    SpectrumRow row;
    row.word = entry.word;
    row.word_str = rep.word_string(entry.word);
    row.values = invariant_values(kind, entry.matrix, weights, &row.error);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string SpectrumTable::to_text() const {
  std::ostringstream os;
  os << "invariant " << invariant_name(kind) << "\n";
  os << "radius " << radius << "\n";
  os << "tol " << tol << "\n";
  os << "coincidences " << coincidences << "\n";
  os.precision(12);
  for (const auto& row : rows) {
    os << "entry " << (row.word.empty() ? "e" : row.word_str);
    if (!row.error.empty()) {
      os << " error " << row.error;
    } else {
      for (double v : row.values) os << " " << v;
    }
    os << "\n";
  }
  return os.str();
}

std::optional<std::string> norm_violation(const RepresentationSpec& rep, const QMatrix& form,
                                          double tol) {
  (void)tol;  // generators are exact, so the check is exact as well
  for (const auto& gen : rep.generators()) {
    QMatrix r = gen.matrix;
    if (rep.ambient()->kind() == AmbientKind::Affine)
      r = AffineElement::from_embedded(gen.matrix).linear();
    QMatrix lhs = r.transpose() * form * r;
    if (!(lhs == form)) return "generator " + gen.name + " does not preserve the form";
  }
  return std::nullopt;
}

}  // namespace specrig
