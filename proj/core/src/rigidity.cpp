#include "specrig/rigidity.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "specrig/groebner.hpp"

namespace specrig {

namespace {

// index map rep1 generator -> rep2 generator with the same name; checks the
// abstract generator structure (names and inverse pairing) agrees
std::vector<std::size_t> match_generators(const RepresentationSpec& rep1,
                                          const RepresentationSpec& rep2) {
  if (rep1.size() != rep2.size())
    throw DomainError("representations declare different generator sets");
  std::vector<std::size_t> map(rep1.size());
  for (std::size_t i = 0; i < rep1.size(); ++i) {
    auto j = rep2.generator_index(rep1.generator(i).name);
    if (!j) throw DomainError("generator '" + rep1.generator(i).name + "' missing in rep2");
    map[i] = *j;
  }
  for (std::size_t i = 0; i < rep1.size(); ++i) {
    int inv1 = rep1.generator(i).inverse;
    int inv2 = rep2.generator(map[i]).inverse;
    bool ok = (inv1 < 0 && inv2 < 0) ||
              (inv1 >= 0 && inv2 >= 0 && map[static_cast<std::size_t>(inv1)] ==
                                             static_cast<std::size_t>(inv2));
    if (!ok) throw DomainError("inverse pairing differs between the representations");
  }
  return map;
}

double values_discrepancy(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

}  // namespace

ComparisonReport compare_spectra(const RepresentationSpec& rep1, const RepresentationSpec& rep2,
                                 InvariantKind invariant, long radius, double tol,
                                 const WeightSpaceSpec& weights_in) {
  if (radius < 0) throw DomainError("compare_spectra: radius must be nonnegative");
  std::vector<std::size_t> map = match_generators(rep1, rep2);

  WeightSpaceSpec weights = weights_in;
  if (!weights.invariant_form) {
    if (rep1.invariant_form) weights.invariant_form = rep1.invariant_form;
    if (rep1.invariant_form && rep2.invariant_form &&
        !(*rep1.invariant_form == *rep2.invariant_form))
      throw DomainError("representations declare different invariant forms");
  }

  bool margulis_vector = invariant == InvariantKind::Margulis;
  if (margulis_vector) {
    // vector values share a basis convention only for equal linear parts
    for (std::size_t i = 0; i < rep1.size(); ++i) {
      AffineElement e1 = AffineElement::from_embedded(rep1.generator(i).matrix);
      AffineElement e2 = AffineElement::from_embedded(rep2.generator(map[i]).matrix);
      if (!(e1.linear() == e2.linear()))
        throw DomainError(
            "margulis vector comparison needs equal linear parts; use margulis-norm");
    }
  }

  ComparisonReport report;
  report.invariant = invariant;
  report.radius = radius;
  report.tolerance = tol;

  bool needs_loxodromy =
      invariant == InvariantKind::Margulis || invariant == InvariantKind::MargulisNorm;

  struct Node {
    Word word;
    QMatrix m1, m2;
  };
  std::vector<Node> frontier;
  frontier.push_back(Node{{}, QMatrix::identity(rep1.ambient()->matrix_size()),
                          QMatrix::identity(rep2.ambient()->matrix_size())});

  auto compare_node = [&](const Node& node) -> bool {
    // returns false to abort (non-loxodromic word)
    if (node.word.empty() && needs_loxodromy) return true;  // identity: both invariants vanish
    std::string err1, err2;
    std::vector<double> v1 = invariant_values(invariant, node.m1, weights, &err1);
    std::vector<double> v2 = invariant_values(invariant, node.m2, weights, &err2);
    if (!err1.empty() || !err2.empty()) {
      report.status = ComparisonReport::Status::AbortedNonLoxodromic;
      report.offending_word = rep1.word_string(node.word);
      return false;
    }
    ++report.words_compared;
    double diff = values_discrepancy(v1, v2);
    report.max_discrepancy = std::max(report.max_discrepancy, diff);
    if (diff > tol && !report.separating_word) {
      report.verdict = ComparisonReport::Verdict::Separated;
      report.separating_word = node.word;
      report.separating_word_str = rep1.word_string(node.word);
      report.values1 = std::move(v1);
      report.values2 = std::move(v2);
    }
    return true;
  };

  if (!compare_node(frontier[0])) return report;
  for (long r = 1; r <= radius && !report.separating_word; ++r) {
    std::vector<Node> next;
    for (const Node& parent : frontier) {
      for (std::size_t gi = 0; gi < rep1.size(); ++gi) {
        if (!parent.word.empty() &&
            rep1.generator(parent.word.back()).inverse == static_cast<int>(gi))
          continue;  // reduced words only
        Node child;
        child.word = parent.word;
        child.word.push_back(static_cast<int>(gi));
        child.m1 = parent.m1 * rep1.generator(gi).matrix;
        child.m2 = parent.m2 * rep2.generator(map[gi]).matrix;
        if (!compare_node(child)) return report;
        if (report.separating_word) break;
        next.push_back(std::move(child));
      }
      if (report.separating_word) break;
    }
    frontier = std::move(next);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Conjugacy recovery
// ---------------------------------------------------------------------------

namespace {

QMatrix contragredient(const QMatrix& m) { return m.inverse().transpose(); }

// rows of rho1(s) C - C rho2(s) = 0 over vec(C), row-major C
QMatrix intertwiner_system(const std::vector<QMatrix>& lhs, const std::vector<QMatrix>& rhs) {
  std::size_t n = lhs[0].rows();
  std::size_t rows = lhs.size() * n * n;
  QMatrix sys(rows, n * n);
  std::size_t row = 0;
  for (std::size_t s = 0; s < lhs.size(); ++s) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          sys.at(row, k * n + j) += lhs[s].at(i, k);
          sys.at(row, i * n + k) -= rhs[s].at(k, j);
        }
        ++row;
      }
  }
  return sys;
}

QMatrix unvec(const QVector& v, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
  return m;
}

// invertible element of span{basis} decided exactly: the determinant of the
// generic combination is a polynomial; when it is not identically zero a
// nonvanishing point exists on the integer grid {0..n}^m
std::optional<QMatrix> invertible_element_exact(const std::vector<QMatrix>& basis) {
  if (basis.empty()) return std::nullopt;
  std::size_t n = basis[0].rows();
  std::size_t m = basis.size();
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < m; ++i) vars.push_back("c_" + std::to_string(i + 1));
  RingPtr ring = make_ring(vars, MonomialOrder::GrevLex);
  std::vector<std::vector<Polynomial>> entries(n, std::vector<Polynomial>(n, Polynomial::zero(ring)));
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (basis[b].at(i, j) != 0)
          entries[i][j] =
              entries[i][j] + Polynomial::variable(ring, b).scaled(basis[b].at(i, j));

  // determinant by cofactor expansion over polynomial entries
  auto det_rec = [&](auto&& self, std::vector<std::size_t> rows,
                     std::vector<std::size_t> cols) -> Polynomial {
    if (rows.empty()) return Polynomial::constant(ring, 1);
    Polynomial sum = Polynomial::zero(ring);
    std::size_t r0 = rows[0];
    std::vector<std::size_t> rest_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (entries[r0][cols[k]].is_zero()) continue;
      std::vector<std::size_t> rest_cols;
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != k) rest_cols.push_back(cols[j]);
      Polynomial term = entries[r0][cols[k]] * self(self, rest_rows, rest_cols);
      if (k % 2 == 1) term = -term;
      sum = sum + term;
    }
    return sum;
  };
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Polynomial det = det_rec(det_rec, idx, idx);
  if (det.is_zero()) return std::nullopt;

  // deterministic grid enumeration; guaranteed to hit a nonvanishing point
  std::vector<long> point(m, 0);
  while (true) {
    QVector qpt(m);
    for (std::size_t i = 0; i < m; ++i) qpt[i] = point[i];
    if (det.evaluate(qpt) != 0) {
      QMatrix c = QMatrix::zero(n, n);
      for (std::size_t b = 0; b < m; ++b)
        if (point[b] != 0) c = c + basis[b].scaled(Rational(point[b]));
      return c;
    }
    std::size_t pos = 0;
    while (pos < m) {
      if (point[pos] < static_cast<long>(n)) {
        ++point[pos];
        break;
      }
      point[pos] = 0;
      ++pos;
    }
    if (pos == m) return std::nullopt;  // exhausted (cannot happen when det != 0)
  }
}

std::optional<QMatrix> invertible_element_numeric(const std::vector<Eigen::MatrixXd>& basis,
                                                  std::size_t n) {
  double best = 0;
  Eigen::MatrixXd best_c;
  auto consider = [&](const Eigen::MatrixXd& c) {
    double norm = c.norm();
    if (norm == 0) return;
    Eigen::MatrixXd scaled = c / norm * std::sqrt(static_cast<double>(n));
    double d = std::fabs(scaled.determinant());
    if (d > best) {
      best = d;
      best_c = c;
    }
  };
  for (const auto& b : basis) consider(b);
  for (unsigned seed = 0; seed < 32; ++seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (const auto& b : basis) c += coeff(rng) * b;
    consider(c);
  }
  if (best < 1e-10) return std::nullopt;
  QMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational r(static_cast<long>(std::llround(best_c(i, j) * (1L << 30))), 1L << 30);
      r.canonicalize();
      out.at(i, j) = r;
    }
  return out;
}

// scale so the first nonzero entry equals one (exact, keeps rationality)
QMatrix normalize_first_entry(const QMatrix& c) {
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (c.at(i, j) != 0) return c.scaled(1 / c.at(i, j));
  return c;
}

double numeric_residual(const std::vector<QMatrix>& lhs, const std::vector<QMatrix>& rhs,
                        const QMatrix& c) {
  double worst = 0;
  Eigen::MatrixXd cd = c.to_double();
  for (std::size_t s = 0; s < lhs.size(); ++s) {
    Eigen::MatrixXd l = lhs[s].to_double() * cd;
    Eigen::MatrixXd r = cd * rhs[s].to_double();
    double scale = std::max(1.0, l.norm() + r.norm());
    worst = std::max(worst, (l - r).norm() / scale);
  }
  return worst;
}

bool exact_intertwines(const std::vector<QMatrix>& lhs, const std::vector<QMatrix>& rhs,
                       const QMatrix& c) {
  for (std::size_t s = 0; s < lhs.size(); ++s)
    if (!(lhs[s] * c == c * rhs[s])) return false;
  return true;
}

std::optional<ConjugacyCertificate> solve_intertwiner(const std::vector<QMatrix>& lhs,
                                                      const std::vector<QMatrix>& rhs,
                                                      RecoveryMode mode, double tol,
                                                      const std::string& automorphism,
                                                      bool affine_shape) {
  std::size_t n = lhs[0].rows();
  QMatrix sys = intertwiner_system(lhs, rhs);
  if (affine_shape) {
    // bottom row of the witness must be (0, ..., 0, w) -> impose zeros
    std::size_t extra = n - 1;
    QMatrix shaped(sys.rows() + extra, sys.cols());
    for (std::size_t i = 0; i < sys.rows(); ++i)
      for (std::size_t j = 0; j < sys.cols(); ++j) shaped.at(i, j) = sys.at(i, j);
    for (std::size_t j = 0; j + 1 < n; ++j)
      shaped.at(sys.rows() + j, (n - 1) * n + j) = 1;
    sys = std::move(shaped);
  }

  std::optional<QMatrix> witness;
  if (mode == RecoveryMode::Exact) {
    std::vector<QVector> null = nullspace(sys);
    std::vector<QMatrix> basis;
    for (const QVector& v : null) basis.push_back(unvec(v, n));
    witness = invertible_element_exact(basis);
  } else {
    Eigen::MatrixXd sd = sys.to_double();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(sd, Eigen::ComputeFullV);
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    std::vector<Eigen::MatrixXd> basis;
    for (long i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) <= 1e-10 * std::max(smax, 1.0)) {
        Eigen::VectorXd v = svd.matrixV().col(i);
        Eigen::MatrixXd c(n, n);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t q = 0; q < n; ++q) c(r, q) = v(r * n + q);
        basis.push_back(std::move(c));
      }
    long extra_null = sd.cols() - svd.singularValues().size();
    for (long i = 0; i < extra_null; ++i)
      basis.push_back(Eigen::MatrixXd::Zero(n, n));  // defensive; not expected
    witness = invertible_element_numeric(basis, n);
  }
  if (!witness) return std::nullopt;

  QMatrix c = *witness;
  if (affine_shape) {
    // scale so the corner entry is exactly 1
    const Rational& corner = c.at(n - 1, n - 1);
    if (corner == 0) return std::nullopt;
    c = c.scaled(1 / corner);
  } else {
    c = normalize_first_entry(c);
  }

  ConjugacyCertificate cert;
  cert.kind = affine_shape ? ConjugacyCertificate::Kind::AffineGeneral
                           : ConjugacyCertificate::Kind::Linear;
  cert.automorphism = automorphism;
  cert.witness = c;
  if (mode == RecoveryMode::Exact) {
    if (!exact_intertwines(lhs, rhs, c)) return std::nullopt;
    cert.exact = true;
    cert.residual = 0.0;
  } else {
    cert.residual = numeric_residual(lhs, rhs, c);
    if (cert.residual > tol) return std::nullopt;
  }
  return cert;
}

}  // namespace

std::optional<ConjugacyCertificate> recover_linear_conjugacy(const RepresentationSpec& rep1,
                                                             const RepresentationSpec& rep2,
                                                             RecoveryMode mode, double tol) {
  std::vector<std::size_t> map = match_generators(rep1, rep2);
  if (rep1.ambient()->matrix_size() != rep2.ambient()->matrix_size())
    throw DomainError("conjugacy recovery needs equal matrix sizes");

  std::vector<QMatrix> rhs;
  for (std::size_t i = 0; i < rep1.size(); ++i) rhs.push_back(rep2.generator(map[i]).matrix);

  for (const char* automorphism : {"identity", "contragredient"}) {
    std::vector<QMatrix> lhs;
    for (std::size_t i = 0; i < rep1.size(); ++i) {
      const QMatrix& m = rep1.generator(i).matrix;
      lhs.push_back(std::string(automorphism) == "identity" ? m : contragredient(m));
    }
    auto cert = solve_intertwiner(lhs, rhs, mode, tol, automorphism, /*affine_shape=*/false);
    if (cert) return cert;
  }
  return std::nullopt;
}

std::optional<ConjugacyCertificate> recover_affine_translation(const RepresentationSpec& rep1,
                                                               const RepresentationSpec& rep2,
                                                               RecoveryMode mode, double tol) {
  std::vector<std::size_t> map = match_generators(rep1, rep2);
  if (rep1.ambient()->kind() != AmbientKind::Affine ||
      rep2.ambient()->kind() != AmbientKind::Affine)
    throw DomainError("translation recovery needs affine representations");

  long n = rep1.ambient()->n();
  std::vector<AffineElement> e1, e2;
  for (std::size_t i = 0; i < rep1.size(); ++i) {
    e1.push_back(AffineElement::from_embedded(rep1.generator(i).matrix));
    e2.push_back(AffineElement::from_embedded(rep2.generator(map[i]).matrix));
    if (!(e1.back().linear() == e2.back().linear()))
      throw DomainError("translation recovery needs equal linear parts");
  }

  QMatrix sys(rep1.size() * n, n);
  QVector rhs(rep1.size() * n);
  for (std::size_t s = 0; s < e1.size(); ++s) {
    QMatrix ia = QMatrix::identity(n) - e1[s].linear();
    for (long i = 0; i < n; ++i) {
      for (long j = 0; j < n; ++j) sys.at(s * n + i, j) = ia.at(i, j);
      rhs[s * n + i] = e1[s].translation()[i] - e2[s].translation()[i];
    }
  }
  QVector x;
  if (!solve_linear(sys, rhs, x)) return std::nullopt;

  ConjugacyCertificate cert;
  cert.kind = ConjugacyCertificate::Kind::AffineTranslation;
  cert.translation = x;
  cert.witness = affine_embed_matrix(AffineElement(QMatrix::identity(n), x));
  // verify (I,X)^{-1} rho1(s) (I,X) = rho2(s)
  QMatrix w = cert.witness;
  QMatrix winv = w.inverse();
  bool exact_ok = true;
  for (std::size_t i = 0; i < rep1.size(); ++i)
    if (!(winv * rep1.generator(i).matrix * w == rep2.generator(map[i]).matrix)) exact_ok = false;
  if (mode == RecoveryMode::Exact) {
    if (!exact_ok) return std::nullopt;
    cert.exact = true;
    cert.residual = 0.0;
  } else {
    std::vector<QMatrix> lhs_m, rhs_m;
    for (std::size_t i = 0; i < rep1.size(); ++i) {
      lhs_m.push_back(rep1.generator(i).matrix);
      rhs_m.push_back(rep2.generator(map[i]).matrix);
    }
    cert.residual = numeric_residual(lhs_m, rhs_m, w);
    if (cert.residual > tol) return std::nullopt;
    cert.exact = exact_ok;
  }
  return cert;
}

std::optional<ConjugacyCertificate> recover_affine_conjugacy(const RepresentationSpec& rep1,
                                                             const RepresentationSpec& rep2,
                                                             RecoveryMode mode, double tol) {
  std::vector<std::size_t> map = match_generators(rep1, rep2);
  if (rep1.ambient()->kind() != AmbientKind::Affine ||
      rep2.ambient()->kind() != AmbientKind::Affine)
    throw DomainError("affine recovery needs affine representations");
  std::vector<QMatrix> lhs, rhs;
  for (std::size_t i = 0; i < rep1.size(); ++i) {
    lhs.push_back(rep1.generator(i).matrix);
    rhs.push_back(rep2.generator(map[i]).matrix);
  }
  return solve_intertwiner(lhs, rhs, mode, tol, "identity", /*affine_shape=*/true);
}

double certificate_residual(const ConjugacyCertificate& cert, const RepresentationSpec& rep1,
                            const RepresentationSpec& rep2) {
  std::vector<std::size_t> map = match_generators(rep1, rep2);
  std::vector<QMatrix> lhs, rhs;
  for (std::size_t i = 0; i < rep1.size(); ++i) {
    const QMatrix& m = rep1.generator(i).matrix;
    lhs.push_back(cert.automorphism == "contragredient" ? contragredient(m) : m);
    rhs.push_back(rep2.generator(map[i]).matrix);
  }
  return numeric_residual(lhs, rhs, cert.witness);
}

// ---------------------------------------------------------------------------
// Verdict orchestration
// ---------------------------------------------------------------------------

RigidityVerdict rigidity_verdict(const RepresentationSpec& rep1, const RepresentationSpec& rep2,
                                 InvariantKind invariant,
                                 const std::optional<VarietyProfile>& profile,
                                 std::optional<long> explicit_radius,
                                 const VerdictOptions& options) {
  RigidityVerdict verdict;
  verdict.zariski_density_asserted =
      rep1.zariski_dense_asserted && rep2.zariski_dense_asserted;

  long radius = options.radius_cap;
  if (explicit_radius) {
    radius = *explicit_radius;
  } else if (profile) {
    TowerInt bound = escape_bound(*profile);
    TowerInt cap(options.radius_cap);
    if (bound.certified_leq(cap) && bound.is_exact()) {
      radius = static_cast<long>(bound.exact_value().get_si());
    } else {
      radius = options.radius_cap;
      verdict.radius_capped = true;
    }
  }
  verdict.radius_checked = radius;

  verdict.comparison =
      compare_spectra(rep1, rep2, invariant, radius, options.tol, options.weights);
  if (verdict.comparison.status == ComparisonReport::Status::AbortedNonLoxodromic) {
    verdict.all_words_loxodromic = false;
    verdict.result = RigidityVerdict::Result::InconclusiveAtCap;
    verdict.note = "a compared word failed the loxodromy gap test";
    return verdict;
  }

  if (verdict.comparison.verdict == ComparisonReport::Verdict::Separated) {
    verdict.result = RigidityVerdict::Result::NotEquivalent;
    return verdict;
  }

  // spectra equal: attempt the recovery matching the invariant
  std::optional<ConjugacyCertificate> cert;
  switch (invariant) {
    case InvariantKind::Cartan:
    case InvariantKind::Jordan:
      cert = recover_linear_conjugacy(rep1, rep2, options.mode, options.tol);
      break;
    case InvariantKind::Margulis: {
      bool linear_equal = true;
      std::vector<std::size_t> map = match_generators(rep1, rep2);
      for (std::size_t i = 0; i < rep1.size() && linear_equal; ++i) {
        AffineElement a1 = AffineElement::from_embedded(rep1.generator(i).matrix);
        AffineElement a2 = AffineElement::from_embedded(rep2.generator(map[i]).matrix);
        linear_equal = a1.linear() == a2.linear();
      }
      if (linear_equal)
        cert = recover_affine_translation(rep1, rep2, options.mode, options.tol);
      else
        cert = recover_affine_conjugacy(rep1, rep2, options.mode, options.tol);
      break;
    }
    case InvariantKind::MargulisNorm: {
      cert = recover_affine_conjugacy(rep1, rep2, options.mode, options.tol);
      if (!cert && verdict.comparison.max_discrepancy <= options.tol) {
        // both spectra may vanish identically: the conjugate-of-G branch,
        // which this tester cannot certify
        SpectrumOptions so;
        so.tol = options.tol;
        so.weights = options.weights;
        SpectrumTable t1 = spectrum(rep1, InvariantKind::MargulisNorm,
                                    std::min(radius, 3L), so);
        bool all_zero = true;
        for (const auto& row : t1.rows)
          for (double v : row.values) all_zero = all_zero && std::fabs(v) <= options.tol;
        if (all_zero)
          verdict.note =
              "all margulis norms vanish: images may be conjugate into the linear group "
              "(uncertified branch)";
      }
      break;
    }
  }

  if (cert) {
    verdict.certificate = cert;
    verdict.result = RigidityVerdict::Result::Equivalent;
  } else {
    verdict.result = RigidityVerdict::Result::InconclusiveAtCap;
    if (verdict.note.empty())
      verdict.note = "spectra equal at the checked radius but no conjugator was recovered";
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Report rendering
// ---------------------------------------------------------------------------

namespace {

std::string join_values(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << " ";
    os << v[i];
  }
  return os.str();
}

}  // namespace

std::string ComparisonReport::to_text() const {
  std::ostringstream os;
  os << "invariant " << invariant_name(invariant) << "\n";
  os << "radius " << radius << "\n";
  os << "tol " << tolerance << "\n";
  if (status == Status::AbortedNonLoxodromic) {
    os << "status non-loxodromic-word\n";
    os << "word " << offending_word << "\n";
    return os.str();
  }
  os << "status completed\n";
  os << "words-compared " << words_compared << "\n";
  os << "verdict "
     << (verdict == Verdict::Separated ? "SEPARATED" : "SPECTRA_EQUAL") << "\n";
  os.precision(12);
  os << "max-discrepancy " << max_discrepancy << "\n";
  if (separating_word) {
    os << "separating-word " << separating_word_str << "\n";
    os << "separating-length " << separating_word->size() << "\n";
    os << "values1 " << join_values(values1) << "\n";
    os << "values2 " << join_values(values2) << "\n";
  }
  return os.str();
}

std::string ConjugacyCertificate::to_text() const {
  std::ostringstream os;
  os << "kind ";
  switch (kind) {
    case Kind::Linear: os << "linear"; break;
    case Kind::AffineTranslation: os << "affine-translation"; break;
    case Kind::AffineGeneral: os << "affine-general"; break;
  }
  os << "\n";
  os << "automorphism " << automorphism << "\n";
  os.precision(12);
  os << "residual " << residual << (exact ? " (exact)" : "") << "\n";
  if (kind == Kind::AffineTranslation) {
    os << "translation";
    for (const Rational& q : translation) os << " " << q.get_str();
    os << "\n";
  } else {
    os << "witness " << witness.to_pretty_string() << "\n";
  }
  return os.str();
}

std::string RigidityVerdict::to_text() const {
  std::ostringstream os;
  os << "verdict ";
  switch (result) {
    case Result::Equivalent: os << "EQUIVALENT"; break;
    case Result::NotEquivalent: os << "NOT_EQUIVALENT"; break;
    case Result::InconclusiveAtCap: os << "INCONCLUSIVE_AT_CAP"; break;
  }
  os << "\n";
  os << "radius-checked " << radius_checked << (radius_capped ? " (capped)" : "") << "\n";
  os << "zariski-density-asserted " << (zariski_density_asserted ? "true" : "false") << "\n";
  os << "all-words-loxodromic " << (all_words_loxodromic ? "true" : "false") << "\n";
  if (!note.empty()) os << "note " << note << "\n";
  os << "--- comparison ---\n" << comparison.to_text();
  if (certificate) os << "--- certificate ---\n" << certificate->to_text();
  return os.str();
}

}  // namespace specrig
