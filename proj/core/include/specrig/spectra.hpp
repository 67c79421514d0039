#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "specrig/groups.hpp"
#include "specrig/rational.hpp"

namespace specrig {

// Raised when a numeric kernel cannot certify its answer (singular values
// out of range, eigensolver non-convergence).
class PrecisionLoss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kGapTol = 1e-8;

// Sorted log singular values (natural log), nonincreasing; sums to ~0 on
// SL(n) inputs.
struct CartanVector {
  std::vector<double> entries;
};

// Sorted log eigenvalue moduli; loxodromic iff every consecutive gap is
// strictly positive beyond the tolerance.
struct JordanVector {
  std::vector<double> entries;
  double gap = 0.0;  // smallest consecutive difference
  bool loxodromic = false;
};

CartanVector cartan(const Eigen::MatrixXd& g);
CartanVector cartan(const QMatrix& g);

JordanVector jordan(const Eigen::MatrixXd& g, double gap_tol = kGapTol);
JordanVector jordan(const QMatrix& g, double gap_tol = kGapTol);

// tr(wedge^k B) for k = 0..n: the elementary symmetric functions of the
// eigenvalues, by the Faddeev-LeVerrier scheme. Exact for rational inputs.
std::vector<double> wedge_traces(const Eigen::MatrixXd& b);
QVector wedge_traces_exact(const QMatrix& b);

// Weight-space description for the Margulis-Smilga invariant: how to split
// V into the zero-weight space V0 and its complement.
struct WeightSpaceSpec {
  long zero_weight_dim = -1;  // -1: read off the eigenvalue moduli
  double gap_tol = kGapTol;
  std::optional<QMatrix> invariant_form;  // bilinear form; Euclidean when absent
};

struct MargulisInvariant {
  enum class Status { Ok, Degenerate };

  Status status = Status::Ok;
  std::vector<double> vector;  // coordinates in the computed V0 basis
  double norm = 0.0;           // sqrt|Q(element)| under the invariant form
  // basis certificate: the eigen-sorted change of basis h (columns: V0
  // basis first, then the nonzero-weight block) used for pi_0
  Eigen::MatrixXd h;
  Eigen::MatrixXd zero_weight_basis;
  double identity_residual = 0.0;  // polynomial-identity cross-check
  bool elliptic_flagged = false;   // -1/unit-circle eigenvalues sent to V^{!=0}
};

// pi_0(R_h^{-1} X) for a loxodromic linear part; cross-checked against the
// polynomial identity P_A(I-A)X = P_A(0) R_h M. Throws DomainError when the
// linear part is not loxodromic in the weight-split sense.
MargulisInvariant margulis_invariant(const AffineElement& e, const WeightSpaceSpec& spec = {});

// Exact-rational route, available when the linear part diagonalizes over Q.
struct ExactMargulis {
  QVector vector;                    // coordinates in the exact V0 basis
  std::vector<QVector> zero_basis;   // reduced-echelon eigenvectors for eigenvalue 1
  Rational norm_squared;             // Q(element), exact
};
std::optional<ExactMargulis> margulis_invariant_exact(const AffineElement& e,
                                                      const WeightSpaceSpec& spec = {});

struct MargulisNorm {
  enum class Status { Ok, Degenerate };
  Status status = Status::Ok;
  double value = 0.0;
};

// ||P_A(I-A)X|| / |P_A(0)|, computed without constructing h.
MargulisNorm margulis_norm(const AffineElement& e, const WeightSpaceSpec& spec = {});
// Exact squared norm (norm^2 = Q(P_A(I-A)X)/P_A(0)^2); nullopt when P_A(0)=0.
std::optional<Rational> margulis_norm_squared_exact(const AffineElement& e,
                                                    long zero_weight_dim,
                                                    const QMatrix* form = nullptr);

// ---------------------------------------------------------------------------
// Zero-set functionals on matrix blocks
// ---------------------------------------------------------------------------

// A([g11 *; * g22]) = tr(g11^t g11) - tr(g22^t g22) on 2n x 2n blocks.
Rational functional_A_exact(const QMatrix& block);
double functional_A(const Eigen::MatrixXd& block);

// P([g11 *; * g22]) = tr(g11^2) - tr(g22^2).
Rational functional_P_exact(const QMatrix& block);
double functional_P(const Eigen::MatrixXd& block);

// R([A X; Y^t k]) = P_A(I-A)X with d = dim V^{!=0}.
QVector functional_R_exact(const QMatrix& affine_block, long d);
// ||R||^2 under the bilinear form (Euclidean when null).
Rational functional_R_norm2_exact(const QMatrix& affine_block, long d, const QMatrix* form = nullptr);
// E on the block pair [B11 0; 0 B22] of affine blocks.
Rational functional_E_exact(const QMatrix& pair_block, long d, const QMatrix* form = nullptr);

// Defining ideals of the zero sets over the product ambient's variables.
Ideal zero_set_A_ideal(const AmbientPtr& product_ambient);
Ideal zero_set_P_ideal(const AmbientPtr& product_ambient);
// Z_R over the affine ambient: the n polynomial entries of P_A(I-A)X.
Ideal zero_set_R_ideal(const AmbientPtr& affine_ambient, long d);

// ---------------------------------------------------------------------------
// Spectrum tables
// ---------------------------------------------------------------------------

enum class InvariantKind { Cartan, Jordan, Margulis, MargulisNorm };

std::string invariant_name(InvariantKind kind);
std::optional<InvariantKind> invariant_from_name(const std::string& name);

struct SpectrumRow {
  Word word;
  std::string word_str;
  std::vector<double> values;
  std::string error;  // e.g. non-loxodromic word; values empty then
};

struct SpectrumTable {
  InvariantKind kind = InvariantKind::Jordan;
  long radius = 0;
  double tol = kGapTol;
  std::vector<SpectrumRow> rows;  // sorted by (length, word)
  long coincidences = 0;

  std::string to_text() const;
};

struct SpectrumOptions {
  double tol = kGapTol;
  BallOptions ball;
  WeightSpaceSpec weights;
  bool skip_identity_for_margulis = true;
};

// Invariant values of one matrix; fills `error` instead of throwing for
// per-word conditions (non-loxodromic words).
std::vector<double> invariant_values(InvariantKind kind, const QMatrix& m,
                                     const WeightSpaceSpec& weights, std::string* error);

SpectrumTable spectrum(const RepresentationSpec& rep, InvariantKind kind, long radius,
                       const SpectrumOptions& options = {});

// Checks R_s^t Q R_s = Q for every generator; returns a description of the
// first violation, if any.
std::optional<std::string> norm_violation(const RepresentationSpec& rep, const QMatrix& form,
                                          double tol = kGapTol);

}  // namespace specrig
