#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specrig/bounds.hpp"
#include "specrig/spectra.hpp"

namespace specrig {

struct ComparisonReport {
  enum class Verdict { SpectraEqual, Separated };
  enum class Status { Completed, AbortedNonLoxodromic };

  InvariantKind invariant = InvariantKind::Jordan;
  long radius = 0;
  double tolerance = kGapTol;
  Status status = Status::Completed;
  Verdict verdict = Verdict::SpectraEqual;

  std::optional<Word> separating_word;
  std::string separating_word_str;
  std::vector<double> values1, values2;  // at the separating word
  double max_discrepancy = 0.0;
  long words_compared = 0;
  std::string offending_word;  // set when a word fails the loxodromy gap test

  std::string to_text() const;
};

// Walks the shared word ball (reduced words over the common generator
// names, evaluated in each representation) and reports the shortest
// separating word or spectra equality at the given tolerance.
ComparisonReport compare_spectra(const RepresentationSpec& rep1, const RepresentationSpec& rep2,
                                 InvariantKind invariant, long radius, double tol,
                                 const WeightSpaceSpec& weights = {});

enum class RecoveryMode { Exact, Numeric };

struct ConjugacyCertificate {
  enum class Kind { Linear, AffineTranslation, AffineGeneral };

  Kind kind = Kind::Linear;
  std::string automorphism = "identity";  // or "contragredient"
  QMatrix witness;        // C for linear; embedded [A X; 0 1] for affine kinds
  QVector translation;    // the X of affine-translation certificates
  double residual = 0.0;  // max over generators, suitably normalized
  bool exact = false;     // residual is identically zero in exact arithmetic

  std::string to_text() const;
};

// Solves rho1(s) C = C rho2(s) over all generators and returns an
// invertible solution, retrying against the automorphism catalog
// {identity, contragredient} before giving up. Exact mode decides
// invertibility of the solution space exactly.
std::optional<ConjugacyCertificate> recover_linear_conjugacy(const RepresentationSpec& rep1,
                                                             const RepresentationSpec& rep2,
                                                             RecoveryMode mode,
                                                             double tol = kGapTol);

// Solves (I - R_s) X = T1(s) - T2(s) jointly for representations sharing
// their linear part generator-by-generator.
std::optional<ConjugacyCertificate> recover_affine_translation(const RepresentationSpec& rep1,
                                                               const RepresentationSpec& rep2,
                                                               RecoveryMode mode,
                                                               double tol = kGapTol);

// Affine-general recovery: an invertible intertwiner of the embedded
// representations with affine shape [A X; 0 1].
std::optional<ConjugacyCertificate> recover_affine_conjugacy(const RepresentationSpec& rep1,
                                                             const RepresentationSpec& rep2,
                                                             RecoveryMode mode,
                                                             double tol = kGapTol);

// Re-verifies a certificate by direct multiplication over all generators;
// returns the residual (0 exactly in exact mode).
double certificate_residual(const ConjugacyCertificate& cert, const RepresentationSpec& rep1,
                            const RepresentationSpec& rep2);

struct VerdictOptions {
  double tol = kGapTol;
  long radius_cap = 6;
  RecoveryMode mode = RecoveryMode::Exact;
  WeightSpaceSpec weights;
};

struct RigidityVerdict {
  enum class Result { Equivalent, NotEquivalent, InconclusiveAtCap };

  Result result = Result::InconclusiveAtCap;
  long radius_checked = 0;
  bool radius_capped = false;  // the profile bound exceeded the cap
  ComparisonReport comparison;
  std::optional<ConjugacyCertificate> certificate;
  bool zariski_density_asserted = false;
  bool all_words_loxodromic = true;
  std::string note;

  std::string to_text() const;
};

// Theorem-shaped orchestration: compare over min(escape_bound(profile),
// cap) or the explicit radius; on spectra equality attempt the matching
// recovery. Equivalence is only claimed when recovery succeeded.
RigidityVerdict rigidity_verdict(const RepresentationSpec& rep1, const RepresentationSpec& rep2,
                                 InvariantKind invariant,
                                 const std::optional<VarietyProfile>& profile,
                                 std::optional<long> explicit_radius,
                                 const VerdictOptions& options = {});

}  // namespace specrig
