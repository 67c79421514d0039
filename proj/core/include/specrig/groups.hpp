#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "specrig/ambient.hpp"
#include "specrig/rational.hpp"

namespace specrig {

// Exact matrix with a verified ambient membership.
class GroupElement {
 public:
  GroupElement(AmbientPtr ambient, QMatrix matrix);

  const AmbientPtr& ambient() const { return ambient_; }
  const QMatrix& matrix() const { return matrix_; }

  GroupElement operator*(const GroupElement& rhs) const;
  GroupElement inverse() const;
  bool operator==(const GroupElement& rhs) const { return matrix_ == rhs.matrix_; }

  std::string canonical_key() const { return matrix_.canonical_key(); }

 private:
  AmbientPtr ambient_;
  QMatrix matrix_;
};

// (R_g, X) acting by v -> R_g v + X; embeds as [R_g X; 0 1].
class AffineElement {
 public:
  AffineElement(QMatrix linear, QVector translation);

  const QMatrix& linear() const { return linear_; }
  const QVector& translation() const { return translation_; }
  long dim() const { return static_cast<long>(translation_.size()); }

  AffineElement operator*(const AffineElement& rhs) const;
  AffineElement inverse() const;

  // Splits an embedded (n+1)x(n+1) matrix back into (linear, translation).
  static AffineElement from_embedded(const QMatrix& m);

 private:
  QMatrix linear_;
  QVector translation_;
};

// Block form [R_g X; 0 1] in the affine ambient.
GroupElement affine_embed(const AmbientPtr& ambient, const AffineElement& e);
// Convenience: builds the ambient from the element's dimension.
QMatrix affine_embed_matrix(const AffineElement& e);

// Regular embedding (g, h) -> [g 0; 0 h] into the product ambient.
GroupElement aleph(const GroupElement& g, const GroupElement& h);
QMatrix aleph_matrix(const QMatrix& g, const QMatrix& h);

// Action of a 2x2 matrix on the monomial basis x^(n-1), x^(n-2) y, ...,
// y^(n-1) of degree-(n-1) forms; multiplicative, and the identity map for
// n = 2. Requires n >= 2 and det(g) = 1.
QMatrix sym_power(const QMatrix& g, long n);

// Words are sequences of generator indices into a RepresentationSpec.
using Word = std::vector<int>;

// Generator assignment with symmetric closure. Inverses added by closure are
// named "<name>⁻¹" and ordered after the declared generators.
class RepresentationSpec {
 public:
  struct Generator {
    std::string name;
    QMatrix matrix;
    int inverse;  // index of the inverse generator
  };

  RepresentationSpec(AmbientPtr ambient,
                     std::vector<std::pair<std::string, QMatrix>> generators,
                     bool symmetric_closure = true);

  const AmbientPtr& ambient() const { return ambient_; }
  std::size_t size() const { return gens_.size(); }
  const Generator& generator(std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& generators() const { return gens_; }
  bool symmetric() const { return symmetric_; }

  std::optional<std::size_t> generator_index(const std::string& name) const;

  std::string word_string(const Word& w) const;
  QMatrix word_matrix(const Word& w) const;  // left-to-right product

  // Optional metadata used by the spectra/rigidity layers.
  std::optional<QMatrix> invariant_form;  // bilinear form preserved by the rep
  bool zariski_dense_asserted = false;

 private:
  AmbientPtr ambient_;
  std::vector<Generator> gens_;
  bool symmetric_;
};

struct BallOptions {
  long max_entries = 1 << 20;
  std::size_t max_entry_bits = 1 << 16;  // per-entry numerator/denominator cap
  int threads = 1;
};

// Breadth-first closure of products of <= radius generators with exact
// matrix deduplication and deterministic shortest-word labels (ties broken
// by the word order: length, then generator-index sequence).
struct WordBall {
  enum class Status { Complete, Aborted };

  struct Entry {
    QMatrix matrix;
    Word word;
  };

  Status status = Status::Complete;
  long radius = 0;
  long reached_radius = 0;
  std::string abort_reason;
  std::vector<Entry> entries;  // in word order
  std::unordered_map<std::string, std::size_t> index;  // canonical key -> entry

  // Two distinct same-length words that landed on one matrix; affects
  // spectrum-table indexing, so it is surfaced in reports.
  long coincidences = 0;
  std::vector<std::pair<Word, Word>> coincidence_samples;

  bool contains(const QMatrix& m) const { return index.count(m.canonical_key()) > 0; }
};

WordBall ball(const RepresentationSpec& rep, long radius, const BallOptions& options = {});

}  // namespace specrig
