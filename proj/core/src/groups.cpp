#include "specrig/groups.hpp"

#include <algorithm>
#include <future>

namespace specrig {

GroupElement::GroupElement(AmbientPtr ambient, QMatrix matrix)
    : ambient_(std::move(ambient)), matrix_(std::move(matrix)) {
  ambient_->require_member(matrix_);
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
  return GroupElement(ambient_, matrix_ * rhs.matrix_);
}

GroupElement GroupElement::inverse() const {
  return GroupElement(ambient_, matrix_.inverse());
}

AffineElement::AffineElement(QMatrix linear, QVector translation)
    : linear_(std::move(linear)), translation_(std::move(translation)) {
  if (!linear_.is_square() || linear_.rows() != translation_.size())
    throw DomainError("affine element shape mismatch");
}

AffineElement AffineElement::operator*(const AffineElement& rhs) const {
  if (dim() != rhs.dim()) throw DomainError("affine product dimension mismatch");
  return AffineElement(linear_ * rhs.linear_, linear_.apply(rhs.translation_) + translation_);
}

AffineElement AffineElement::inverse() const {
  QMatrix inv = linear_.inverse();
  return AffineElement(inv, scaled(inv.apply(translation_), Rational(-1)));
}

AffineElement AffineElement::from_embedded(const QMatrix& m) {
  if (!m.is_square() || m.rows() < 2) throw DomainError("embedded affine matrix too small");
  std::size_t n = m.rows() - 1;
  for (std::size_t j = 0; j < n; ++j)
    if (m.at(n, j) != 0) throw DomainError("embedded affine matrix has nonzero bottom row");
  if (m.at(n, n) != 1) throw DomainError("embedded affine matrix corner must be 1");
  QMatrix lin(n, n);
  QVector tr(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) lin.at(i, j) = m.at(i, j);
    tr[i] = m.at(i, n);
  }
  return AffineElement(std::move(lin), std::move(tr));
}

QMatrix affine_embed_matrix(const AffineElement& e) {
  std::size_t n = e.dim();
  QMatrix m(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = e.linear().at(i, j);
    m.at(i, n) = e.translation()[i];
  }
  m.at(n, n) = 1;
  return m;
}

GroupElement affine_embed(const AmbientPtr& ambient, const AffineElement& e) {
  return GroupElement(ambient, affine_embed_matrix(e));
}

QMatrix aleph_matrix(const QMatrix& g, const QMatrix& h) {
  if (!g.is_square() || !h.is_square() || g.rows() != h.rows())
    throw DomainError("aleph needs square matrices of equal size");
  std::size_t n = g.rows();
  QMatrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m.at(i, j) = g.at(i, j);
      m.at(n + i, n + j) = h.at(i, j);
    }
  return m;
}

GroupElement aleph(const GroupElement& g, const GroupElement& h) {
  AmbientPtr prod = AmbientGroup::product(g.matrix().rows());
  return GroupElement(prod, aleph_matrix(g.matrix(), h.matrix()));
}

namespace {

mpz_class binomial(long n, long k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

QMatrix sym_power(const QMatrix& g, long n) {
  if (n < 2) throw DomainError("sym_power needs n >= 2");
  if (g.rows() != 2 || g.cols() != 2) throw DomainError("sym_power input must be 2x2");
  if (g.det() != 1) throw DomainError("sym_power input must have determinant 1");
  const Rational& a = g.at(0, 0);
  const Rational& b = g.at(0, 1);
  const Rational& c = g.at(1, 0);
  const Rational& d = g.at(1, 1);
  long deg = n - 1;
  QMatrix out(n, n);
  // column j: image of x^(deg-j) y^j under x -> a x + c y, y -> b x + d y
  for (long j = 0; j <= deg; ++j) {
    long p = deg - j, q = j;
    // (a x + c y)^p (b x + d y)^q
    for (long k = 0; k <= p; ++k) {
      for (long l = 0; l <= q; ++l) {
        // term: C(p,k) a^k c^(p-k) C(q,l) b^l d^(q-l) x^(k+l) y^(deg-k-l)
        Rational coeff(binomial(p, k) * binomial(q, l));
        Rational term = coeff;
        for (long e = 0; e < k; ++e) term *= a;
        for (long e = 0; e < p - k; ++e) term *= c;
        for (long e = 0; e < l; ++e) term *= b;
        for (long e = 0; e < q - l; ++e) term *= d;
        long row = deg - (k + l);  // x-degree k+l sits at basis index deg-(k+l)
        out.at(row, j) += term;
      }
    }
  }
  return out;
}

RepresentationSpec::RepresentationSpec(AmbientPtr ambient,
                                       std::vector<std::pair<std::string, QMatrix>> generators,
                                       bool symmetric_closure)
    : ambient_(std::move(ambient)), symmetric_(symmetric_closure) {
  if (generators.empty()) throw DomainError("representation needs at least one generator");
  std::unordered_map<std::string, std::size_t> by_key;
  for (auto& [name, m] : generators) {
    ambient_->require_member(m);
    if (generator_index(name)) throw DomainError("duplicate generator name: " + name);
    std::string key = m.canonical_key();
    gens_.push_back(Generator{name, std::move(m), -1});
    by_key.emplace(std::move(key), gens_.size() - 1);
  }
  if (symmetric_) {
    std::size_t declared = gens_.size();
    for (std::size_t i = 0; i < declared; ++i) {
      if (gens_[i].inverse >= 0) continue;
      QMatrix inv = gens_[i].matrix.inverse();
      auto it = by_key.find(inv.canonical_key());
      if (it != by_key.end()) {
        gens_[i].inverse = static_cast<int>(it->second);
        gens_[it->second].inverse = static_cast<int>(i);
        continue;
      }
      std::string key = inv.canonical_key();
      gens_.push_back(Generator{gens_[i].name + "⁻¹", std::move(inv),
                                static_cast<int>(i)});
      gens_[i].inverse = static_cast<int>(gens_.size() - 1);
      by_key.emplace(std::move(key), gens_.size() - 1);
    }
  }
}

std::optional<std::size_t> RepresentationSpec::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

std::string RepresentationSpec::word_string(const Word& w) const {
  if (w.empty()) return "e";
  std::string s;
  for (int i : w) s += gens_[i].name;
  return s;
}

QMatrix RepresentationSpec::word_matrix(const Word& w) const {
  QMatrix m = QMatrix::identity(ambient_->matrix_size());
  for (int i : w) m = m * gens_[i].matrix;
  return m;
}

WordBall ball(const RepresentationSpec& rep, long radius, const BallOptions& options) {
  if (radius < 0) throw DomainError("ball radius must be nonnegative");
  WordBall out;
  out.radius = radius;
  out.reached_radius = 0;

  QMatrix id = QMatrix::identity(rep.ambient()->matrix_size());
  out.entries.push_back(WordBall::Entry{id, {}});
  out.index.emplace(id.canonical_key(), 0);

  std::size_t level_begin = 0, level_end = out.entries.size();
  for (long r = 1; r <= radius; ++r) {
    // expansion tasks in deterministic order: parents in word order, then
    // generator index; free-reduction prunes s s^{-1} backtracks
    struct Task {
      std::size_t parent;
      int gen;
    };
    std::vector<Task> tasks;
    for (std::size_t p = level_begin; p < level_end; ++p) {
      const Word& w = out.entries[p].word;
      for (std::size_t gi = 0; gi < rep.size(); ++gi) {
        if (!w.empty() && rep.generator(w.back()).inverse == static_cast<int>(gi)) continue;
        tasks.push_back(Task{p, static_cast<int>(gi)});
      }
    }

    std::vector<QMatrix> products(tasks.size());
    int threads = std::max(1, options.threads);
    if (threads == 1 || tasks.size() < 16) {
      for (std::size_t t = 0; t < tasks.size(); ++t)
        products[t] = out.entries[tasks[t].parent].matrix * rep.generator(tasks[t].gen).matrix;
    } else {
      std::vector<std::future<void>> futs;
      std::size_t chunk = (tasks.size() + threads - 1) / threads;
      for (int c = 0; c < threads; ++c) {
        std::size_t lo = c * chunk, hi = std::min(tasks.size(), lo + chunk);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi] {
          for (std::size_t t = lo; t < hi; ++t)
            products[t] =
                out.entries[tasks[t].parent].matrix * rep.generator(tasks[t].gen).matrix;
        }));
      }
      for (auto& f : futs) f.get();
    }

    // ordered merge keeps labels deterministic under any thread count
    std::size_t next_begin = out.entries.size();
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      QMatrix& m = products[t];
      if (m.max_entry_bits() > options.max_entry_bits) {
        out.status = WordBall::Status::Aborted;
        out.abort_reason = "entry bit budget exceeded";
        out.reached_radius = r - 1;
        return out;
      }
      Word w = out.entries[tasks[t].parent].word;
      w.push_back(tasks[t].gen);
      std::string key = m.canonical_key();
      auto it = out.index.find(key);
      if (it == out.index.end()) {
        if (static_cast<long>(out.entries.size()) >= options.max_entries) {
          out.status = WordBall::Status::Aborted;
          out.abort_reason = "entry count cap exceeded";
          out.reached_radius = r - 1;
          return out;
        }
        out.index.emplace(std::move(key), out.entries.size());
        out.entries.push_back(WordBall::Entry{std::move(m), std::move(w)});
      } else {
        const Word& existing = out.entries[it->second].word;
        if (static_cast<long>(existing.size()) == r) {
          ++out.coincidences;
          if (out.coincidence_samples.size() < 8)
            out.coincidence_samples.emplace_back(existing, w);
        }
      }
    }
    level_begin = next_begin;
    level_end = out.entries.size();
    out.reached_radius = r;
    if (level_begin == level_end) break;  // closure reached early
  }
  if (out.status == WordBall::Status::Complete) out.reached_radius = radius;
  return out;
}

}  // namespace specrig
