#include "specrig/ambient.hpp"

#include <cctype>

namespace specrig {

Polynomial symbolic_det(const RingPtr& ring,
                        const std::vector<std::vector<std::size_t>>& var_indices) {
  std::size_t n = var_indices.size();
  // cofactor expansion along the first row of the remaining block
  std::vector<std::size_t> cols(n);
  for (std::size_t i = 0; i < n; ++i) cols[i] = i;
  auto rec = [&](auto&& self, std::size_t row, std::vector<std::size_t> active) -> Polynomial {
    if (active.empty()) return Polynomial::constant(ring, 1);
    Polynomial sum = Polynomial::zero(ring);
    for (std::size_t k = 0; k < active.size(); ++k) {
      std::size_t col = active[k];
      Polynomial entry = Polynomial::variable(ring, var_indices[row][col]);
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < active.size(); ++j)
        if (j != k) rest.push_back(active[j]);
      Polynomial minor = self(self, row + 1, std::move(rest));
      Polynomial term = entry * minor;
      if (k % 2 == 1) term = -term;
      sum = sum + term;
    }
    return sum;
  };
  return rec(rec, 0, cols);
}

namespace {

std::vector<std::string> entry_variables(long size) {
  std::vector<std::string> vars;
  vars.reserve(size * size);
  for (long i = 1; i <= size; ++i)
    for (long j = 1; j <= size; ++j)
      vars.push_back("x_" + std::to_string(i) + "_" + std::to_string(j));
  return vars;
}

}  // namespace

AmbientGroup::AmbientGroup(AmbientKind kind, long n) : kind_(kind), n_(n) {
  if (n < 1) throw DomainError("ambient group needs n >= 1");
  size_ = kind == AmbientKind::SpecialLinear ? n : kind == AmbientKind::Affine ? n + 1 : 2 * n;
  ring_ = make_ring(entry_variables(size_), MonomialOrder::GrevLex);

  std::vector<Polynomial> gens;
  auto block_det = [&](long r0, long c0, long k) {
    std::vector<std::vector<std::size_t>> idx(k, std::vector<std::size_t>(k));
    for (long i = 0; i < k; ++i)
      for (long j = 0; j < k; ++j) idx[i][j] = var_index(r0 + i, c0 + j);
    return symbolic_det(ring_, idx);
  };
  Polynomial one = Polynomial::constant(ring_, 1);

  switch (kind_) {
    case AmbientKind::SpecialLinear:
      gens.push_back(block_det(0, 0, n_) - one);
      break;
    case AmbientKind::Affine:
      gens.push_back(block_det(0, 0, n_) - one);
      for (long j = 0; j < n_; ++j)
        gens.push_back(Polynomial::variable(ring_, var_index(n_, j)));
      gens.push_back(Polynomial::variable(ring_, var_index(n_, n_)) - one);
      break;
    case AmbientKind::Product:
      gens.push_back(block_det(0, 0, n_) - one);
      gens.push_back(block_det(n_, n_, n_) - one);
      for (long i = 0; i < n_; ++i)
        for (long j = 0; j < n_; ++j) {
          gens.push_back(Polynomial::variable(ring_, var_index(i, n_ + j)));
          gens.push_back(Polynomial::variable(ring_, var_index(n_ + i, j)));
        }
      break;
  }
  defining_ = Ideal(ring_, std::move(gens));
}

std::shared_ptr<const AmbientGroup> AmbientGroup::special_linear(long n) {
  return std::shared_ptr<const AmbientGroup>(new AmbientGroup(AmbientKind::SpecialLinear, n));
}

std::shared_ptr<const AmbientGroup> AmbientGroup::affine(long n) {
  return std::shared_ptr<const AmbientGroup>(new AmbientGroup(AmbientKind::Affine, n));
}

std::shared_ptr<const AmbientGroup> AmbientGroup::product(long n) {
  return std::shared_ptr<const AmbientGroup>(new AmbientGroup(AmbientKind::Product, n));
}

std::size_t AmbientGroup::var_index(long row, long col) const {
  return static_cast<std::size_t>(row * size_ + col);
}

bool AmbientGroup::contains(const QMatrix& m) const {
  if (static_cast<long>(m.rows()) != size_ || static_cast<long>(m.cols()) != size_) return false;
  QVector point(size_ * size_);
  for (long i = 0; i < size_; ++i)
    for (long j = 0; j < size_; ++j) point[var_index(i, j)] = m.at(i, j);
  return defining_.vanishes_at(point);
}

void AmbientGroup::require_member(const QMatrix& m) const {
  if (!contains(m))
    throw DomainError("matrix does not satisfy the " + kind_string() + " defining ideal");
}

Polynomial AmbientGroup::parse(const std::string& text) const {
  if (kind_ != AmbientKind::Affine) return parse_polynomial(ring_, text);
  // alias t_k -> x_k_(n+1)
  std::string rewritten;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == 't' && i + 1 < text.size() && text[i + 1] == '_' &&
        (i == 0 || (!std::isalnum(static_cast<unsigned char>(text[i - 1])) && text[i - 1] != '_'))) {
      std::size_t j = i + 2;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j > i + 2) {
        std::string k = text.substr(i + 2, j - i - 2);
        rewritten += "x_" + k + "_" + std::to_string(n_ + 1);
        i = j;
        continue;
      }
    }
    rewritten += text[i];
    ++i;
  }
  return parse_polynomial(ring_, rewritten);
}

std::vector<Polynomial> AmbientGroup::parse_lines(const std::string& text) const {
  std::vector<Polynomial> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    out.push_back(parse(line));
  }
  return out;
}

std::string AmbientGroup::kind_string() const {
  switch (kind_) {
    case AmbientKind::SpecialLinear: return "sl" + std::to_string(n_);
    case AmbientKind::Affine: return "affine" + std::to_string(n_);
    case AmbientKind::Product: return "product" + std::to_string(n_);
  }
  return "?";
}

}  // namespace specrig
