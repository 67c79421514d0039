#include "specrig/variety.hpp"

#include <algorithm>

namespace specrig {

Variety::Variety(AmbientPtr ambient, Ideal ideal)
    : ambient_(std::move(ambient)), ideal_(std::move(ideal)) {
  if (ideal_.ring()->variables() != ambient_->ring()->variables())
    throw DomainError("variety ideal must use the ambient's matrix variables");
}

bool Variety::contains(const QMatrix& m) const {
  if (static_cast<long>(m.rows()) != ambient_->matrix_size()) return false;
  QVector point(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      point[ambient_->var_index(i, j)] = m.at(i, j);
  return ideal_.vanishes_at(point);
}

Variety translate(const Variety& v, const QMatrix& g) {
  const AmbientPtr& ambient = v.ambient();
  ambient->require_member(g);
  QMatrix inv = g.inverse();
  long size = ambient->matrix_size();
  const RingPtr& ring = ambient->ring();

  // x_i_j -> (g^{-1} M)_{i,j} = sum_k inv(i,k) x_k_j
  std::vector<Polynomial> images(ring->nvars(), Polynomial::zero(ring));
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j) {
      Polynomial lin = Polynomial::zero(ring);
      for (long k = 0; k < size; ++k) {
        if (inv.at(i, k) == 0) continue;
        lin = lin + Polynomial::variable(ring, ambient->var_index(k, j)).scaled(inv.at(i, k));
      }
      images[ambient->var_index(i, j)] = std::move(lin);
    }

  std::vector<Polynomial> gens;
  gens.reserve(v.ideal().generators().size());
  for (const Polynomial& p : v.ideal().generators()) gens.push_back(p.substitute(images));
  return Variety(ambient, Ideal(ring, std::move(gens)));
}

Variety translate(const Variety& v, const GroupElement& g) {
  if (g.ambient() != v.ambient() && !(g.ambient()->kind() == v.ambient()->kind() &&
                                      g.ambient()->n() == v.ambient()->n()))
    throw DomainError("translate: ambient mismatch");
  return translate(v, g.matrix());
}

Variety intersect(const Variety& a, const Variety& b) {
  if (a.ambient()->kind() != b.ambient()->kind() || a.ambient()->n() != b.ambient()->n())
    throw DomainError("intersect: ambient mismatch");
  return Variety(a.ambient(), a.ideal().joined(b.ideal()));
}

namespace {

long saturating_mul(long a, long b) {
  constexpr long cap = 1L << 40;
  if (a > cap / std::max(1L, b)) return cap;
  return a * b;
}

}  // namespace

VarietyProfile intersection_profile_bound(const VarietyProfile& a, const VarietyProfile& b,
                                          long dim) {
  long total_a = saturating_mul(a.irr, a.mdeg);
  long total_b = saturating_mul(b.irr, b.mdeg);
  return VarietyProfile(saturating_mul(total_a, total_b), saturating_mul(a.mdeg, b.mdeg),
                        std::max(dim, 0L), ProfileCertainty::UpperBound);
}

std::optional<VarietyProfile> profile_of_ideal(const Ideal& ideal,
                                               const GroebnerOptions& options) {
  std::optional<long> dim = dimension(ideal, options);
  if (!dim) return std::nullopt;  // empty variety

  if (ideal.is_zero_ideal() || ideal.groebner_basis(options).empty())
    return VarietyProfile(1, 1, *dim, ProfileCertainty::Exact);

  DecomposeResult dec = decompose(ideal, options);
  if (dec.supported && !dec.components.empty()) {
    long irr = static_cast<long>(dec.components.size());
    long mdeg = 1;
    long d = 0;
    for (const Ideal& comp : dec.components) {
      auto dd = hilbert_dimension_degree(comp, options);
      d = std::max(d, dd.first);
      mdeg = std::max(mdeg, dd.second);
    }
    return VarietyProfile(irr, std::max(mdeg, 1L), d, ProfileCertainty::Exact);
  }

  long bezout = ideal.generator_degree_product();
  return VarietyProfile(bezout, bezout, *dim, ProfileCertainty::UpperBound);
}

std::optional<VarietyProfile> profile_of(const Variety& v, const GroebnerOptions& options) {
  if (v.asserted_profile()) return v.asserted_profile();
  return profile_of_ideal(v.joined_ideal(), options);
}

namespace {

// maximal-dimension component count when decompose supports the ideal
std::optional<long> max_dim_component_count(const Ideal& joined, long dim,
                                            const GroebnerOptions& options) {
  DecomposeResult dec = decompose(joined, options);
  if (!dec.supported) return std::nullopt;
  long count = 0;
  for (const Ideal& comp : dec.components) {
    auto cd = dimension(comp, options);
    if (cd && *cd == dim) ++count;
  }
  return count;
}

}  // namespace

TowerReport escape_tower(const Variety& v, const RepresentationSpec& rep,
                         const EscapeTowerOptions& options) {
  TowerReport report;

  Ideal joined = v.joined_ideal();
  std::optional<long> d0 = dimension(joined, options.groebner);
  if (!d0) throw DomainError("escape_tower: the variety is empty");
  std::optional<long> ambient_dim = dimension(v.ambient()->defining_ideal(), options.groebner);
  if (ambient_dim && *d0 >= *ambient_dim)
    throw DomainError("escape_tower: not a proper subvariety of the ambient");

  std::optional<VarietyProfile> p0 = profile_of(v, options.groebner);
  if (!p0) throw DomainError("escape_tower: the variety is empty");
  report.initial_profile = *p0;
  report.initial_dimension = *d0;
  report.final_dimension = *d0;

  long step_cap = std::min(options.max_steps, p0->irr);

  Variety current = v;
  VarietyProfile tracked = *p0;
  long cur_dim = *d0;
  long cur_deg = degree(joined, options.groebner);
  std::optional<long> cur_count;
  if (options.try_decompose)
    cur_count = max_dim_component_count(joined, cur_dim, options.groebner);

  for (long step = 0; step < step_cap; ++step) {
    struct Candidate {
      int priority;  // 0 dim drop, 1 count drop, 2 degree drop
      std::size_t gen;
      Variety variety;
      long dim;
      long deg;
      std::optional<long> count;
    };
    std::optional<Candidate> best;
    bool all_stable = true;

    for (std::size_t gi = 0; gi < rep.size(); ++gi) {
      Variety w = intersect(current, translate(current, rep.generator(gi).matrix));
      Ideal wj = w.joined_ideal();
      std::optional<long> wd;
      try {
        wd = dimension(wj, options.groebner);
      } catch (const ComputationAborted&) {
        all_stable = false;
        continue;  // this candidate is too expensive; try others
      }
      long wdim = wd ? *wd : -1;  // empty variety counts as dimension -1
      if (all_stable && !wj.same_ideal(joined.with_order(wj.ring()->order()), options.groebner))
        all_stable = false;

      int priority = -1;
      long wdeg = -1;
      std::optional<long> wcount;
      if (wdim < cur_dim) {
        priority = 0;
      } else {
        try {
          wdeg = degree(wj, options.groebner);
        } catch (const ComputationAborted&) {
          continue;
        }
        if (options.try_decompose && cur_count) {
          wcount = max_dim_component_count(wj, cur_dim, options.groebner);
          if (wcount && *wcount < *cur_count) priority = 1;
        }
        if (priority < 0 && wdeg >= 0 && wdeg < cur_deg) priority = 2;
      }
      if (priority < 0) continue;
      if (!best || priority < best->priority ||
          (priority == best->priority && gi < best->gen)) {
        best = Candidate{priority, gi, std::move(w), wdim, wdeg, wcount};
      }
    }

    if (!best) {
      report.status = all_stable ? TowerReport::Status::StalledStable
                                 : TowerReport::Status::StalledHeuristic;
      report.detail = all_stable
                          ? "every generator translate leaves the variety unchanged"
                          : "no generator achieves a dimension, component-count or degree drop";
      report.final_variety = current;
      return report;
    }

    current = best->variety;
    joined = current.joined_ideal();
    cur_dim = best->dim;
    cur_count = best->count;
    tracked = intersection_profile_bound(tracked, tracked, cur_dim);
    if (best->priority == 0 && cur_dim >= 0) {
      try {
        best->deg = degree(joined, options.groebner);
      } catch (const ComputationAborted&) {
        best->deg = -1;
      }
    }
    cur_deg = best->deg;
    report.steps.push_back(TowerStep{static_cast<int>(best->gen), cur_dim, cur_deg, tracked,
                                     best->priority});
    report.final_dimension = cur_dim;

    if (cur_dim < report.initial_dimension) {
      report.status = TowerReport::Status::Escaped;
      break;
    }
  }

  if (report.status != TowerReport::Status::Escaped) {
    report.status = TowerReport::Status::StalledHeuristic;
    report.detail = "step cap reached before a dimension drop";
    report.final_variety = current;
  } else {
    report.final_variety = current;
  }

  // Lemma-style certificate: tracked profile of V_m against the tower
  // bounds computed from the initial profile, in tower arithmetic.
  {
    TowerInt irr0(report.initial_profile.irr);
    TowerInt mdeg0(report.initial_profile.mdeg);
    auto bound = f_step(irr0, mdeg0);
    bool ok = static_cast<long>(report.steps.size()) <= report.initial_profile.irr;
    ok = ok && TowerInt(tracked.irr).certified_leq(bound.first);
    ok = ok && TowerInt(tracked.mdeg).certified_leq(bound.second);
    report.lemma_inequalities_hold = ok;
  }
  return report;
}

WitnessResult escape_witness(const Variety& v, const RepresentationSpec& rep, long horizon,
                             const BallOptions& options) {
  if (horizon < 0) throw DomainError("escape_witness: horizon must be nonnegative");
  WitnessResult result;
  WordBall b = ball(rep, horizon, options);
  result.ball_radius_searched = b.reached_radius;
  for (const auto& entry : b.entries) {
    if (!v.contains(entry.matrix)) {
      result.found = true;
      result.word = entry.word;
      result.matrix = entry.matrix;
      return result;
    }
  }
  return result;
}

}  // namespace specrig
