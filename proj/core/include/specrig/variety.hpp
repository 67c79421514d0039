#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specrig/bounds.hpp"
#include "specrig/groebner.hpp"
#include "specrig/groups.hpp"

namespace specrig {

// Subvariety of an ambient group, cut out by the ideal's generators taken
// together with the ambient defining ideal for every dimension/degree query.
class Variety {
 public:
  Variety(AmbientPtr ambient, Ideal ideal);

  const AmbientPtr& ambient() const { return ambient_; }
  const Ideal& ideal() const { return ideal_; }
  Ideal joined_ideal() const { return ideal_.joined(ambient_->defining_ideal()); }

  const std::optional<VarietyProfile>& asserted_profile() const { return profile_; }
  void assert_profile(VarietyProfile p) { profile_ = std::move(p); }

  bool contains(const QMatrix& m) const;  // exact evaluation of own generators

 private:
  AmbientPtr ambient_;
  Ideal ideal_;
  std::optional<VarietyProfile> profile_;
};

// Left translate gX = {gy : y in X}: substitutes M -> g^{-1} M in every
// generator.
Variety translate(const Variety& v, const GroupElement& g);
Variety translate(const Variety& v, const QMatrix& g);

// Union of generator sets; same ambient required.
Variety intersect(const Variety& a, const Variety& b);

// Upper-bound profile of an intersection from the operands' tracked
// profiles (generalized Bezout bookkeeping).
VarietyProfile intersection_profile_bound(const VarietyProfile& a, const VarietyProfile& b,
                                          long dim);

// Profile of the ideal's variety: exact when decompose supports the ideal,
// otherwise certainty = upper_bound with irr, mdeg <= product of generator
// degrees; nullopt marks the empty variety.
std::optional<VarietyProfile> profile_of_ideal(const Ideal& ideal,
                                               const GroebnerOptions& options = {});
std::optional<VarietyProfile> profile_of(const Variety& v, const GroebnerOptions& options = {});

struct EscapeTowerOptions {
  GroebnerOptions groebner;
  long max_steps = 16;  // hard cap on top of the irr bound
  bool try_decompose = true;
};

struct TowerStep {
  int generator_index;
  long dimension;
  long degree;
  VarietyProfile tracked;  // upper-bound profile after the step
  // which progress measure the step achieved: 0 dim drop, 1 component-count
  // drop, 2 degree drop
  int progress_kind;
};

struct TowerReport {
  enum class Status { Escaped, StalledStable, StalledHeuristic };

  Status status = Status::StalledHeuristic;
  long initial_dimension = 0;
  long final_dimension = 0;
  VarietyProfile initial_profile;
  std::vector<TowerStep> steps;
  std::optional<Variety> final_variety;
  bool lemma_inequalities_hold = false;  // tracked profile vs tower bounds
  std::string detail;

  std::vector<int> chosen_sequence() const {
    std::vector<int> seq;
    for (const auto& s : steps) seq.push_back(s.generator_index);
    return seq;
  }
};

// Greedy intersection tower: tries every generator, prefers a dimension
// drop, then a maximal-dimension component-count drop when decompose
// supports the ideals, then a degree drop; the chosen generator is the
// deterministic minimum among successful candidates. Stops once the
// dimension falls strictly below the starting dimension.
TowerReport escape_tower(const Variety& v, const RepresentationSpec& rep,
                         const EscapeTowerOptions& options = {});

struct WitnessResult {
  bool found = false;
  Word word;
  QMatrix matrix;
  long ball_radius_searched = 0;
};

// Shortest word (<= horizon) whose matrix violates the variety's ideal;
// NOT_FOUND (found == false) when the whole ball lies inside.
WitnessResult escape_witness(const Variety& v, const RepresentationSpec& rep, long horizon,
                             const BallOptions& options = {});

}  // namespace specrig
