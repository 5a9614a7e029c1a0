//  Copyright 2026 The qmet Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef QMET_METRIC_HPP_
#define QMET_METRIC_HPP_

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qmet/quantale.hpp"
#include "qmet/sampling.hpp"
#include "qmet/topology.hpp"

namespace qmet {

struct MetricReport {
  bool passed = true;
  bool symmetric = true;
  bool separated = true;
  Preorder d_preorder;
  std::vector<std::string> violations;
};

/// Quantale-valued metric space on a finite point set.  The distance matrix
/// is not validated at construction (verify() reports axiom failures), so
/// deliberately broken tables can be built and inspected.  Derived structures
/// are cached lazily with at-most-once computation; completed spaces are
/// immutable and safe to share across threads.
class QMetricSpace {
 public:
  QMetricSpace(std::vector<std::string> points, QuantalePtr q,
               std::vector<QElem> d);

  std::size_t size() const { return points_.size(); }
  const std::string& point(std::size_t i) const { return points_[i]; }
  std::optional<std::size_t> point_index(const std::string& label) const;
  const QuantalePtr& quantale() const { return q_; }
  const QElem& dist(std::size_t x, std::size_t y) const {
    return d_[x * points_.size() + y];
  }

  MetricReport verify() const;
  const Preorder& d_preorder() const;

  /// Distance values (deduplicated): the radius context of this space.
  std::vector<QElem> distance_values() const;
  std::vector<QElem> radius_candidates() const;

  DynBitset ball(std::size_t x, const QElem& delta) const;
  DynBitset dual_ball(std::size_t x, const QElem& delta) const;
  const FinTopology& ball_topology() const;
  const FinTopology& dual_ball_topology() const;

  /// Closure of A in the dual open ball topology:
  /// {y | forall delta << 1. exists x in A. delta << d(x,y)}.
  DynBitset closure_dual(const DynBitset& a) const;
  /// Closure of A in the ball topology (Lemma-style formula with d(y,x)).
  DynBitset closure_primal(const DynBitset& a) const;

 private:
  std::vector<std::string> points_;
  QuantalePtr q_;
  std::vector<QElem> d_;

  // lazy caches, computed at most once even under concurrent reads
  mutable std::once_flag preorder_once_, tau_once_, tau_dual_once_,
      candidates_once_;
  mutable std::optional<Preorder> preorder_;
  mutable std::optional<FinTopology> tau_, tau_dual_;
  mutable std::optional<std::vector<QElem>> candidates_;
};

using SpacePtr = std::shared_ptr<const QMetricSpace>;

SpacePtr make_space(std::vector<std::string> points, QuantalePtr q,
                    std::vector<QElem> d);

/// Space with flipped distance matrix; only defined for commutative Q.
SpacePtr dual_space(const SpacePtr& s);

/// Ball topology built from totally-below balls with totally-below radii.
/// Equals the ball topology on prime-continuous quantales.
FinTopology total_ball_topology(const QMetricSpace& s);

// ---- arrows -----------------------------------------------------------------

struct MetArrow {
  SpacePtr src, tgt;
  std::vector<std::size_t> f;
  std::optional<QuantaleMorphism> realizer;
};

/// Builds an arrow, validating the realizer inequality and kinds when a
/// realizer is supplied.
MetArrow make_arrow(SpacePtr src, SpacePtr tgt, std::vector<std::size_t> f,
                    std::optional<QuantaleMorphism> realizer = std::nullopt);

/// Pointwise-greatest monotone map g with g(d(x,y)) <= d'(f x, f y):
/// g(q) = meet{ d'(f x, f y) : q <= d(x,y) }.
QuantaleMorphism greatest_realizer(const std::vector<std::size_t>& f,
                                   const QMetricSpace& s,
                                   const QMetricSpace& t);

/// unit' <= g(unit) for the greatest realizer; asserted equal to the
/// epsilon-delta uniform condition by the test suite.
bool is_uniformly_continuous(const std::vector<std::size_t>& f,
                             const QMetricSpace& s, const QMetricSpace& t);

/// The epsilon-delta uniform condition evaluated over radius candidates.
bool uniform_eps_delta(const std::vector<std::size_t>& f,
                       const QMetricSpace& s, const QMetricSpace& t);

/// Exhaustive search over monotone lax-unital candidate realizers; both
/// quantales must be enumerable and small.  Oracle only.
std::optional<std::vector<QElem>> brute_force_realizer(
    const std::vector<std::size_t>& f, const QMetricSpace& s,
    const QMetricSpace& t, std::size_t cap = 1u << 22);

/// Per-point epsilon-delta continuity; asserted equal to topological
/// continuity between the ball topologies by the test suite.
bool is_pointwise_continuous(const std::vector<std::size_t>& f,
                             const QMetricSpace& s, const QMetricSpace& t);

/// f1 <= f2 in the hom-preorder: pointwise d'-preorder on values.
bool arrow_leq(const std::vector<std::size_t>& f1,
               const std::vector<std::size_t>& f2, const QMetricSpace& t);

// ---- limits and colimits ----------------------------------------------------

struct SpaceWithArrow {
  SpacePtr space;
  MetArrow arrow;
};

/// Equalizer of parallel arrows: the subspace where f and g agree, with the
/// inclusion realized by the identity.
SpaceWithArrow equalizer(const MetArrow& f, const MetArrow& g);

/// Coequalizer: quotient of the target by the smallest equivalence relating
/// f(x) and g(x), metric d([a],[b]) = join over representatives.
SpaceWithArrow coequalizer(const MetArrow& f, const MetArrow& g);

struct ProductSpace {
  SpacePtr space;  // over the product quantale
  std::vector<MetArrow> projections;
  std::vector<std::vector<std::size_t>> tuples;  // point index -> factors
};
ProductSpace product_space(const std::vector<SpacePtr>& spaces,
                           const Caps& caps = {});

struct SumSpace {
  SpacePtr space;  // same quantale as the summands
  std::vector<MetArrow> injections;
};
SumSpace sum_space(const std::vector<SpacePtr>& spaces);

// ---- separation -------------------------------------------------------------

struct Separation {
  SpacePtr quotient;
  MetArrow r;          // projection, an isometry
  MetArrow s_section;  // canonical section, an isometry
  std::vector<std::size_t> cls;  // point -> class index
};

/// Quotient by x ~ y iff 1 <= d(x,y) and 1 <= d(y,x); well-definedness of the
/// quotient metric is re-checked at construction.
Separation separate(const SpacePtr& s);

// ---- extensive metrization --------------------------------------------------

/// Symbolic metric space over Omega(S) with S = T.opens whose ball topology
/// is T: d(x,y) is generated by {O in T : x in O => y in O}.
SpacePtr metrize(const FinTopology& t, const Caps& caps = {});

/// Literal-definition cross-check: the same metric over the materialized
/// table D(P_f(S)); feasible only for very few opens.
SpacePtr metrize_materialized(const FinTopology& t, const Caps& caps = {});

// ---- sampling ---------------------------------------------------------------

/// Seeded random metric space: random entries repaired into a metric by the
/// quantale Floyd-Warshall closure (diagonal joined with the unit, then
/// d(x,z) |= d(x,y) tensor d(y,z) to fixpoint).
SpacePtr random_metric_space(Lcg& rng, const QuantalePtr& q, std::size_t n);

/// Random point map between spaces.
std::vector<std::size_t> random_point_map(Lcg& rng, std::size_t from,
                                          std::size_t to);

}  // namespace qmet

#endif  // QMET_METRIC_HPP_
