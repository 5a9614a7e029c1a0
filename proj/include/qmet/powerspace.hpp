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

#ifndef QMET_POWERSPACE_HPP_
#define QMET_POWERSPACE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qmet/metric.hpp"

namespace qmet {

/// Points of X belonging to A with precision greater than delta: the union
/// of the delta-balls around A.
DynBitset b_r(const QMetricSpace& s, const DynBitset& a, const QElem& delta);

/// Fattening: dual-topology closure of b_r(A, delta).
DynBitset fattening(const QMetricSpace& s, const DynBitset& a,
                    const QElem& delta);

/// Families of subsets of X are bitsets over the 2^|X| subset indices;
/// subset index i denotes the subset whose members are the bits of i.
DynBitset subset_of_index(std::size_t n, std::size_t index);
std::size_t index_of_subset(const DynBitset& s);

/// U is robust-open iff every member A admits delta << 1 with
/// P(B_R(A, delta)) contained in U.
bool robust_open(const QMetricSpace& s, const DynBitset& family);

/// All robust-open families, |X| <= 4.  Asserts the result satisfies the
/// topology axioms and throws a fatal diagnostic otherwise.
FinTopology robust_topology_small(const QMetricSpace& s);

/// Specialization preorder of the robust topology on P(X), computed two
/// independent ways (from the defining predicate and from the dual-closure
/// characterization) and asserted equal.
Preorder robust_specialization(const QMetricSpace& s);

// ---- powerspaces ------------------------------------------------------------

enum class PowerVariant { kDq, kDs };

struct PowerSpace {
  SpacePtr base;
  PowerVariant variant = PowerVariant::kDq;
  SpacePtr space;  // on the 2^|X| subsets, numeric bitset order
  std::optional<ScottClosedQuantale> cs;  // present for kDs

  DynBitset subset(std::size_t index) const {
    return subset_of_index(base->size(), index);
  }
};

PowerSpace build_powerspace(const SpacePtr& s, PowerVariant v,
                            const Caps& caps = {});

struct HausdorffReport {
  bool holds = true;
  std::string strategy;
  std::string witness;
};

/// Main theorem check tau_{d,R} = tau_{d_S}: exhaustive topology equality for
/// |X| <= 3, mutual neighborhood-filter refinement for |X| in {4,5}.
HausdorffReport hausdorff_theorem_check(const SpacePtr& s,
                                        const Caps& caps = {});

/// The filter-refinement strategy on its own; usable at any |X| within the
/// powerspace cap, e.g. to cross-check against the exhaustive oracle.
HausdorffReport hausdorff_filter_check(const SpacePtr& s,
                                       const Caps& caps = {});

// ---- monads -----------------------------------------------------------------

/// Kleisli arrow: a point map X -> P(X').
struct KleisliArrow {
  SpacePtr src, tgt;
  std::vector<DynBitset> f;
};

enum class MonadTag { kPq, kPs, kTransformedPs };

std::vector<DynBitset> kleisli_unit(std::size_t n);
DynBitset kleisli_extend_set(const KleisliArrow& k, const DynBitset& a);

/// Unit/extension pair for one of the powerspace monads.  The unit comes
/// back as a Met arrow carrying its canonical realizer (identity for P_Q,
/// the eta of C_S for P_S); extensions act on subsets.  The transformed
/// monad works on separation classes through their canonical
/// representatives, so its unit target is the separated quotient.
struct MonadInstance {
  MonadTag tag = MonadTag::kPq;

  MetArrow unit(const SpacePtr& s, const Caps& caps = {}) const;
  DynBitset extend(const KleisliArrow& f, const DynBitset& a) const;
};

MonadInstance monad_ops(MonadTag tag);

struct MonadLawReport {
  bool passed = true;
  std::size_t law_instances = 0;
  std::vector<std::string> violations;

  void fail(const std::string& v) {
    passed = false;
    violations.push_back(v);
  }
};

/// Kleisli-triple laws on sampled arrows, checked as set functions and as
/// Met arrows (unit realizers validated, extension realizers re-derived via
/// greatest_realizer), plus enrichment monotonicity on comparable pairs.
MonadLawReport verify_monad_laws(MonadTag tag, const SpacePtr& x,
                                 const SpacePtr& y, const SpacePtr& z,
                                 const std::vector<KleisliArrow>& fs,
                                 const std::vector<KleisliArrow>& gs,
                                 const Caps& caps = {});

/// P_S powerspace with its separation quotient and the canonical section
/// choosing the dual-closure representative of each class.
struct TransformedPower {
  PowerSpace ps;
  Separation sep;
  std::vector<DynBitset> canon;  // class -> canonical representative subset

  std::size_t cls_of_subset(const DynBitset& a) const;
};

TransformedPower transformed_power(const SpacePtr& s, const Caps& caps = {});

// ---- the counterexample decider ---------------------------------------------

struct FeasibilityReport {
  bool feasible = true;
  std::vector<QElem> forced;  // 2^n x 2^n forced lower bounds
  std::optional<std::pair<std::size_t, std::size_t>> violation;

  const QElem& bound(std::size_t a, std::size_t b, std::size_t m) const {
    return forced[a * m + b];
  }
};

/// Necessary-condition decider for a metric d' on P(X) with eta short and
/// unit-reachability matching `target`: propagates forced lower bounds by
/// quantale transitive closure; infeasible iff a non-related pair gets a
/// bound above the unit.  Feasible verdicts certify the necessary condition
/// only.
FeasibilityReport powerset_metric_feasible(const QMetricSpace& s,
                                           const Preorder& target);

/// sup : C_S(Q) -> Q as a morphism (strict-monoidal, join-preserving).
QuantaleMorphism sup_morphism(const ScottClosedQuantale& cs);

/// The inverse realizer of the linear remark: bottom -> empty, q -> down q.
/// Requires a non-trivial linear base.
QuantaleMorphism linear_inverse_realizer(const ScottClosedQuantale& cs);

}  // namespace qmet

#endif  // QMET_POWERSPACE_HPP_
