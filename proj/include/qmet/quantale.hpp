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

#ifndef QMET_QUANTALE_HPP_
#define QMET_QUANTALE_HPP_

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qmet/error.hpp"
#include "qmet/order.hpp"
#include "qmet/rational.hpp"

namespace qmet {

/// Element of a quantale in C_S(Q) form for a linear non-table Q: either the
/// empty Scott-closed set (nullopt) or the principal lower set of a rational.
struct LiftedRat {
  std::optional<ExtRat> down;

  friend bool operator==(const LiftedRat& a, const LiftedRat& b) {
    return a.down == b.down;
  }
  friend bool operator<(const LiftedRat& a, const LiftedRat& b) {
    if (!a.down || !b.down) return !a.down && b.down.has_value();
    return *a.down < *b.down;
  }
};

/// Quantale element.  Which alternative is valid depends on the owning
/// quantale: table index for finite tables, ExtRat for the rational chains,
/// LiftedRat for C_S of a rational chain, Antichain for the symbolic
/// metrization locale.
using QElem = std::variant<std::uint32_t, ExtRat, LiftedRat, Antichain>;

bool qelem_eq(const QElem& a, const QElem& b);
bool qelem_lt(const QElem& a, const QElem& b);  // structural, for containers

struct QElemLess {
  bool operator()(const QElem& a, const QElem& b) const {
    return qelem_lt(a, b);
  }
};

/// Distance values of the querying metric space; the rational family derives
/// its finite radius candidate set from these.
struct RadiusContext {
  std::vector<QElem> values;
};

/// A continuous quantale behind one abstract interface.  Implementations are
/// immutable and safe for concurrent reads.
class Quantale {
 public:
  virtual ~Quantale() = default;

  virtual std::string name() const = 0;
  virtual bool enumerable() const = 0;
  virtual std::size_t size() const;
  virtual QElem element(std::size_t i) const;
  virtual std::optional<std::size_t> index_of(const QElem& e) const;
  virtual std::string label(const QElem& e) const = 0;
  virtual std::optional<QElem> parse(const std::string& s) const = 0;

  virtual bool leq(const QElem& a, const QElem& b) const = 0;
  virtual QElem tensor(const QElem& a, const QElem& b) const = 0;
  virtual QElem unit() const = 0;
  virtual QElem bottom() const = 0;
  virtual QElem top() const = 0;
  virtual QElem join(std::span<const QElem> s) const = 0;  // empty -> bottom
  virtual QElem meet(std::span<const QElem> s) const = 0;  // empty -> top
  virtual bool way_below(const QElem& a, const QElem& b) const = 0;
  virtual bool totally_below(const QElem& a, const QElem& b) const = 0;

  /// Finite set of radii sufficient to decide the artifact's ball and
  /// robustness predicates (all monotone in the radius).  Tables return
  /// every delta way below the unit; the rational family derives thresholds
  /// from the context's value set.
  virtual std::vector<QElem> radius_candidates(const RadiusContext&) const = 0;
  /// Radii for the totally-below ball topology; same contract with << read
  /// as totally-below.
  virtual std::vector<QElem> total_radius_candidates(
      const RadiusContext&) const = 0;

  virtual bool is_linear() const = 0;
  virtual bool is_trivial() const = 0;
  virtual bool is_affine() const = 0;
  virtual bool is_commutative() const = 0;
  virtual bool is_locale() const = 0;

  enum class Side { kLeft, kRight };
  /// x -o z (left) or z o- y (right) from the adjunction.
  virtual QElem residual(const QElem& x, const QElem& z, Side side) const = 0;

  bool equal(const QElem& a, const QElem& b) const {
    return leq(a, b) && leq(b, a);
  }
  QElem join2(const QElem& a, const QElem& b) const;
  QElem meet2(const QElem& a, const QElem& b) const;
};

using QuantalePtr = std::shared_ptr<const Quantale>;

/// Finite quantale given by tables over a lattice carrier.
class TableQuantale : public Quantale {
 public:
  /// Validates the carrier is a finite complete lattice; law checking beyond
  /// that is verify_quantale's job, so deliberately broken tensors can be
  /// constructed for testing.
  TableQuantale(std::string name, FinPoset carrier,
                std::vector<std::uint32_t> tensor_table, std::uint32_t unit);

  /// Trusted fast path: join and meet tables supplied by a constructor that
  /// knows them in closed form (unions, componentwise, ...).  Skips the
  /// quadratic-per-pair lattice scan; verify_quantale still re-checks the
  /// bound laws.
  TableQuantale(std::string name, FinPoset carrier,
                std::vector<std::uint32_t> tensor_table, std::uint32_t unit,
                std::vector<std::uint32_t> join_table,
                std::vector<std::uint32_t> meet_table);

  std::string name() const override { return name_; }
  bool enumerable() const override { return true; }
  std::size_t size() const override { return carrier_.size(); }
  QElem element(std::size_t i) const override;
  std::optional<std::size_t> index_of(const QElem& e) const override;
  std::string label(const QElem& e) const override;
  std::optional<QElem> parse(const std::string& s) const override;

  bool leq(const QElem& a, const QElem& b) const override;
  QElem tensor(const QElem& a, const QElem& b) const override;
  QElem unit() const override;
  QElem bottom() const override;
  QElem top() const override;
  QElem join(std::span<const QElem> s) const override;
  QElem meet(std::span<const QElem> s) const override;
  bool way_below(const QElem& a, const QElem& b) const override;
  bool totally_below(const QElem& a, const QElem& b) const override;
  std::vector<QElem> radius_candidates(const RadiusContext&) const override;
  std::vector<QElem> total_radius_candidates(
      const RadiusContext&) const override;

  bool is_linear() const override { return linear_; }
  bool is_trivial() const override { return trivial_; }
  bool is_affine() const override { return affine_; }
  bool is_commutative() const override { return commutative_; }
  bool is_locale() const override { return locale_; }

  QElem residual(const QElem& x, const QElem& z, Side side) const override;

  const FinPoset& carrier() const { return carrier_; }
  std::uint32_t tensor_idx(std::uint32_t a, std::uint32_t b) const {
    return tensor_[a * carrier_.size() + b];
  }
  std::uint32_t unit_idx() const { return unit_; }
  std::uint32_t idx(const QElem& e) const;  // checked unwrap

  /// Copy with one tensor cell replaced; for mutation-detection tests.
  std::shared_ptr<TableQuantale> with_tensor_cell(std::uint32_t a,
                                                  std::uint32_t b,
                                                  std::uint32_t value) const;

 private:
  void init_flags();

  std::string name_;
  FinPoset carrier_;
  std::vector<std::uint32_t> tensor_;
  std::uint32_t unit_;
  std::vector<std::uint32_t> join_, meet_;  // n*n lookup tables
  std::uint32_t bottom_ = 0, top_ = 0;
  bool linear_, trivial_, affine_, commutative_, locale_;
};

/// The exact-rational extended half-line [0, inf] with the reversed numeric
/// order (bottom = inf, top = unit = 0).  Tensor is capped addition for
/// rational_rplus and numeric max (= lattice meet) for rational_rmax.
class RationalChainQuantale : public Quantale {
 public:
  enum class TensorKind { kPlus, kMax };
  explicit RationalChainQuantale(TensorKind k) : kind_(k) {}

  std::string name() const override {
    return kind_ == TensorKind::kPlus ? "rational_rplus" : "rational_rmax";
  }
  bool enumerable() const override { return false; }
  std::string label(const QElem& e) const override;
  std::optional<QElem> parse(const std::string& s) const override;

  bool leq(const QElem& a, const QElem& b) const override;
  QElem tensor(const QElem& a, const QElem& b) const override;
  QElem unit() const override { return ExtRat(0L); }
  QElem bottom() const override { return ExtRat::infinity(); }
  QElem top() const override { return ExtRat(0L); }
  QElem join(std::span<const QElem> s) const override;
  QElem meet(std::span<const QElem> s) const override;
  bool way_below(const QElem& a, const QElem& b) const override;
  bool totally_below(const QElem& a, const QElem& b) const override;
  std::vector<QElem> radius_candidates(const RadiusContext&) const override;
  std::vector<QElem> total_radius_candidates(
      const RadiusContext&) const override;

  bool is_linear() const override { return true; }
  bool is_trivial() const override { return false; }
  bool is_affine() const override { return true; }
  bool is_commutative() const override { return true; }
  bool is_locale() const override { return kind_ == TensorKind::kMax; }

  QElem residual(const QElem& x, const QElem& z, Side side) const override;

  TensorKind kind() const { return kind_; }

 private:
  static const ExtRat& rat(const QElem& e);
  TensorKind kind_;
};

/// C_S(Q) for a linear rational chain Q, via the isomorphism with the
/// lifting Q_bot: elements are the empty set or principal lower sets.
class LiftedRationalQuantale : public Quantale {
 public:
  explicit LiftedRationalQuantale(std::shared_ptr<const RationalChainQuantale> base)
      : base_(std::move(base)) {}

  std::string name() const override { return "scott_closed:" + base_->name(); }
  bool enumerable() const override { return false; }
  std::string label(const QElem& e) const override;
  std::optional<QElem> parse(const std::string& s) const override;

  bool leq(const QElem& a, const QElem& b) const override;
  QElem tensor(const QElem& a, const QElem& b) const override;
  QElem unit() const override;
  QElem bottom() const override { return LiftedRat{}; }
  QElem top() const override;
  QElem join(std::span<const QElem> s) const override;
  QElem meet(std::span<const QElem> s) const override;
  bool way_below(const QElem& a, const QElem& b) const override;
  bool totally_below(const QElem& a, const QElem& b) const override;
  std::vector<QElem> radius_candidates(const RadiusContext&) const override;
  std::vector<QElem> total_radius_candidates(
      const RadiusContext&) const override;

  bool is_linear() const override { return true; }
  bool is_trivial() const override { return false; }
  bool is_affine() const override { return true; }
  bool is_commutative() const override { return true; }
  bool is_locale() const override { return base_->is_locale(); }

  QElem residual(const QElem& x, const QElem& z, Side side) const override;

  const RationalChainQuantale& base() const { return *base_; }

 private:
  static const LiftedRat& lift(const QElem& e);
  std::shared_ptr<const RationalChainQuantale> base_;
};

/// Omega(S) = D(P_f(S), subset): the prime-algebraic locale used by the
/// extensive metrization.  Elements are generator antichains over subsets of
/// a size-|S| universe; the doubly-exponential carrier is never materialized.
class OmegaQuantale : public Quantale {
 public:
  explicit OmegaQuantale(std::size_t universe) : universe_(universe) {}

  std::string name() const override {
    return "omega:" + std::to_string(universe_);
  }
  bool enumerable() const override { return false; }
  std::string label(const QElem& e) const override;
  std::optional<QElem> parse(const std::string& s) const override;

  bool leq(const QElem& a, const QElem& b) const override;
  QElem tensor(const QElem& a, const QElem& b) const override;  // meet
  QElem unit() const override;  // down{S}
  QElem bottom() const override { return Antichain{}; }
  QElem top() const override;
  QElem join(std::span<const QElem> s) const override;
  QElem meet(std::span<const QElem> s) const override;
  bool way_below(const QElem& a, const QElem& b) const override;
  bool totally_below(const QElem& a, const QElem& b) const override;
  std::vector<QElem> radius_candidates(const RadiusContext&) const override;
  std::vector<QElem> total_radius_candidates(
      const RadiusContext&) const override;

  bool is_linear() const override { return universe_ == 0; }
  bool is_trivial() const override { return false; }
  bool is_affine() const override { return true; }
  bool is_commutative() const override { return true; }
  bool is_locale() const override { return true; }

  QElem residual(const QElem& x, const QElem& z, Side side) const override;

  std::size_t universe() const { return universe_; }

 private:
  static const Antichain& chain(const QElem& e);
  std::size_t universe_;
};

// ---- verification ----------------------------------------------------------

struct QuantaleReport {
  bool passed = true;
  std::vector<std::pair<std::string, std::string>> violations;  // law, witness
  bool trusted = false;  // rational family: proofs by construction

  void fail(const std::string& law, const std::string& witness) {
    passed = false;
    violations.emplace_back(law, witness);
  }
};

/// Checks lattice completeness, monoid laws, both distributivity laws (via
/// the binary-join reduction) and flag consistency on enumerable quantales.
/// The rational family returns a trusted report backed by sampled law spot
/// checks.
QuantaleReport verify_quantale(const Quantale& q);

// ---- constructors ----------------------------------------------------------

/// An ordered monoid presented by tables: input to free_quantale and
/// day_convolution.
struct OrderedMonoid {
  FinPoset poset;
  Operation op;  // binary, monotone
  std::size_t unit;

  OrderedMonoid(FinPoset p, Operation o, std::size_t u);
  bool commutative() const;
};

QuantalePtr sigma();
QuantalePtr trivial_quantale();
QuantalePtr chain_plus(std::size_t n);
QuantalePtr chain_max(std::size_t n);
std::shared_ptr<const RationalChainQuantale> rational_rplus();
std::shared_ptr<const RationalChainQuantale> rational_rmax();
QuantalePtr relations(std::size_t k, const Caps& caps = {});
QuantalePtr product(const QuantalePtr& a, const QuantalePtr& b,
                    const Caps& caps = {});
QuantalePtr affine_part(const QuantalePtr& q);
QuantalePtr pointwise_hom(const FinPoset& p, const QuantalePtr& q,
                          const Caps& caps = {});
QuantalePtr day_convolution(const OrderedMonoid& p, const QuantalePtr& q,
                            const Caps& caps = {});
QuantalePtr free_quantale(const OrderedMonoid& p, const Caps& caps = {});

/// Day convolution restriction conditions on a finite lattice monoid; the
/// paper gives no finite example satisfying them, so they are exposed as
/// checkable predicates only.
bool day_star_condition(const OrderedMonoid& p);
bool day_star_star_condition(const OrderedMonoid& p);

// ---- C_S(Q) and the C monad -------------------------------------------------

/// C_S(Q) plus the base<->closed-set correspondence needed by the powerspace
/// metrics.  For table bases the closed-set quantale is again a table and
/// `sets` aligns its indices with member bitsets over the base carrier; for
/// rational bases the lifted closed form is used and `sets` is empty.
struct ScottClosedQuantale {
  QuantalePtr base;
  QuantalePtr closed;
  std::shared_ptr<const LowerSetLattice> sets;  // table base only

  QElem eta(const QElem& base_elem) const;   // down-closure of a singleton
  QElem sup(const QElem& closed_elem) const;  // join of members; empty -> bot
  QElem from_lower_bitset(const DynBitset& b) const;
  DynBitset to_lower_bitset(const QElem& e) const;
};

ScottClosedQuantale scott_closed_quantale(const QuantalePtr& q,
                                          const Caps& caps = {});

/// Kleisli data for the C monad: a monotone map from base elements of Q to
/// closed sets of Q'.
struct CKleisli {
  ScottClosedQuantale src;  // over Q
  ScottClosedQuantale tgt;  // over Q'
  std::vector<QElem> g;     // indexed by Q's table carrier

  QElem apply(std::size_t base_index) const { return g[base_index]; }
};

CKleisli make_c_kleisli(ScottClosedQuantale src, ScottClosedQuantale tgt,
                        std::vector<QElem> g);  // checks monotonicity

/// g*(A) = closure of the union of g over A's members.
QElem c_extend(const CKleisli& k, const QElem& closed_elem);

// ---- morphisms --------------------------------------------------------------

enum class MorphismKind {
  kMonotone,
  kScottContinuous,
  kLaxUnital,
  kLaxMonoidal,
  kStrictMonoidal,
  kJoinPreserving,
};

/// Witness that a closed-form morphism is not Scott continuous: a directed
/// chain sample whose image is constantly `image_value`, while the chain's
/// join maps elsewhere.  The constancy over the full directed set is part of
/// the closed form.
struct ScottWitness {
  std::vector<QElem> chain;
  QElem chain_join;
  QElem image_value;
};

class QuantaleMorphism {
 public:
  /// Table-backed: values indexed by the source carrier.
  QuantaleMorphism(std::string name, QuantalePtr src, QuantalePtr tgt,
                   std::vector<QElem> values);
  /// Closed-form (rational sources): `scott` is the analytic verdict, with a
  /// witness when negative.
  QuantaleMorphism(std::string name, QuantalePtr src, QuantalePtr tgt,
                   std::function<QElem(const QElem&)> fn, bool scott,
                   std::optional<ScottWitness> witness = std::nullopt);

  const std::string& name() const { return name_; }
  const QuantalePtr& source() const { return src_; }
  const QuantalePtr& target() const { return tgt_; }
  QElem map(const QElem& e) const;
  bool table_backed() const { return !values_.empty() || src_->enumerable(); }
  bool closed_form_scott() const { return scott_; }
  const std::optional<ScottWitness>& scott_witness() const { return witness_; }

 private:
  std::string name_;
  QuantalePtr src_, tgt_;
  std::vector<QElem> values_;
  std::function<QElem(const QElem&)> fn_;
  bool scott_ = true;
  std::optional<ScottWitness> witness_;
};

struct MorphismReport {
  bool monotone = true;
  bool scott_continuous = true;
  bool lax_unital = true;
  bool lax_monoidal = true;
  bool strict_monoidal = true;
  bool join_preserving = true;
  std::vector<std::string> witnesses;

  bool has(MorphismKind k) const;
};

/// Exact on table sources; on rational sources checks the listed sample
/// points plus the analytic Scott verdict carried by the morphism.
MorphismReport verify_morphism(const QuantaleMorphism& m,
                               const std::vector<QElem>& rational_samples = {});

/// Named morphism examples from the theory; used by tests and scenarios.
QuantaleMorphism morphism_top(const QuantalePtr& q);       // 1 -> Q, * |-> top
QuantaleMorphism morphism_bang(const QuantalePtr& q);      // Q -> 1
QuantaleMorphism morphism_affine_inclusion(const QuantalePtr& q);  // Q/1 -> Q
QuantaleMorphism morphism_meet_unit(const QuantalePtr& q);  // Q -> Q/1
QuantaleMorphism morphism_chain_inclusion(std::size_t n);  // chain_plus(n) -> R+
QuantaleMorphism morphism_ceil(std::size_t n);  // R+ -> chain_plus(n), not Scott
QuantaleMorphism morphism_rmax_to_rplus();      // identity map, lax-monoidal

}  // namespace qmet

#endif  // QMET_QUANTALE_HPP_
