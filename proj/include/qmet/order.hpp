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

#ifndef QMET_ORDER_HPP_
#define QMET_ORDER_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmet/bitset.hpp"
#include "qmet/error.hpp"

namespace qmet {

/// Reflexive transitive relation on {0..n-1}.  Not necessarily antisymmetric;
/// FinPoset adds that requirement.
struct Preorder {
  std::size_t n = 0;
  std::vector<bool> rel;  // rel[i*n+j] <=> i <= j

  Preorder() = default;
  explicit Preorder(std::size_t k) : n(k), rel(k * k, false) {
    for (std::size_t i = 0; i < k; ++i) set(i, i);
  }

  bool leq(std::size_t i, std::size_t j) const { return rel[i * n + j]; }
  void set(std::size_t i, std::size_t j) { rel[i * n + j] = true; }

  bool reflexive() const;
  bool transitive() const;
  bool antisymmetric() const;
  void transitive_close();

  friend bool operator==(const Preorder& a, const Preorder& b) {
    return a.n == b.n && a.rel == b.rel;
  }
};

/// Finite poset: distinct labels plus a validated partial order.
class FinPoset {
 public:
  FinPoset(std::vector<std::string> labels, Preorder order);

  std::size_t size() const { return order_.n; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  bool leq(std::size_t i, std::size_t j) const { return order_.leq(i, j); }
  const Preorder& order() const { return order_; }

  std::optional<std::size_t> join_of(const std::vector<std::size_t>& s) const;
  std::optional<std::size_t> meet_of(const std::vector<std::size_t>& s) const;
  std::optional<std::size_t> bottom() const;
  std::optional<std::size_t> top() const;

  /// True iff this finite poset is a (complete) lattice.  Computed once at
  /// construction.
  bool is_lattice() const { return lattice_; }
  void require_lattice() const;  // throws not-a-complete-lattice

  // Closed forms, valid on finite lattices only (cross-validated against the
  // quantifier definitions by the test suite on lattices of <= 6 elements).
  bool way_below(std::size_t x, std::size_t y) const;      // == leq
  bool totally_below(std::size_t x, std::size_t y) const;  // y !<= join{z : x !<= z}

  // Quantifier definitions, brute force over subsets; O(2^n) oracles.
  bool way_below_by_definition(std::size_t x, std::size_t y) const;
  bool totally_below_by_definition(std::size_t x, std::size_t y) const;

  DynBitset down_closure(const DynBitset& a) const;
  DynBitset up_closure(const DynBitset& a) const;
  bool is_lower(const DynBitset& a) const;

 private:
  bool compute_lattice() const;

  std::vector<std::string> labels_;
  Preorder order_;
  bool lattice_ = false;
};

/// joins_meets: least upper / greatest lower bound of a subset, absent when
/// it does not exist.  Join of {} is bottom, meet of {} is top (when present).
enum class Bound { kJoin, kMeet };
std::optional<std::size_t> joins_meets(const FinPoset& p, const DynBitset& s,
                                       Bound which);

struct LatticeClassification {
  bool continuous = false;
  bool algebraic = false;
  bool prime_continuous = false;
  bool prime_algebraic = false;
  DynBitset compact_elements;
  DynBitset prime_elements;
};

/// Computes the Definition-CL flags by their defining formulas.  On finite
/// lattices continuous and algebraic always come out true; callers may assert
/// that.  Throws not-a-complete-lattice on non-lattices.
LatticeClassification classify_lattice(const FinPoset& l);

/// D(P): the lattice of lower sets of P ordered by inclusion, with the
/// embedding eta(p) = down{p}.  `sets` aligns lattice indices with member
/// bitsets over P; enumeration order is deterministic.
struct LowerSetLattice {
  FinPoset lattice;
  std::vector<DynBitset> sets;
  std::vector<std::size_t> eta;

  std::size_t index_of(const DynBitset& s) const;
};

LowerSetLattice lower_set_lattice(const FinPoset& p, std::size_t cap = 100000);

/// Finitary monotone operation on a poset carrier, stored as a flat table
/// indexed mixed-radix (last argument varies fastest).
struct Operation {
  std::size_t arity = 0;
  std::vector<std::size_t> table;

  std::size_t apply(std::size_t n, const std::vector<std::size_t>& args) const;
};

bool operation_monotone(const FinPoset& p, const Operation& o);

/// Omega-algebra: poset carrier plus named monotone operations.
class TermAlgebra {
 public:
  TermAlgebra(FinPoset carrier, std::map<std::string, Operation> ops);

  const FinPoset& carrier() const { return carrier_; }
  const std::map<std::string, Operation>& operations() const { return ops_; }
  const Operation& operation(const std::string& name) const;

 private:
  FinPoset carrier_;
  std::map<std::string, Operation> ops_;
};

/// First-order term over a signature: a variable or an operation applied to
/// arguments.
struct Term {
  std::string head;
  bool is_var = true;
  std::vector<Term> args;
};

Term tvar(const std::string& name);
Term tapp(const std::string& op, std::vector<Term> args);
std::vector<std::string> term_vars(const Term& t);  // sorted, deduplicated
bool term_linear(const Term& t);                    // every variable occurs once

/// Parses "x", "one()" or "tensor(x,tensor(y,z))".  Bare names are
/// variables; a name followed by parentheses is an operation.
Term parse_term(const std::string& text);

std::size_t eval_term(const TermAlgebra& a, const Term& t,
                      const std::map<std::string, std::size_t>& env);

/// ohat(Theta) = down{o(theta) | theta in prod Theta(i)} on D(P).
Operation lift_operation(const FinPoset& p, const LowerSetLattice& d,
                         const Operation& o);

/// The lifted algebra on D(carrier) together with the lattice data.
struct LiftedAlgebra {
  LowerSetLattice d;
  TermAlgebra algebra;
};
LiftedAlgebra lift_algebra(const TermAlgebra& a, std::size_t cap = 100000);

struct InequationReport {
  bool holds_in_base = false;
  bool holds_in_lift = false;
  bool linearity_ok = false;  // e1 linear and vars(e2) subset of vars(e1)
  // First failing environment (variable -> element label), with a tag saying
  // where it failed.
  std::optional<std::map<std::string, std::string>> counterexample;
  std::string counterexample_where;
};

InequationReport check_inequation_lift(const TermAlgebra& a, const Term& e1,
                                       const Term& e2,
                                       std::size_t cap = 100000);

/// Antichain of finite subsets of an implicit carrier, denoting the lower set
/// it generates in (P_f(S), subset-order).  Canonical form: reduced (no
/// generator below another) and sorted.  This is the symbolic representation
/// used for the metrization locale, which is never materialized.
struct Antichain {
  std::vector<DynBitset> gens;

  friend bool operator==(const Antichain& a, const Antichain& b) {
    return a.gens == b.gens;
  }
  friend bool operator<(const Antichain& a, const Antichain& b) {
    return a.gens < b.gens;
  }
};

Antichain make_antichain(std::vector<DynBitset> gens);
/// Every generator of a is below (subset of) some generator of b.
bool antichain_leq(const Antichain& a, const Antichain& b);
Antichain antichain_join(const Antichain& a, const Antichain& b);
Antichain antichain_meet(const Antichain& a, const Antichain& b);

/// Downward-closed subset in one of two representations: a concrete bitset
/// over a materialized poset, or a symbolic generator antichain over the
/// finite-subsets-of-S poset.
class LowerSet {
 public:
  static LowerSet concrete(const FinPoset* parent, DynBitset members);
  static LowerSet symbolic(Antichain gens);

  bool is_concrete() const { return std::holds_alternative<Concrete>(rep_); }
  const DynBitset& members() const;   // concrete only
  const Antichain& generators() const;  // symbolic only

  bool leq(const LowerSet& other) const;
  LowerSet join(const LowerSet& other) const;
  LowerSet meet(const LowerSet& other) const;
  friend bool operator==(const LowerSet& a, const LowerSet& b);

 private:
  struct Concrete {
    const FinPoset* parent;
    DynBitset members;
  };
  std::variant<Concrete, Antichain> rep_;
};

/// Enumerates every poset on n labeled points whose index order is a linear
/// extension; every isomorphism class appears at least once.  Useful for
/// exhaustive small-size checks.
void for_each_poset_upto_iso(std::size_t n,
                             const std::function<void(const FinPoset&)>& fn);
void for_each_lattice_upto_iso(std::size_t n,
                               const std::function<void(const FinPoset&)>& fn);

}  // namespace qmet

#endif  // QMET_ORDER_HPP_
