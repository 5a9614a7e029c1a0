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

#ifndef QMET_TOPOLOGY_HPP_
#define QMET_TOPOLOGY_HPP_

#include <cstddef>
#include <vector>

#include "qmet/bitset.hpp"
#include "qmet/error.hpp"
#include "qmet/order.hpp"

namespace qmet {

/// Finite topological space on points {0..n-1}: a family of open bitsets
/// containing the empty set and the full set, closed under union and
/// intersection.  Opens are kept sorted and deduplicated.
class FinTopology {
 public:
  /// Smallest topology containing the subbase.  Idempotent.
  static FinTopology generate(std::size_t n, std::vector<DynBitset> subbase,
                              std::size_t cap = 1u << 20);
  static FinTopology discrete(std::size_t n);
  static FinTopology indiscrete(std::size_t n);

  std::size_t points() const { return n_; }
  const std::vector<DynBitset>& opens() const { return opens_; }
  bool is_open(const DynBitset& s) const;

  Preorder specialization() const;
  DynBitset closure(const DynBitset& a) const;
  DynBitset interior(const DynBitset& a) const;
  bool is_t0() const;

  friend bool operator==(const FinTopology& a, const FinTopology& b) {
    return a.n_ == b.n_ && a.opens_ == b.opens_;
  }
  friend bool operator!=(const FinTopology& a, const FinTopology& b) {
    return !(a == b);
  }
  friend bool operator<(const FinTopology& a, const FinTopology& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.opens_ < b.opens_;
  }

 private:
  FinTopology(std::size_t n, std::vector<DynBitset> opens)
      : n_(n), opens_(std::move(opens)) {}

  std::size_t n_ = 0;
  std::vector<DynBitset> opens_;
};

/// Alexandrov topology of a preorder: all up-sets.
FinTopology alexandrov(const Preorder& pre);

/// f continuous from src to tgt: preimages of opens are open.  `f` is total
/// on src's points.
bool is_continuous(const std::vector<std::size_t>& f, const FinTopology& src,
                   const FinTopology& tgt);

/// Every topology on n labeled points, by direct enumeration of families
/// closed under the axioms.  n <= 4.
std::vector<FinTopology> all_topologies(std::size_t n);

/// Independent enumeration: generate from every subbase and deduplicate.
/// Must agree with all_topologies; the acceptance suite cross-checks counts.
std::vector<FinTopology> all_topologies_by_generation(std::size_t n);

}  // namespace qmet

#endif  // QMET_TOPOLOGY_HPP_
