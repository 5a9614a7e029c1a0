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

#include "qmet/topology.hpp"

#include <algorithm>
#include <set>

namespace qmet {

FinTopology FinTopology::generate(std::size_t n, std::vector<DynBitset> subbase,
                                  std::size_t cap) {
  std::set<DynBitset> opens;
  opens.insert(DynBitset(n));
  opens.insert(DynBitset::full(n));
  for (auto& s : subbase) {
    if (s.size() != n)
      throw Error("invalid-element", "subbase member has wrong width");
    opens.insert(s);
  }
  // closure to fixpoint under pairwise union and intersection; finite
  // arbitrary unions reduce to the binary case
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<DynBitset> cur(opens.begin(), opens.end());
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        if (opens.insert(cur[i] | cur[j]).second) changed = true;
        if (opens.insert(cur[i] & cur[j]).second) changed = true;
        if (opens.size() > cap)
          throw Error("cap-exceeded", "generated topology exceeds opens cap");
      }
  }
  return FinTopology(n, std::vector<DynBitset>(opens.begin(), opens.end()));
}

FinTopology FinTopology::discrete(std::size_t n) {
  std::vector<DynBitset> subbase;
  for (std::size_t i = 0; i < n; ++i)
    subbase.push_back(DynBitset::single(n, i));
  return generate(n, std::move(subbase));
}

FinTopology FinTopology::indiscrete(std::size_t n) { return generate(n, {}); }

bool FinTopology::is_open(const DynBitset& s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s);
}

Preorder FinTopology::specialization() const {
  Preorder pre(n_);
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t y = 0; y < n_; ++y) {
      bool le = true;
      for (const auto& o : opens_)
        if (o.test(x) && !o.test(y)) {
          le = false;
          break;
        }
      if (le) pre.set(x, y);
    }
  return pre;
}

DynBitset FinTopology::closure(const DynBitset& a) const {
  // complement of the union of opens disjoint from a
  DynBitset away(n_);
  for (const auto& o : opens_)
    if (!o.intersects(a)) away |= o;
  return away.complement();
}

DynBitset FinTopology::interior(const DynBitset& a) const {
  DynBitset in(n_);
  for (const auto& o : opens_)
    if (o.is_subset_of(a)) in |= o;
  return in;
}

bool FinTopology::is_t0() const { return specialization().antisymmetric(); }

FinTopology alexandrov(const Preorder& pre) {
  auto n = pre.n;
  if (n > 20) throw Error("cap-exceeded", "alexandrov enumeration too large");
  std::vector<DynBitset> opens;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    bool up = true;
    for (std::size_t i = 0; i < n && up; ++i) {
      if (!((mask >> i) & 1)) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (pre.leq(i, j) && !((mask >> j) & 1)) {
          up = false;
          break;
        }
    }
    if (up) opens.push_back(DynBitset::from_mask(n, mask));
  }
  return FinTopology::generate(n, std::move(opens));
}

bool is_continuous(const std::vector<std::size_t>& f, const FinTopology& src,
                   const FinTopology& tgt) {
  if (f.size() != src.points())
    throw Error("arity-mismatch", "map must be total on the source points");
  for (const auto& o : tgt.opens()) {
    DynBitset pre(src.points());
    for (std::size_t x = 0; x < f.size(); ++x)
      if (o.test(f[x])) pre.set(x);
    if (!src.is_open(pre)) return false;
  }
  return true;
}

std::vector<FinTopology> all_topologies(std::size_t n) {
  if (n > 4) throw Error("cap-exceeded", "all_topologies supports n <= 4");
  std::size_t subsets = 1ull << n;
  std::vector<DynBitset> all(subsets);
  for (std::size_t s = 0; s < subsets; ++s)
    all[s] = DynBitset::from_mask(n, s);

  std::vector<FinTopology> out;
  std::uint64_t families = 1ull << subsets;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    auto has = [&](std::size_t s) { return (fam >> s) & 1; };
    if (!has(0) || !has(subsets - 1)) continue;  // empty and full sets
    bool closed = true;
    for (std::size_t a = 0; a < subsets && closed; ++a) {
      if (!has(a)) continue;
      for (std::size_t b = a + 1; b < subsets && closed; ++b) {
        if (!has(b)) continue;
        if (!has(a | b) || !has(a & b)) closed = false;
      }
    }
    if (!closed) continue;
    std::vector<DynBitset> opens;
    for (std::size_t s = 0; s < subsets; ++s)
      if (has(s)) opens.push_back(all[s]);
    out.push_back(FinTopology::generate(n, std::move(opens)));
  }
  return out;
}

std::vector<FinTopology> all_topologies_by_generation(std::size_t n) {
  if (n > 4) throw Error("cap-exceeded", "enumeration supports n <= 4");
  std::size_t subsets = 1ull << n;
  std::set<FinTopology> seen;
  std::uint64_t families = 1ull << subsets;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    std::vector<DynBitset> subbase;
    for (std::size_t s = 0; s < subsets; ++s)
      if ((fam >> s) & 1) subbase.push_back(DynBitset::from_mask(n, s));
    seen.insert(FinTopology::generate(n, std::move(subbase)));
  }
  return std::vector<FinTopology>(seen.begin(), seen.end());
}

}  // namespace qmet
