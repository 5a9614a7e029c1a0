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

#ifndef QMET_SAMPLING_HPP_
#define QMET_SAMPLING_HPP_

#include <cstdint>

#include "qmet/order.hpp"

namespace qmet {

/// Linear congruential generator with the Numerical Recipes constants
/// (a = 1664525, c = 1013904223, m = 2^32).  Fixed here, and documented in
/// the README, so reimplementations reproduce the same sample streams.
class Lcg {
 public:
  explicit Lcg(std::uint32_t seed) : state_(seed) {}

  std::uint32_t next() {
    state_ = 1664525u * state_ + 1013904223u;
    return state_;
  }

  /// Uniform-ish draw in [0, n); modulo bias is irrelevant at these sizes.
  std::uint32_t below(std::uint32_t n) { return n == 0 ? 0 : next() % n; }

  bool chance(std::uint32_t num, std::uint32_t den) {
    return below(den) < num;
  }

 private:
  std::uint32_t state_;
};

/// Random poset on n points whose index order is a linear extension.
inline FinPoset random_poset(Lcg& rng, std::size_t n) {
  Preorder ord(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.chance(1, 3)) ord.set(i, j);
  ord.transitive_close();
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  return FinPoset(labels, ord);
}

/// Random monotone operation of the given arity.  Fills the table in
/// mixed-radix order (a linear extension of the pointwise order when the
/// poset's index order is one), drawing each value from the set compatible
/// with the already-fixed entries; restarts when boxed in.
inline Operation random_monotone_op(Lcg& rng, const FinPoset& p,
                                    std::size_t arity) {
  auto n = p.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) total *= n;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Operation op;
    op.arity = arity;
    op.table.assign(total, 0);
    std::vector<std::size_t> args(arity), prior(arity);
    bool stuck = false;
    for (std::size_t idx = 0; idx < total && !stuck; ++idx) {
      std::size_t t = idx;
      for (std::size_t k = arity; k-- > 0;) {
        args[k] = t % n;
        t /= n;
      }
      std::vector<std::size_t> candidates;
      for (std::size_t v = 0; v < n; ++v) {
        bool ok = true;
        for (std::size_t jdx = 0; jdx < idx && ok; ++jdx) {
          std::size_t u = jdx;
          for (std::size_t k = arity; k-- > 0;) {
            prior[k] = u % n;
            u /= n;
          }
          bool le = true, ge = true;
          for (std::size_t k = 0; k < arity; ++k) {
            if (!p.leq(prior[k], args[k])) le = false;
            if (!p.leq(args[k], prior[k])) ge = false;
          }
          if (le && !p.leq(op.table[jdx], v)) ok = false;
          if (ge && !p.leq(v, op.table[jdx])) ok = false;
        }
        if (ok) candidates.push_back(v);
      }
      if (candidates.empty()) {
        stuck = true;
        break;
      }
      op.table[idx] = candidates[rng.below(candidates.size())];
    }
    if (!stuck) return op;
  }
  throw Error("non-monotone", "could not sample a monotone operation");
}

/// Random monotone map between two posets (indices linear extensions).
inline std::vector<std::size_t> random_monotone_map(Lcg& rng,
                                                    const FinPoset& src,
                                                    const FinPoset& tgt) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<std::size_t> f(src.size());
    bool stuck = false;
    for (std::size_t i = 0; i < src.size() && !stuck; ++i) {
      std::vector<std::size_t> candidates;
      for (std::size_t v = 0; v < tgt.size(); ++v) {
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
          if (src.leq(j, i) && !tgt.leq(f[j], v)) ok = false;
          if (src.leq(i, j) && !tgt.leq(v, f[j])) ok = false;
        }
        if (ok) candidates.push_back(v);
      }
      if (candidates.empty())
        stuck = true;
      else
        f[i] = candidates[rng.below(candidates.size())];
    }
    if (!stuck) return f;
  }
  throw Error("non-monotone", "could not sample a monotone map");
}

}  // namespace qmet

#endif  // QMET_SAMPLING_HPP_
