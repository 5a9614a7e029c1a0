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

#ifndef QMET_BITSET_HPP_
#define QMET_BITSET_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace qmet {

/// Fixed-width dynamic bitset.  Subsets of finite carriers (poset elements,
/// space points, topology opens) are all represented this way.  Two bitsets
/// compare equal only if they have the same width.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  static DynBitset full(std::size_t n) {
    DynBitset b(n);
    for (std::size_t i = 0; i < b.w_.size(); ++i) b.w_[i] = ~0ull;
    b.trim();
    return b;
  }

  static DynBitset single(std::size_t n, std::size_t i) {
    DynBitset b(n);
    b.set(i);
    return b;
  }

  /// Bits of `mask` become members; n must be <= 64.
  static DynBitset from_mask(std::size_t n, std::uint64_t mask) {
    DynBitset b(n);
    if (n > 0) b.w_[0] = mask & (n >= 64 ? ~0ull : ((1ull << n) - 1));
    return b;
  }

  std::size_t size() const { return n_; }

  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { w_[i / 64] |= 1ull << (i % 64); }
  void reset(std::size_t i) { w_[i / 64] &= ~(1ull << (i % 64)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  bool is_subset_of(const DynBitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool intersects(const DynBitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  DynBitset& operator|=(const DynBitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  DynBitset& operator&=(const DynBitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  friend DynBitset operator|(DynBitset a, const DynBitset& b) { return a |= b; }
  friend DynBitset operator&(DynBitset a, const DynBitset& b) { return a &= b; }

  DynBitset complement() const {
    DynBitset b(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) b.w_[i] = ~w_[i];
    b.trim();
    return b;
  }

  friend bool operator==(const DynBitset& a, const DynBitset& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const DynBitset& a, const DynBitset& b) {
    return !(a == b);
  }

  /// Total order: by width, then by value as a little-endian integer.
  /// Used only to keep containers and enumerations deterministic.
  friend bool operator<(const DynBitset& a, const DynBitset& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    for (std::size_t i = a.w_.size(); i-- > 0;)
      if (a.w_[i] != b.w_[i]) return a.w_[i] < b.w_[i];
    return false;
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> m;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) m.push_back(i);
    return m;
  }

  /// Value as an integer; requires size() <= 64.
  std::uint64_t to_mask() const { return w_.empty() ? 0 : w_[0]; }

  std::size_t hash() const {
    std::size_t h = n_;
    for (auto w : w_) h = h * 1099511628211ull + static_cast<std::size_t>(w);
    return h;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < n_; ++i) s += test(i) ? '1' : '0';
    return s;
  }

 private:
  void trim() {
    if (n_ % 64 != 0 && !w_.empty()) w_.back() &= (1ull << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct DynBitsetHash {
  std::size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace qmet

#endif  // QMET_BITSET_HPP_
