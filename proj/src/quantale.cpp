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

#include "qmet/quantale.hpp"

#include <algorithm>
#include <set>

namespace qmet {

bool qelem_eq(const QElem& a, const QElem& b) { return !qelem_lt(a, b) && !qelem_lt(b, a); }

bool qelem_lt(const QElem& a, const QElem& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  switch (a.index()) {
    case 0:
      return std::get<0>(a) < std::get<0>(b);
    case 1:
      return std::get<1>(a) < std::get<1>(b);
    case 2:
      return std::get<2>(a) < std::get<2>(b);
    default:
      return std::get<3>(a) < std::get<3>(b);
  }
}

std::size_t Quantale::size() const {
  throw Error("hypothesis-violation", name() + " is not enumerable");
}

QElem Quantale::element(std::size_t) const {
  throw Error("hypothesis-violation", name() + " is not enumerable");
}

std::optional<std::size_t> Quantale::index_of(const QElem&) const {
  return std::nullopt;
}

QElem Quantale::join2(const QElem& a, const QElem& b) const {
  QElem s[2] = {a, b};
  return join(std::span<const QElem>(s, 2));
}

QElem Quantale::meet2(const QElem& a, const QElem& b) const {
  QElem s[2] = {a, b};
  return meet(std::span<const QElem>(s, 2));
}

// ---- TableQuantale ----------------------------------------------------------

TableQuantale::TableQuantale(std::string name, FinPoset carrier,
                             std::vector<std::uint32_t> tensor_table,
                             std::uint32_t unit)
    : name_(std::move(name)),
      carrier_(std::move(carrier)),
      tensor_(std::move(tensor_table)),
      unit_(unit) {
  auto n = carrier_.size();
  carrier_.require_lattice();
  join_.resize(n * n);
  meet_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      join_[i * n + j] = static_cast<std::uint32_t>(*carrier_.join_of({i, j}));
      meet_[i * n + j] = static_cast<std::uint32_t>(*carrier_.meet_of({i, j}));
    }
  init_flags();
}

TableQuantale::TableQuantale(std::string name, FinPoset carrier,
                             std::vector<std::uint32_t> tensor_table,
                             std::uint32_t unit,
                             std::vector<std::uint32_t> join_table,
                             std::vector<std::uint32_t> meet_table)
    : name_(std::move(name)),
      carrier_(std::move(carrier)),
      tensor_(std::move(tensor_table)),
      unit_(unit),
      join_(std::move(join_table)),
      meet_(std::move(meet_table)) {
  auto n = carrier_.size();
  if (join_.size() != n * n || meet_.size() != n * n)
    throw Error("arity-mismatch", "bound tables must have n*n entries");
  init_flags();
}

void TableQuantale::init_flags() {
  auto n = carrier_.size();
  if (tensor_.size() != n * n)
    throw Error("arity-mismatch", "tensor table must have n*n entries");
  if (unit_ >= n) throw Error("invalid-element", "unit index out of range");
  for (auto v : tensor_)
    if (v >= n) throw Error("invalid-element", "tensor cell out of range");

  std::uint32_t bot = 0, top = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (carrier_.leq(i, bot)) bot = static_cast<std::uint32_t>(i);
    if (carrier_.leq(top, i)) top = static_cast<std::uint32_t>(i);
  }
  bottom_ = bot;
  top_ = top;
  linear_ = true;
  commutative_ = true;
  locale_ = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!carrier_.leq(i, j) && !carrier_.leq(j, i)) linear_ = false;
      if (tensor_[i * n + j] != tensor_[j * n + i]) commutative_ = false;
      if (tensor_[i * n + j] != meet_[i * n + j]) locale_ = false;
    }
  trivial_ = unit_ == bottom_;
  affine_ = unit_ == top_;
}

std::uint32_t TableQuantale::idx(const QElem& e) const {
  if (!std::holds_alternative<std::uint32_t>(e))
    throw Error("invalid-element", "element does not belong to " + name_);
  auto i = std::get<std::uint32_t>(e);
  if (i >= carrier_.size())
    throw Error("invalid-element", "index out of range for " + name_);
  return i;
}

QElem TableQuantale::element(std::size_t i) const {
  if (i >= carrier_.size())
    throw Error("invalid-element", "index out of range for " + name_);
  return static_cast<std::uint32_t>(i);
}

std::optional<std::size_t> TableQuantale::index_of(const QElem& e) const {
  if (!std::holds_alternative<std::uint32_t>(e)) return std::nullopt;
  auto i = std::get<std::uint32_t>(e);
  if (i >= carrier_.size()) return std::nullopt;
  return i;
}

std::string TableQuantale::label(const QElem& e) const {
  return carrier_.label(idx(e));
}

std::optional<QElem> TableQuantale::parse(const std::string& s) const {
  auto i = carrier_.index_of(s);
  if (!i) return std::nullopt;
  return static_cast<std::uint32_t>(*i);
}

bool TableQuantale::leq(const QElem& a, const QElem& b) const {
  return carrier_.leq(idx(a), idx(b));
}

QElem TableQuantale::tensor(const QElem& a, const QElem& b) const {
  return tensor_idx(idx(a), idx(b));
}

QElem TableQuantale::unit() const { return unit_; }

QElem TableQuantale::bottom() const { return bottom_; }

QElem TableQuantale::top() const { return top_; }

QElem TableQuantale::join(std::span<const QElem> s) const {
  auto acc = bottom_;
  for (const auto& e : s) acc = join_[acc * carrier_.size() + idx(e)];
  return acc;
}

QElem TableQuantale::meet(std::span<const QElem> s) const {
  auto acc = top_;
  for (const auto& e : s) acc = meet_[acc * carrier_.size() + idx(e)];
  return acc;
}

bool TableQuantale::way_below(const QElem& a, const QElem& b) const {
  return carrier_.way_below(idx(a), idx(b));
}

bool TableQuantale::totally_below(const QElem& a, const QElem& b) const {
  return carrier_.totally_below(idx(a), idx(b));
}

std::vector<QElem> TableQuantale::radius_candidates(
    const RadiusContext&) const {
  std::vector<QElem> out;
  for (std::uint32_t i = 0; i < carrier_.size(); ++i)
    if (carrier_.leq(i, unit_)) out.push_back(i);
  return out;
}

std::vector<QElem> TableQuantale::total_radius_candidates(
    const RadiusContext&) const {
  std::vector<QElem> out;
  for (std::uint32_t i = 0; i < carrier_.size(); ++i)
    if (carrier_.totally_below(i, unit_)) out.push_back(i);
  return out;
}

QElem TableQuantale::residual(const QElem& x, const QElem& z,
                              Side side) const {
  auto n = carrier_.size();
  auto xi = idx(x), zi = idx(z);
  auto acc = bottom_;
  for (std::uint32_t y = 0; y < n; ++y) {
    auto t = side == Side::kLeft ? tensor_idx(xi, y) : tensor_idx(y, xi);
    if (carrier_.leq(t, zi)) acc = join_[acc * n + y];
  }
  return acc;
}

std::shared_ptr<TableQuantale> TableQuantale::with_tensor_cell(
    std::uint32_t a, std::uint32_t b, std::uint32_t value) const {
  auto t = tensor_;
  t[a * carrier_.size() + b] = value;
  return std::make_shared<TableQuantale>(name_ + "#mut", carrier_,
                                         std::move(t), unit_);
}

// ---- RationalChainQuantale --------------------------------------------------

const ExtRat& RationalChainQuantale::rat(const QElem& e) {
  if (!std::holds_alternative<ExtRat>(e))
    throw Error("invalid-element", "element is not an extended rational");
  return std::get<ExtRat>(e);
}

std::string RationalChainQuantale::label(const QElem& e) const {
  return rat(e).to_string();
}

std::optional<QElem> RationalChainQuantale::parse(const std::string& s) const {
  auto r = ExtRat::parse(s);
  if (!r) return std::nullopt;
  return *r;
}

bool RationalChainQuantale::leq(const QElem& a, const QElem& b) const {
  return rat(b) <= rat(a);  // reversed numeric order
}

QElem RationalChainQuantale::tensor(const QElem& a, const QElem& b) const {
  if (kind_ == TensorKind::kPlus) return rat(a) + rat(b);
  return ExtRat::max(rat(a), rat(b));
}

QElem RationalChainQuantale::join(std::span<const QElem> s) const {
  ExtRat acc = ExtRat::infinity();  // bottom
  for (const auto& e : s) acc = ExtRat::min(acc, rat(e));
  return acc;
}

QElem RationalChainQuantale::meet(std::span<const QElem> s) const {
  ExtRat acc(0L);  // top
  for (const auto& e : s) acc = ExtRat::max(acc, rat(e));
  return acc;
}

bool RationalChainQuantale::way_below(const QElem& a, const QElem& b) const {
  const auto& x = rat(a);
  const auto& y = rat(b);
  return x.inf || y < x;
}

bool RationalChainQuantale::totally_below(const QElem& a,
                                          const QElem& b) const {
  return rat(b) < rat(a);
}

std::vector<QElem> RationalChainQuantale::radius_candidates(
    const RadiusContext& ctx) const {
  // finite thresholds separating the context's value regions
  std::set<ExtRat> finite;
  for (const auto& e : ctx.values) {
    const auto& r = rat(e);
    if (!r.inf) finite.insert(r);
  }
  std::set<ExtRat> cands;
  ExtRat prev(0L);
  bool have_prev = finite.count(ExtRat(0L)) > 0;
  for (const auto& v : finite) {
    if (v.is_zero()) continue;
    cands.insert(have_prev ? ExtRat::midpoint(prev, v) : v.half());
    prev = v;
    have_prev = true;
  }
  if (cands.empty()) cands.insert(ExtRat(1L));
  std::vector<QElem> out;
  for (const auto& c : cands) out.push_back(c);
  return out;
}

std::vector<QElem> RationalChainQuantale::total_radius_candidates(
    const RadiusContext& ctx) const {
  // delta totally-below the unit is again delta > 0; same thresholds
  return radius_candidates(ctx);
}

QElem RationalChainQuantale::residual(const QElem& x, const QElem& z,
                                      Side) const {
  const auto& xr = rat(x);
  const auto& zr = rat(z);
  if (kind_ == TensorKind::kPlus) {
    if (xr.inf) return ExtRat(0L);
    if (zr.inf) return ExtRat::infinity();
    if (zr.v <= xr.v) return ExtRat(0L);
    return ExtRat(Rational(zr.v - xr.v));
  }
  // locale: [x,z] = z when x <= z numerically, else top
  if (zr <= xr) return ExtRat(0L);
  return zr;
}

// ---- LiftedRationalQuantale -------------------------------------------------

const LiftedRat& LiftedRationalQuantale::lift(const QElem& e) {
  if (!std::holds_alternative<LiftedRat>(e))
    throw Error("invalid-element", "element is not a lifted rational");
  return std::get<LiftedRat>(e);
}

std::string LiftedRationalQuantale::label(const QElem& e) const {
  const auto& l = lift(e);
  if (!l.down) return "{}";
  return "down:" + l.down->to_string();
}

std::optional<QElem> LiftedRationalQuantale::parse(const std::string& s) const {
  if (s == "{}") return LiftedRat{};
  std::string body = s;
  if (body.rfind("down:", 0) == 0) body = body.substr(5);
  auto r = ExtRat::parse(body);
  if (!r) return std::nullopt;
  return LiftedRat{*r};
}

bool LiftedRationalQuantale::leq(const QElem& a, const QElem& b) const {
  const auto& x = lift(a);
  const auto& y = lift(b);
  if (!x.down) return true;
  if (!y.down) return false;
  return base_->leq(*x.down, *y.down);
}

QElem LiftedRationalQuantale::tensor(const QElem& a, const QElem& b) const {
  const auto& x = lift(a);
  const auto& y = lift(b);
  if (!x.down || !y.down) return LiftedRat{};
  return LiftedRat{std::get<ExtRat>(base_->tensor(*x.down, *y.down))};
}

QElem LiftedRationalQuantale::unit() const {
  return LiftedRat{std::get<ExtRat>(base_->unit())};
}

QElem LiftedRationalQuantale::top() const {
  return LiftedRat{std::get<ExtRat>(base_->top())};
}

QElem LiftedRationalQuantale::join(std::span<const QElem> s) const {
  std::optional<ExtRat> acc;
  for (const auto& e : s) {
    const auto& x = lift(e);
    if (!x.down) continue;
    acc = acc ? std::get<ExtRat>(base_->join2(*acc, *x.down)) : *x.down;
  }
  return LiftedRat{acc};
}

QElem LiftedRationalQuantale::meet(std::span<const QElem> s) const {
  ExtRat acc = std::get<ExtRat>(base_->top());
  for (const auto& e : s) {
    const auto& x = lift(e);
    if (!x.down) return LiftedRat{};
    acc = std::get<ExtRat>(base_->meet2(acc, *x.down));
  }
  return LiftedRat{acc};
}

bool LiftedRationalQuantale::way_below(const QElem& a, const QElem& b) const {
  const auto& x = lift(a);
  const auto& y = lift(b);
  if (!x.down) return true;
  if (!y.down) return false;
  return base_->way_below(*x.down, *y.down);
}

bool LiftedRationalQuantale::totally_below(const QElem& a,
                                           const QElem& b) const {
  const auto& x = lift(a);
  const auto& y = lift(b);
  if (!y.down) return false;
  if (!x.down) return true;
  return base_->totally_below(*x.down, *y.down);
}

std::vector<QElem> LiftedRationalQuantale::radius_candidates(
    const RadiusContext& ctx) const {
  RadiusContext base_ctx;
  for (const auto& e : ctx.values) {
    const auto& x = lift(e);
    if (x.down) base_ctx.values.push_back(*x.down);
  }
  std::vector<QElem> out;
  for (const auto& c : base_->radius_candidates(base_ctx))
    out.push_back(LiftedRat{std::get<ExtRat>(c)});
  return out;
}

std::vector<QElem> LiftedRationalQuantale::total_radius_candidates(
    const RadiusContext& ctx) const {
  return radius_candidates(ctx);
}

QElem LiftedRationalQuantale::residual(const QElem& x, const QElem& z,
                                       Side side) const {
  const auto& xl = lift(x);
  const auto& zl = lift(z);
  if (!xl.down) return top();
  if (!zl.down) return LiftedRat{};
  return LiftedRat{std::get<ExtRat>(base_->residual(*xl.down, *zl.down, side))};
}

// ---- OmegaQuantale ----------------------------------------------------------

const Antichain& OmegaQuantale::chain(const QElem& e) {
  if (!std::holds_alternative<Antichain>(e))
    throw Error("invalid-element", "element is not a generator antichain");
  return std::get<Antichain>(e);
}

std::string OmegaQuantale::label(const QElem& e) const {
  const auto& a = chain(e);
  std::string out = "<";
  for (std::size_t i = 0; i < a.gens.size(); ++i) {
    if (i) out += ";";
    out += "{";
    bool first = true;
    for (auto m : a.gens[i].members()) {
      if (!first) out += ",";
      out += std::to_string(m);
      first = false;
    }
    out += "}";
  }
  return out + ">";
}

std::optional<QElem> OmegaQuantale::parse(const std::string&) const {
  return std::nullopt;  // symbolic elements are not scenario-addressable
}

bool OmegaQuantale::leq(const QElem& a, const QElem& b) const {
  return antichain_leq(chain(a), chain(b));
}

QElem OmegaQuantale::tensor(const QElem& a, const QElem& b) const {
  return antichain_meet(chain(a), chain(b));
}

QElem OmegaQuantale::unit() const {
  return Antichain{{DynBitset::full(universe_)}};
}

QElem OmegaQuantale::top() const { return unit(); }

QElem OmegaQuantale::join(std::span<const QElem> s) const {
  Antichain acc;
  for (const auto& e : s) acc = antichain_join(acc, chain(e));
  return acc;
}

QElem OmegaQuantale::meet(std::span<const QElem> s) const {
  Antichain acc{{DynBitset::full(universe_)}};
  for (const auto& e : s) acc = antichain_meet(acc, chain(e));
  return acc;
}

bool OmegaQuantale::way_below(const QElem& a, const QElem& b) const {
  // finitely generated lower sets of a finite poset: way-below is inclusion
  return leq(a, b);
}

bool OmegaQuantale::totally_below(const QElem& a, const QElem& b) const {
  // A <<< B iff A fits under a single generator of B
  const auto& x = chain(a);
  const auto& y = chain(b);
  for (const auto& h : y.gens) {
    bool all = true;
    for (const auto& g : x.gens)
      if (!g.is_subset_of(h)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

std::vector<QElem> OmegaQuantale::radius_candidates(
    const RadiusContext&) const {
  // the unit is compact, so it is the single maximal candidate
  return {unit()};
}

std::vector<QElem> OmegaQuantale::total_radius_candidates(
    const RadiusContext&) const {
  // the unit is a principal lower set, hence completely join-prime
  return {unit()};
}

QElem OmegaQuantale::residual(const QElem& x, const QElem& z, Side) const {
  // Heyting implication: members p with x meet down{p} <= z; universe must be
  // small enough to scan subsets
  if (universe_ > 20)
    throw Error("carrier-cap-exceeded", "omega residual scan too large");
  const auto& xc = chain(x);
  const auto& zc = chain(z);
  std::vector<DynBitset> gens;
  for (std::uint64_t mask = 0; mask < (1ull << universe_); ++mask) {
    DynBitset p = DynBitset::from_mask(universe_, mask);
    bool ok = true;
    for (const auto& g : xc.gens) {
      DynBitset gp = g & p;
      bool below = false;
      for (const auto& h : zc.gens)
        if (gp.is_subset_of(h)) {
          below = true;
          break;
        }
      if (!below) {
        ok = false;
        break;
      }
    }
    if (ok) gens.push_back(p);
  }
  return make_antichain(std::move(gens));
}

// ---- verification -----------------------------------------------------------

namespace {

void verify_table_quantale(const Quantale& q, QuantaleReport& rep) {
  auto n = q.size();
  std::vector<QElem> el(n);
  for (std::size_t i = 0; i < n; ++i) el[i] = q.element(i);
  auto lbl = [&](std::size_t i) { return q.label(el[i]); };

  // complete lattice: binary joins/meets are genuine bounds
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto s = q.join2(el[i], el[j]);
      if (!q.leq(el[i], s) || !q.leq(el[j], s))
        rep.fail("join-upper-bound", lbl(i) + "," + lbl(j));
      for (std::size_t u = 0; u < n; ++u)
        if (q.leq(el[i], el[u]) && q.leq(el[j], el[u]) && !q.leq(s, el[u]))
          rep.fail("join-least", lbl(i) + "," + lbl(j) + " vs " + lbl(u));
      auto m = q.meet2(el[i], el[j]);
      if (!q.leq(m, el[i]) || !q.leq(m, el[j]))
        rep.fail("meet-lower-bound", lbl(i) + "," + lbl(j));
      for (std::size_t u = 0; u < n; ++u)
        if (q.leq(el[u], el[i]) && q.leq(el[u], el[j]) && !q.leq(el[u], m))
          rep.fail("meet-greatest", lbl(i) + "," + lbl(j) + " vs " + lbl(u));
    }

  // monoid laws
  auto one = q.unit();
  for (std::size_t i = 0; i < n; ++i) {
    if (!q.equal(q.tensor(one, el[i]), el[i]))
      rep.fail("left-unit", lbl(i));
    if (!q.equal(q.tensor(el[i], one), el[i]))
      rep.fail("right-unit", lbl(i));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (!q.equal(q.tensor(el[i], q.tensor(el[j], el[k])),
                     q.tensor(q.tensor(el[i], el[j]), el[k])))
          rep.fail("associativity", lbl(i) + "," + lbl(j) + "," + lbl(k));
  }

  // distributivity over binary joins plus the empty join (finite joins
  // reduce to these)
  auto bot = q.bottom();
  for (std::size_t i = 0; i < n; ++i) {
    if (!q.equal(q.tensor(el[i], bot), bot))
      rep.fail("tensor-bottom-right", lbl(i));
    if (!q.equal(q.tensor(bot, el[i]), bot))
      rep.fail("tensor-bottom-left", lbl(i));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        auto ab = q.join2(el[a], el[b]);
        if (!q.equal(q.tensor(el[i], ab),
                     q.join2(q.tensor(el[i], el[a]), q.tensor(el[i], el[b]))))
          rep.fail("distributivity-left",
                   lbl(i) + " over " + lbl(a) + "|" + lbl(b));
        if (!q.equal(q.tensor(ab, el[i]),
                     q.join2(q.tensor(el[a], el[i]), q.tensor(el[b], el[i]))))
          rep.fail("distributivity-right",
                   lbl(i) + " over " + lbl(a) + "|" + lbl(b));
      }
  }

  // flag consistency
  bool linear = true, commutative = true, locale = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!q.leq(el[i], el[j]) && !q.leq(el[j], el[i])) linear = false;
      if (!q.equal(q.tensor(el[i], el[j]), q.tensor(el[j], el[i])))
        commutative = false;
      if (!q.equal(q.tensor(el[i], el[j]), q.meet2(el[i], el[j])))
        locale = false;
    }
  if (q.is_linear() != linear) rep.fail("flag-linear", "");
  if (q.is_commutative() != commutative) rep.fail("flag-commutative", "");
  if (q.is_locale() != locale) rep.fail("flag-locale", "");
  if (q.is_trivial() != q.equal(bot, one)) rep.fail("flag-trivial", "");
  if (q.is_affine() != q.equal(q.top(), one)) rep.fail("flag-affine", "");
  if (q.is_locale() && !(q.is_commutative() && q.is_affine()))
    rep.fail("locale-implies-commutative-affine", "");
}

void verify_sampled_quantale(const Quantale& q, QuantaleReport& rep,
                             const std::vector<QElem>& samples) {
  auto one = q.unit();
  auto bot = q.bottom();
  for (const auto& x : samples) {
    if (!q.equal(q.tensor(one, x), x)) rep.fail("left-unit", q.label(x));
    if (!q.equal(q.tensor(x, one), x)) rep.fail("right-unit", q.label(x));
    if (!q.equal(q.tensor(x, bot), bot))
      rep.fail("tensor-bottom-right", q.label(x));
    for (const auto& y : samples) {
      if (q.is_commutative() && !q.equal(q.tensor(x, y), q.tensor(y, x)))
        rep.fail("commutativity", q.label(x) + "," + q.label(y));
      for (const auto& z : samples) {
        if (!q.equal(q.tensor(x, q.tensor(y, z)),
                     q.tensor(q.tensor(x, y), z)))
          rep.fail("associativity", q.label(x));
        if (!q.equal(q.tensor(x, q.join2(y, z)),
                     q.join2(q.tensor(x, y), q.tensor(x, z))))
          rep.fail("distributivity-left", q.label(x));
        // residual adjunction at sample triples
        auto r = q.residual(x, z, Quantale::Side::kLeft);
        bool lhs = q.leq(q.tensor(x, y), z);
        bool rhs = q.leq(y, r);
        if (lhs != rhs) rep.fail("residual-adjunction", q.label(x));
      }
    }
  }
}

}  // namespace

QuantaleReport verify_quantale(const Quantale& q) {
  QuantaleReport rep;
  if (q.enumerable()) {
    verify_table_quantale(q, rep);
    return rep;
  }
  rep.trusted = true;
  std::vector<QElem> samples;
  if (dynamic_cast<const RationalChainQuantale*>(&q) != nullptr) {
    for (const char* s : {"0", "1/2", "1", "3/2", "2", "7", "inf"})
      samples.push_back(*q.parse(s));
  } else if (dynamic_cast<const LiftedRationalQuantale*>(&q) != nullptr) {
    for (const char* s : {"{}", "0", "1/2", "1", "2", "inf"})
      samples.push_back(*q.parse(s));
  } else if (auto* om = dynamic_cast<const OmegaQuantale*>(&q)) {
    auto u = om->universe();
    samples.push_back(om->bottom());
    samples.push_back(om->unit());
    if (u >= 2) {
      samples.push_back(Antichain{{DynBitset::single(u, 0)}});
      samples.push_back(make_antichain(
          {DynBitset::single(u, 0), DynBitset::single(u, 1)}));
    }
  }
  verify_sampled_quantale(q, rep, samples);
  return rep;
}

// ---- constructors -----------------------------------------------------------

OrderedMonoid::OrderedMonoid(FinPoset p, Operation o, std::size_t u)
    : poset(std::move(p)), op(std::move(o)), unit(u) {
  if (op.arity != 2)
    throw Error("arity-mismatch", "ordered monoid operation must be binary");
  if (!operation_monotone(poset, op))
    throw Error("non-monotone", "monoid operation is not monotone");
  auto n = poset.size();
  if (unit >= n) throw Error("invalid-element", "unit out of range");
  for (std::size_t x = 0; x < n; ++x) {
    if (op.apply(n, {unit, x}) != x || op.apply(n, {x, unit}) != x)
      throw Error("hypothesis-violation", "unit law fails at " +
                                              poset.label(x));
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (op.apply(n, {x, op.apply(n, {y, z})}) !=
            op.apply(n, {op.apply(n, {x, y}), z}))
          throw Error("hypothesis-violation", "associativity fails");
  }
}

bool OrderedMonoid::commutative() const {
  auto n = poset.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (op.apply(n, {x, y}) != op.apply(n, {y, x})) return false;
  return true;
}

namespace {

FinPoset reversed_numeric_chain(std::size_t n) {
  // elements 0..n labeled by value; order i <= j iff i >= j numerically
  Preorder ord(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      if (i >= j) ord.set(i, j);
  std::vector<std::string> labels(n + 1);
  for (std::size_t i = 0; i <= n; ++i) labels[i] = std::to_string(i);
  return FinPoset(labels, ord);
}

}  // namespace

QuantalePtr sigma() {
  Preorder ord(2);
  ord.set(0, 1);  // inf <= 0
  FinPoset carrier({"inf", "0"}, ord);
  std::vector<std::uint32_t> t = {0, 0, 0, 1};  // meet
  return std::make_shared<TableQuantale>("sigma", carrier, t, 1);
}

QuantalePtr trivial_quantale() {
  FinPoset carrier({"*"}, Preorder(1));
  return std::make_shared<TableQuantale>("one", carrier,
                                         std::vector<std::uint32_t>{0}, 0);
}

QuantalePtr chain_plus(std::size_t n) {
  auto carrier = reversed_numeric_chain(n);
  std::vector<std::uint32_t> t((n + 1) * (n + 1));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      t[i * (n + 1) + j] = static_cast<std::uint32_t>(std::min(i + j, n));
  return std::make_shared<TableQuantale>("chain_plus:" + std::to_string(n),
                                         carrier, t, 0);
}

QuantalePtr chain_max(std::size_t n) {
  auto carrier = reversed_numeric_chain(n);
  std::vector<std::uint32_t> t((n + 1) * (n + 1));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      t[i * (n + 1) + j] = static_cast<std::uint32_t>(std::max(i, j));
  return std::make_shared<TableQuantale>("chain_max:" + std::to_string(n),
                                         carrier, t, 0);
}

std::shared_ptr<const RationalChainQuantale> rational_rplus() {
  return std::make_shared<RationalChainQuantale>(
      RationalChainQuantale::TensorKind::kPlus);
}

std::shared_ptr<const RationalChainQuantale> rational_rmax() {
  return std::make_shared<RationalChainQuantale>(
      RationalChainQuantale::TensorKind::kMax);
}

QuantalePtr relations(std::size_t k, const Caps& caps) {
  if (k == 0 || k > 3)
    throw Error("carrier-cap-exceeded",
                "relations(k) supported for 1 <= k <= 3");
  std::size_t bits = k * k;
  std::size_t n = 1ull << bits;
  if (n > caps.carrier)
    throw Error("carrier-cap-exceeded", "relation lattice beyond carrier cap");

  auto pair_bit = [&](std::size_t i, std::size_t j) { return i * k + j; };
  auto label_of = [&](std::uint64_t mask) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if ((mask >> pair_bit(i, j)) & 1) {
          if (!first) out += ",";
          out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
          first = false;
        }
    return out + "}";
  };

  Preorder ord(n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b)
      if ((a & ~b) == 0) ord.set(a, b);
  std::vector<std::string> labels(n);
  for (std::uint64_t a = 0; a < n; ++a) labels[a] = label_of(a);

  std::vector<std::uint32_t> t(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      std::uint64_t c = 0;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          for (std::size_t m = 0; m < k; ++m)
            if (((a >> pair_bit(i, m)) & 1) && ((b >> pair_bit(m, j)) & 1))
              c |= 1ull << pair_bit(i, j);
      t[a * n + b] = static_cast<std::uint32_t>(c);
    }
  std::uint64_t identity = 0;
  for (std::size_t i = 0; i < k; ++i) identity |= 1ull << pair_bit(i, i);
  std::vector<std::uint32_t> joins(n * n), meets(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      joins[a * n + b] = static_cast<std::uint32_t>(a | b);
      meets[a * n + b] = static_cast<std::uint32_t>(a & b);
    }
  return std::make_shared<TableQuantale>(
      "relations:" + std::to_string(k), FinPoset(labels, ord), t,
      static_cast<std::uint32_t>(identity), std::move(joins),
      std::move(meets));
}

QuantalePtr product(const QuantalePtr& a, const QuantalePtr& b,
                    const Caps& caps) {
  if (!a->enumerable() || !b->enumerable())
    throw Error("hypothesis-violation",
                "product is materialized for table quantales only");
  auto na = a->size(), nb = b->size();
  auto n = na * nb;
  if (n > caps.carrier)
    throw Error("carrier-cap-exceeded", "product carrier beyond cap");
  auto xa = [&](std::size_t i) { return i / nb; };
  auto xb = [&](std::size_t i) { return i % nb; };

  Preorder ord(n);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "(" + a->label(a->element(xa(i))) + "," +
                b->label(b->element(xb(i))) + ")";
    for (std::size_t j = 0; j < n; ++j)
      if (a->leq(a->element(xa(i)), a->element(xa(j))) &&
          b->leq(b->element(xb(i)), b->element(xb(j))))
        ord.set(i, j);
  }
  std::vector<std::uint32_t> t(n * n), joins(n * n), meets(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto ea_i = a->element(xa(i)), ea_j = a->element(xa(j));
      auto eb_i = b->element(xb(i)), eb_j = b->element(xb(j));
      auto pack = [&](const QElem& ea, const QElem& eb) {
        return static_cast<std::uint32_t>(*a->index_of(ea) * nb +
                                          *b->index_of(eb));
      };
      t[i * n + j] = pack(a->tensor(ea_i, ea_j), b->tensor(eb_i, eb_j));
      joins[i * n + j] = pack(a->join2(ea_i, ea_j), b->join2(eb_i, eb_j));
      meets[i * n + j] = pack(a->meet2(ea_i, ea_j), b->meet2(eb_i, eb_j));
    }
  auto ua = *a->index_of(a->unit());
  auto ub = *b->index_of(b->unit());
  return std::make_shared<TableQuantale>(
      "product:" + a->name() + "," + b->name(), FinPoset(labels, ord),
      std::move(t), static_cast<std::uint32_t>(ua * nb + ub),
      std::move(joins), std::move(meets));
}

QuantalePtr affine_part(const QuantalePtr& q) {
  if (!q->enumerable()) {
    if (q->is_affine()) return q;  // rational family: unit is already top
    throw Error("hypothesis-violation",
                "affine part materialized for tables only");
  }
  auto n = q->size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i)
    if (q->leq(q->element(i), q->unit())) keep.push_back(i);
  auto m = keep.size();
  Preorder ord(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = q->label(q->element(keep[i]));
    for (std::size_t j = 0; j < m; ++j)
      if (q->leq(q->element(keep[i]), q->element(keep[j]))) ord.set(i, j);
  }
  std::vector<std::uint32_t> t(m * m);
  std::uint32_t unit = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (q->equal(q->element(keep[i]), q->unit()))
      unit = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < m; ++j) {
      auto r = q->tensor(q->element(keep[i]), q->element(keep[j]));
      auto ri = *q->index_of(r);
      auto pos = std::find(keep.begin(), keep.end(), ri);
      t[i * m + j] =
          static_cast<std::uint32_t>(std::distance(keep.begin(), pos));
    }
  }
  return std::make_shared<TableQuantale>("affine_part:" + q->name(),
                                         FinPoset(labels, ord), t, unit);
}

namespace {

/// All monotone maps from p into the carrier of table quantale q, as value
/// tuples indexed by p's elements.
std::vector<std::vector<std::size_t>> monotone_maps_into(
    const FinPoset& p, const FinPoset& target, std::size_t cap) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(p.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == p.size()) {
      out.push_back(cur);
      if (out.size() > cap)
        throw Error("carrier-cap-exceeded", "too many monotone maps");
      return;
    }
    for (std::size_t v = 0; v < target.size(); ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (p.leq(j, i) && !target.leq(cur[j], v)) ok = false;
        if (p.leq(i, j) && !target.leq(v, cur[j])) ok = false;
      }
      if (!ok) continue;
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

std::string map_label(const std::vector<std::size_t>& f, const FinPoset& tgt) {
  std::string out = "[";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) out += ",";
    out += tgt.label(f[i]);
  }
  return out + "]";
}

const TableQuantale& as_table(const Quantale& q) {
  auto* t = dynamic_cast<const TableQuantale*>(&q);
  if (t == nullptr)
    throw Error("hypothesis-violation",
                q.name() + " must be a finite table quantale here");
  return *t;
}

}  // namespace

QuantalePtr pointwise_hom(const FinPoset& p, const QuantalePtr& q,
                          const Caps& caps) {
  const auto& tq = as_table(*q);
  auto maps = monotone_maps_into(p, tq.carrier(), caps.carrier);
  auto m = maps.size();
  Preorder ord(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = map_label(maps[i], tq.carrier());
    for (std::size_t j = 0; j < m; ++j) {
      bool le = true;
      for (std::size_t x = 0; x < p.size() && le; ++x)
        le = tq.carrier().leq(maps[i][x], maps[j][x]);
      if (le) ord.set(i, j);
    }
  }
  std::vector<std::uint32_t> t(m * m);
  std::vector<std::size_t> unit_map(p.size(), tq.unit_idx());
  std::uint32_t unit = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (maps[i] == unit_map) unit = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> val(p.size());
      for (std::size_t x = 0; x < p.size(); ++x)
        val[x] = tq.tensor_idx(static_cast<std::uint32_t>(maps[i][x]),
                               static_cast<std::uint32_t>(maps[j][x]));
      auto pos = std::find(maps.begin(), maps.end(), val);
      t[i * m + j] =
          static_cast<std::uint32_t>(std::distance(maps.begin(), pos));
    }
  }
  return std::make_shared<TableQuantale>("pointwise_hom:" + q->name(),
                                         FinPoset(labels, ord), t, unit);
}

QuantalePtr day_convolution(const OrderedMonoid& p, const QuantalePtr& q,
                            const Caps& caps) {
  const auto& tq = as_table(*q);
  if (!q->is_commutative())
    throw Error("hypothesis-violation", "day convolution needs commutative Q");
  if (!p.commutative())
    throw Error("hypothesis-violation",
                "day convolution needs a commutative ordered monoid");
  auto maps = monotone_maps_into(p.poset, tq.carrier(), caps.carrier);
  auto m = maps.size();
  auto np = p.poset.size();

  Preorder ord(m);
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = map_label(maps[i], tq.carrier());
    for (std::size_t j = 0; j < m; ++j) {
      bool le = true;
      for (std::size_t x = 0; x < np && le; ++x)
        le = tq.carrier().leq(maps[i][x], maps[j][x]);
      if (le) ord.set(i, j);
    }
  }

  auto bot = static_cast<std::uint32_t>(*tq.carrier().bottom());
  std::vector<std::uint32_t> t(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> val(np);
      for (std::size_t x = 0; x < np; ++x) {
        std::uint32_t acc = bot;
        for (std::size_t x1 = 0; x1 < np; ++x1)
          for (std::size_t x2 = 0; x2 < np; ++x2)
            if (p.poset.leq(p.op.apply(np, {x1, x2}), x)) {
              auto prod =
                  tq.tensor_idx(static_cast<std::uint32_t>(maps[i][x1]),
                                static_cast<std::uint32_t>(maps[j][x2]));
              acc = std::get<std::uint32_t>(
                  tq.join2(QElem{acc}, QElem{prod}));
            }
        val[x] = acc;
      }
      auto pos = std::find(maps.begin(), maps.end(), val);
      if (pos == maps.end())
        throw Error("hypothesis-violation",
                    "day tensor left the monotone map carrier");
      t[i * m + j] =
          static_cast<std::uint32_t>(std::distance(maps.begin(), pos));
    }

  std::vector<std::size_t> eps(np);
  for (std::size_t x = 0; x < np; ++x)
    eps[x] = p.poset.leq(p.unit, x) ? tq.unit_idx() : bot;
  auto pos = std::find(maps.begin(), maps.end(), eps);
  if (pos == maps.end())
    throw Error("hypothesis-violation", "day unit is not monotone");
  return std::make_shared<TableQuantale>(
      "day_convolution:" + q->name(), FinPoset(labels, ord), t,
      static_cast<std::uint32_t>(std::distance(maps.begin(), pos)));
}

QuantalePtr free_quantale(const OrderedMonoid& p, const Caps& caps) {
  auto d = lower_set_lattice(p.poset, caps.carrier);
  auto lifted = lift_operation(p.poset, d, p.op);
  auto m = d.sets.size();
  std::vector<std::uint32_t> t(m * m), joins(m * m), meets(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      t[i * m + j] = static_cast<std::uint32_t>(lifted.apply(m, {i, j}));
      joins[i * m + j] =
          static_cast<std::uint32_t>(d.index_of(d.sets[i] | d.sets[j]));
      meets[i * m + j] =
          static_cast<std::uint32_t>(d.index_of(d.sets[i] & d.sets[j]));
    }
  return std::make_shared<TableQuantale>(
      "free_quantale", d.lattice, std::move(t),
      static_cast<std::uint32_t>(d.eta[p.unit]), std::move(joins),
      std::move(meets));
}

bool day_star_condition(const OrderedMonoid& p) {
  p.poset.require_lattice();
  auto n = p.poset.size();
  for (std::size_t x1 = 0; x1 < n; ++x1)
    for (std::size_t y1 = 0; y1 < n; ++y1) {
      if (!p.poset.totally_below(x1, y1)) continue;
      for (std::size_t x2 = 0; x2 < n; ++x2)
        for (std::size_t y2 = 0; y2 < n; ++y2) {
          if (!p.poset.totally_below(x2, y2)) continue;
          if (!p.poset.totally_below(p.op.apply(n, {x1, x2}),
                                     p.op.apply(n, {y1, y2})))
            return false;
        }
    }
  return true;
}

bool day_star_star_condition(const OrderedMonoid& p) {
  p.poset.require_lattice();
  auto n = p.poset.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!p.poset.totally_below(x, y)) continue;
      bool left = false, right = false;
      for (std::size_t c = 0; c < n; ++c) {
        if (!p.poset.totally_below(p.unit, c)) continue;
        if (p.poset.totally_below(p.op.apply(n, {c, x}), y)) left = true;
        if (p.poset.totally_below(p.op.apply(n, {x, c}), y)) right = true;
      }
      if (!left || !right) return false;
    }
  return true;
}

// ---- C_S(Q) ------------------------------------------------------------------

ScottClosedQuantale scott_closed_quantale(const QuantalePtr& q,
                                          const Caps& caps) {
  if (!q->enumerable()) {
    auto rc = std::dynamic_pointer_cast<const RationalChainQuantale>(q);
    if (!rc)
      throw Error("hypothesis-violation",
                  "scott_closed_quantale supports tables and the linear "
                  "rational family");
    ScottClosedQuantale out;
    out.base = q;
    out.closed = std::make_shared<LiftedRationalQuantale>(rc);
    return out;
  }
  const auto& tq = as_table(*q);
  auto d = std::make_shared<LowerSetLattice>(
      lower_set_lattice(tq.carrier(), caps.carrier));
  auto n = tq.carrier().size();
  auto m = d->sets.size();
  std::vector<std::uint32_t> t(m * m), joins(m * m), meets(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      DynBitset img(n);
      for (auto a : d->sets[i].members())
        for (auto b : d->sets[j].members())
          img.set(tq.tensor_idx(static_cast<std::uint32_t>(a),
                                static_cast<std::uint32_t>(b)));
      t[i * m + j] = static_cast<std::uint32_t>(
          d->index_of(tq.carrier().down_closure(img)));
      joins[i * m + j] =
          static_cast<std::uint32_t>(d->index_of(d->sets[i] | d->sets[j]));
      meets[i * m + j] =
          static_cast<std::uint32_t>(d->index_of(d->sets[i] & d->sets[j]));
    }
  DynBitset u(n);
  u.set(tq.unit_idx());
  auto unit = d->index_of(tq.carrier().down_closure(u));
  ScottClosedQuantale out;
  out.base = q;
  out.closed = std::make_shared<TableQuantale>(
      "scott_closed:" + q->name(), d->lattice, std::move(t),
      static_cast<std::uint32_t>(unit), std::move(joins), std::move(meets));
  out.sets = d;
  return out;
}

QElem ScottClosedQuantale::eta(const QElem& base_elem) const {
  if (!sets) {
    return LiftedRat{std::get<ExtRat>(base_elem)};
  }
  const auto& tq = as_table(*base);
  DynBitset s(tq.carrier().size());
  s.set(tq.idx(base_elem));
  return static_cast<std::uint32_t>(
      sets->index_of(tq.carrier().down_closure(s)));
}

QElem ScottClosedQuantale::sup(const QElem& closed_elem) const {
  if (!sets) {
    const auto& l = std::get<LiftedRat>(closed_elem);
    if (!l.down) return base->bottom();
    return *l.down;
  }
  auto i = std::get<std::uint32_t>(closed_elem);
  std::vector<QElem> members;
  for (auto m : sets->sets[i].members())
    members.push_back(static_cast<std::uint32_t>(m));
  return base->join(members);
}

QElem ScottClosedQuantale::from_lower_bitset(const DynBitset& b) const {
  if (!sets)
    throw Error("hypothesis-violation", "no materialized lower sets");
  return static_cast<std::uint32_t>(sets->index_of(b));
}

DynBitset ScottClosedQuantale::to_lower_bitset(const QElem& e) const {
  if (!sets)
    throw Error("hypothesis-violation", "no materialized lower sets");
  return sets->sets[std::get<std::uint32_t>(e)];
}

CKleisli make_c_kleisli(ScottClosedQuantale src, ScottClosedQuantale tgt,
                        std::vector<QElem> g) {
  const auto& tq = as_table(*src.base);
  if (g.size() != tq.carrier().size())
    throw Error("arity-mismatch", "kleisli map must cover the base carrier");
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (tq.carrier().leq(i, j) && !tgt.closed->leq(g[i], g[j]))
        throw Error("non-monotone", "kleisli map is not monotone");
  return CKleisli{std::move(src), std::move(tgt), std::move(g)};
}

QElem c_extend(const CKleisli& k, const QElem& closed_elem) {
  // closure of a union of closed sets is their join in C(Q')
  auto members = k.src.to_lower_bitset(closed_elem).members();
  std::vector<QElem> vals;
  vals.reserve(members.size());
  for (auto m : members) vals.push_back(k.g[m]);
  return k.tgt.closed->join(vals);
}

// ---- morphisms ---------------------------------------------------------------

QuantaleMorphism::QuantaleMorphism(std::string name, QuantalePtr src,
                                   QuantalePtr tgt, std::vector<QElem> values)
    : name_(std::move(name)),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      values_(std::move(values)) {
  if (!src_->enumerable() || values_.size() != src_->size())
    throw Error("arity-mismatch",
                "table morphism must cover the source carrier");
}

QuantaleMorphism::QuantaleMorphism(std::string name, QuantalePtr src,
                                   QuantalePtr tgt,
                                   std::function<QElem(const QElem&)> fn,
                                   bool scott,
                                   std::optional<ScottWitness> witness)
    : name_(std::move(name)),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      fn_(std::move(fn)),
      scott_(scott),
      witness_(std::move(witness)) {}

QElem QuantaleMorphism::map(const QElem& e) const {
  if (!values_.empty()) return values_[*src_->index_of(e)];
  return fn_(e);
}

bool MorphismReport::has(MorphismKind k) const {
  switch (k) {
    case MorphismKind::kMonotone:
      return monotone;
    case MorphismKind::kScottContinuous:
      return scott_continuous;
    case MorphismKind::kLaxUnital:
      return lax_unital;
    case MorphismKind::kLaxMonoidal:
      return lax_monoidal;
    case MorphismKind::kStrictMonoidal:
      return strict_monoidal;
    case MorphismKind::kJoinPreserving:
      return join_preserving;
  }
  return false;
}

MorphismReport verify_morphism(const QuantaleMorphism& m,
                               const std::vector<QElem>& rational_samples) {
  MorphismReport rep;
  const auto& src = *m.source();
  const auto& tgt = *m.target();

  std::vector<QElem> pts;
  if (src.enumerable()) {
    for (std::size_t i = 0; i < src.size(); ++i) pts.push_back(src.element(i));
  } else {
    pts = rational_samples;
    if (pts.empty())
      for (const char* s : {"0", "1/2", "1", "2", "5", "inf"}) {
        auto e = src.parse(s);
        if (e) pts.push_back(*e);
      }
  }

  auto note = [&](const std::string& s) { rep.witnesses.push_back(s); };

  for (const auto& a : pts)
    for (const auto& b : pts) {
      if (src.leq(a, b) && !tgt.leq(m.map(a), m.map(b))) {
        rep.monotone = false;
        note("monotonicity fails at " + src.label(a) + " <= " + src.label(b));
      }
      if (!tgt.leq(tgt.tensor(m.map(a), m.map(b)), m.map(src.tensor(a, b)))) {
        rep.lax_monoidal = false;
        note("lax-monoidal fails at " + src.label(a) + "," + src.label(b));
      }
      if (!tgt.equal(tgt.tensor(m.map(a), m.map(b)),
                     m.map(src.tensor(a, b)))) {
        rep.strict_monoidal = false;
      }
      if (!tgt.equal(m.map(src.join2(a, b)), tgt.join2(m.map(a), m.map(b)))) {
        rep.join_preserving = false;
      }
    }

  if (!tgt.leq(tgt.unit(), m.map(src.unit()))) {
    rep.lax_unital = false;
    rep.lax_monoidal = false;
    note("lax-unital fails: unit' !<= h(unit)");
  }
  if (!tgt.equal(tgt.unit(), m.map(src.unit()))) rep.strict_monoidal = false;
  if (!tgt.equal(m.map(src.bottom()), tgt.bottom())) {
    rep.join_preserving = false;
    note("empty join not preserved: h(bottom) != bottom'");
  }

  if (src.enumerable()) {
    // finite source: Scott continuity coincides with monotonicity
    rep.scott_continuous = rep.monotone;
  } else if (m.table_backed()) {
    rep.scott_continuous = rep.monotone;
  } else {
    rep.scott_continuous = m.closed_form_scott();
    if (const auto& w = m.scott_witness(); w && !rep.scott_continuous) {
      // check the witness is genuine on its samples
      bool consistent = true;
      for (const auto& c : w->chain)
        if (!tgt.equal(m.map(c), w->image_value)) consistent = false;
      if (tgt.equal(m.map(w->chain_join), w->image_value)) consistent = false;
      if (!consistent) {
        note("stored scott witness is inconsistent with the mapping");
        rep.scott_continuous = true;  // cannot trust the negative verdict
      } else {
        note("directed chain with constant image " +
             tgt.label(w->image_value) + " maps its join to " +
             tgt.label(m.map(w->chain_join)));
      }
    }
  }
  return rep;
}

QuantaleMorphism morphism_top(const QuantalePtr& q) {
  return QuantaleMorphism("top", trivial_quantale(), q,
                          std::vector<QElem>{q->top()});
}

QuantaleMorphism morphism_bang(const QuantalePtr& q) {
  auto one = trivial_quantale();
  if (q->enumerable()) {
    std::vector<QElem> vals(q->size(), one->unit());
    return QuantaleMorphism("bang", q, one, std::move(vals));
  }
  auto u = one->unit();
  return QuantaleMorphism("bang", q, one,
                          [u](const QElem&) { return u; }, true);
}

QuantaleMorphism morphism_affine_inclusion(const QuantalePtr& q) {
  auto part = affine_part(q);
  std::vector<QElem> vals(part->size());
  for (std::size_t i = 0; i < part->size(); ++i)
    vals[i] = *q->parse(part->label(part->element(i)));
  return QuantaleMorphism("affine-inclusion", part, q, std::move(vals));
}

QuantaleMorphism morphism_meet_unit(const QuantalePtr& q) {
  auto part = affine_part(q);
  std::vector<QElem> vals(q->size());
  for (std::size_t i = 0; i < q->size(); ++i) {
    auto v = q->meet2(q->element(i), q->unit());
    vals[i] = *part->parse(q->label(v));
  }
  return QuantaleMorphism("meet-unit", q, part, std::move(vals));
}

QuantaleMorphism morphism_chain_inclusion(std::size_t n) {
  auto src = chain_plus(n);
  auto tgt = rational_rplus();
  std::vector<QElem> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    vals[i] = ExtRat(static_cast<long>(i));
  return QuantaleMorphism("chain-inclusion", src, tgt, std::move(vals));
}

QuantaleMorphism morphism_ceil(std::size_t n) {
  auto src = rational_rplus();
  auto tgt = chain_plus(n);
  auto fn = [n, tgt](const QElem& e) -> QElem {
    const auto& r = std::get<ExtRat>(e);
    if (r.inf) return static_cast<std::uint32_t>(n);
    auto num = numerator(r.v);
    auto den = denominator(r.v);
    auto c = num / den + (num % den == 0 ? 0 : 1);
    if (c > n) return static_cast<std::uint32_t>(n);
    return static_cast<std::uint32_t>(c.convert_to<unsigned long>());
  };
  ScottWitness w;
  w.chain = {QElem(ExtRat(Rational(2))), QElem(ExtRat(Rational(3, 2))),
             QElem(ExtRat(Rational(5, 4))), QElem(ExtRat(Rational(9, 8)))};
  w.chain_join = ExtRat(1L);
  w.image_value = static_cast<std::uint32_t>(2);
  return QuantaleMorphism("ceil", src, tgt, fn, false, w);
}

QuantaleMorphism morphism_rmax_to_rplus() {
  return QuantaleMorphism("rmax-to-rplus", rational_rmax(), rational_rplus(),
                          [](const QElem& e) { return e; }, true);
}

}  // namespace qmet
