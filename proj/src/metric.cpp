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

#include "qmet/metric.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace qmet {

QMetricSpace::QMetricSpace(std::vector<std::string> points, QuantalePtr q,
                           std::vector<QElem> d)
    : points_(std::move(points)), q_(std::move(q)), d_(std::move(d)) {
  if (d_.size() != points_.size() * points_.size())
    throw Error("arity-mismatch", "distance matrix must be n*n");
  std::set<std::string> seen(points_.begin(), points_.end());
  if (seen.size() != points_.size())
    throw Error("invalid-element", "point labels must be pairwise distinct");
}

std::optional<std::size_t> QMetricSpace::point_index(
    const std::string& label) const {
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (points_[i] == label) return i;
  return std::nullopt;
}

MetricReport QMetricSpace::verify() const {
  MetricReport rep;
  auto n = size();
  for (std::size_t x = 0; x < n; ++x)
    if (!q_->leq(q_->unit(), dist(x, x))) {
      rep.passed = false;
      rep.violations.push_back("unit !<= d(" + points_[x] + "," + points_[x] +
                               ")");
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!qelem_eq(dist(x, y), dist(y, x)) &&
          !q_->equal(dist(x, y), dist(y, x)))
        rep.symmetric = false;
      for (std::size_t z = 0; z < n; ++z)
        if (!q_->leq(q_->tensor(dist(x, y), dist(y, z)), dist(x, z))) {
          rep.passed = false;
          rep.violations.push_back("triangle fails at (" + points_[x] + "," +
                                   points_[y] + "," + points_[z] + ")");
        }
    }
  rep.d_preorder = d_preorder();
  rep.separated = rep.d_preorder.antisymmetric();
  return rep;
}

const Preorder& QMetricSpace::d_preorder() const {
  std::call_once(preorder_once_, [&] {
    Preorder pre(size());
    for (std::size_t x = 0; x < size(); ++x)
      for (std::size_t y = 0; y < size(); ++y)
        if (q_->leq(q_->unit(), dist(x, y))) pre.set(x, y);
    preorder_ = std::move(pre);
  });
  return *preorder_;
}

std::vector<QElem> QMetricSpace::distance_values() const {
  std::set<QElem, QElemLess> vals(d_.begin(), d_.end());
  return std::vector<QElem>(vals.begin(), vals.end());
}

std::vector<QElem> QMetricSpace::radius_candidates() const {
  std::call_once(candidates_once_, [&] {
    RadiusContext ctx{distance_values()};
    candidates_ = q_->radius_candidates(ctx);
  });
  if (candidates_->empty())
    throw Error("empty-radius-family",
                "no radius candidates for " + q_->name());
  return *candidates_;
}

DynBitset QMetricSpace::ball(std::size_t x, const QElem& delta) const {
  if (!q_->way_below(delta, q_->unit()))
    throw Error("radius-not-way-below-unit",
                "radius " + q_->label(delta) + " is not way below the unit");
  DynBitset out(size());
  for (std::size_t y = 0; y < size(); ++y)
    if (q_->way_below(delta, dist(x, y))) out.set(y);
  return out;
}

DynBitset QMetricSpace::dual_ball(std::size_t x, const QElem& delta) const {
  if (!q_->way_below(delta, q_->unit()))
    throw Error("radius-not-way-below-unit",
                "radius " + q_->label(delta) + " is not way below the unit");
  DynBitset out(size());
  for (std::size_t y = 0; y < size(); ++y)
    if (q_->way_below(delta, dist(y, x))) out.set(y);
  return out;
}

const FinTopology& QMetricSpace::ball_topology() const {
  std::call_once(tau_once_, [&] {
    auto cands = radius_candidates();
    std::vector<DynBitset> balls;
    for (std::size_t x = 0; x < size(); ++x)
      for (const auto& delta : cands) balls.push_back(ball(x, delta));
    tau_ = FinTopology::generate(size(), std::move(balls));
  });
  return *tau_;
}

const FinTopology& QMetricSpace::dual_ball_topology() const {
  std::call_once(tau_dual_once_, [&] {
    auto cands = radius_candidates();
    std::vector<DynBitset> balls;
    for (std::size_t x = 0; x < size(); ++x)
      for (const auto& delta : cands) balls.push_back(dual_ball(x, delta));
    tau_dual_ = FinTopology::generate(size(), std::move(balls));
  });
  return *tau_dual_;
}

DynBitset QMetricSpace::closure_dual(const DynBitset& a) const {
  auto cands = radius_candidates();
  DynBitset out(size());
  for (std::size_t y = 0; y < size(); ++y) {
    bool in = true;
    for (const auto& delta : cands) {
      bool reach = false;
      for (auto x : a.members())
        if (q_->way_below(delta, dist(x, y))) {
          reach = true;
          break;
        }
      if (!reach) {
        in = false;
        break;
      }
    }
    if (in) out.set(y);
  }
  return out;
}

DynBitset QMetricSpace::closure_primal(const DynBitset& a) const {
  auto cands = radius_candidates();
  DynBitset out(size());
  for (std::size_t y = 0; y < size(); ++y) {
    bool in = true;
    for (const auto& delta : cands) {
      bool reach = false;
      for (auto x : a.members())
        if (q_->way_below(delta, dist(y, x))) {
          reach = true;
          break;
        }
      if (!reach) {
        in = false;
        break;
      }
    }
    if (in) out.set(y);
  }
  return out;
}

SpacePtr make_space(std::vector<std::string> points, QuantalePtr q,
                    std::vector<QElem> d) {
  return std::make_shared<QMetricSpace>(std::move(points), std::move(q),
                                        std::move(d));
}

SpacePtr dual_space(const SpacePtr& s) {
  if (!s->quantale()->is_commutative())
    throw Error("hypothesis-violation",
                "the dual metric exists only over commutative quantales");
  auto n = s->size();
  std::vector<QElem> d(n * n);
  std::vector<std::string> pts(n);
  for (std::size_t x = 0; x < n; ++x) {
    pts[x] = s->point(x);
    for (std::size_t y = 0; y < n; ++y) d[x * n + y] = s->dist(y, x);
  }
  return make_space(std::move(pts), s->quantale(), std::move(d));
}

FinTopology total_ball_topology(const QMetricSpace& s) {
  const auto& q = *s.quantale();
  RadiusContext ctx{s.distance_values()};
  auto cands = q.total_radius_candidates(ctx);
  std::vector<DynBitset> balls;
  for (std::size_t x = 0; x < s.size(); ++x)
    for (const auto& delta : cands) {
      DynBitset b(s.size());
      for (std::size_t y = 0; y < s.size(); ++y)
        if (q.totally_below(delta, s.dist(x, y))) b.set(y);
      balls.push_back(std::move(b));
    }
  return FinTopology::generate(s.size(), std::move(balls));
}

// ---- arrows -----------------------------------------------------------------

MetArrow make_arrow(SpacePtr src, SpacePtr tgt, std::vector<std::size_t> f,
                    std::optional<QuantaleMorphism> realizer) {
  if (f.size() != src->size())
    throw Error("arity-mismatch", "point map must be total on the source");
  for (auto v : f)
    if (v >= tgt->size())
      throw Error("invalid-element", "point map hits a missing point");
  if (realizer) {
    auto rep = verify_morphism(*realizer);
    if (!rep.monotone || !rep.scott_continuous || !rep.lax_unital)
      throw Error("hypothesis-violation",
                  "realizer must be monotone, Scott continuous and lax-unital");
    for (std::size_t x = 0; x < src->size(); ++x)
      for (std::size_t y = 0; y < src->size(); ++y)
        if (!tgt->quantale()->leq(realizer->map(src->dist(x, y)),
                                  tgt->dist(f[x], f[y])))
          throw Error("hypothesis-violation",
                      "realizer inequality fails at (" + src->point(x) + "," +
                          src->point(y) + ")");
  }
  return MetArrow{std::move(src), std::move(tgt), std::move(f),
                  std::move(realizer)};
}

QuantaleMorphism greatest_realizer(const std::vector<std::size_t>& f,
                                   const QMetricSpace& s,
                                   const QMetricSpace& t) {
  auto sq = s.quantale();
  auto tq = t.quantale();
  // constraint pairs (d(x,y), d'(f x, f y))
  auto constraints = std::make_shared<std::vector<std::pair<QElem, QElem>>>();
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t y = 0; y < s.size(); ++y)
      constraints->emplace_back(s.dist(x, y), t.dist(f[x], f[y]));

  auto eval = [sq, tq, constraints](const QElem& q) -> QElem {
    std::vector<QElem> below;
    for (const auto& [dq, dt] : *constraints)
      if (sq->leq(q, dq)) below.push_back(dt);
    return tq->meet(below);
  };

  if (sq->enumerable()) {
    std::vector<QElem> values(sq->size());
    for (std::size_t i = 0; i < sq->size(); ++i)
      values[i] = eval(sq->element(i));
    return QuantaleMorphism("greatest-realizer", sq, tq, std::move(values));
  }
  return QuantaleMorphism("greatest-realizer", sq, tq, eval, true);
}

bool is_uniformly_continuous(const std::vector<std::size_t>& f,
                             const QMetricSpace& s, const QMetricSpace& t) {
  auto g = greatest_realizer(f, s, t);
  return t.quantale()->leq(t.quantale()->unit(),
                           g.map(s.quantale()->unit()));
}

bool uniform_eps_delta(const std::vector<std::size_t>& f,
                       const QMetricSpace& s, const QMetricSpace& t) {
  auto deltas = s.radius_candidates();
  auto epsilons = t.radius_candidates();
  for (const auto& eps : epsilons) {
    bool exists = false;
    for (const auto& delta : deltas) {
      bool all = true;
      for (std::size_t x = 0; x < s.size() && all; ++x)
        for (std::size_t y = 0; y < s.size() && all; ++y)
          if (s.quantale()->way_below(delta, s.dist(x, y)) &&
              !t.quantale()->way_below(eps, t.dist(f[x], f[y])))
            all = false;
      if (all) {
        exists = true;
        break;
      }
    }
    if (!exists) return false;
  }
  return true;
}

std::optional<std::vector<QElem>> brute_force_realizer(
    const std::vector<std::size_t>& f, const QMetricSpace& s,
    const QMetricSpace& t, std::size_t cap) {
  auto sq = s.quantale();
  auto tq = t.quantale();
  if (!sq->enumerable() || !tq->enumerable())
    throw Error("hypothesis-violation",
                "brute force realizer search needs table quantales");
  auto n = sq->size(), m = tq->size();
  double bound = 1;
  for (std::size_t i = 0; i < n; ++i) {
    bound *= static_cast<double>(m);
    if (bound > static_cast<double>(cap))
      throw Error("carrier-cap-exceeded", "realizer search space too large");
  }

  std::vector<std::size_t> h(n, 0);
  std::optional<std::vector<QElem>> found;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (found) return;
    if (i == n) {
      // monotone by construction below; check lax-unital + realizer
      auto ui = *sq->index_of(sq->unit());
      if (!tq->leq(tq->unit(), tq->element(h[ui]))) return;
      for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y) {
          auto di = *sq->index_of(s.dist(x, y));
          if (!tq->leq(tq->element(h[di]), t.dist(f[x], f[y]))) return;
        }
      std::vector<QElem> vals(n);
      for (std::size_t k = 0; k < n; ++k) vals[k] = tq->element(h[k]);
      found = std::move(vals);
      return;
    }
    for (std::size_t v = 0; v < m && !found; ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (sq->leq(sq->element(j), sq->element(i)) &&
            !tq->leq(tq->element(h[j]), tq->element(v)))
          ok = false;
        if (sq->leq(sq->element(i), sq->element(j)) &&
            !tq->leq(tq->element(v), tq->element(h[j])))
          ok = false;
      }
      if (!ok) continue;
      h[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return found;
}

bool is_pointwise_continuous(const std::vector<std::size_t>& f,
                             const QMetricSpace& s, const QMetricSpace& t) {
  auto deltas = s.radius_candidates();
  auto epsilons = t.radius_candidates();
  for (std::size_t x = 0; x < s.size(); ++x)
    for (const auto& eps : epsilons) {
      bool exists = false;
      for (const auto& delta : deltas) {
        bool all = true;
        for (std::size_t y = 0; y < s.size() && all; ++y)
          if (s.quantale()->way_below(delta, s.dist(x, y)) &&
              !t.quantale()->way_below(eps, t.dist(f[x], f[y])))
            all = false;
        if (all) {
          exists = true;
          break;
        }
      }
      if (!exists) return false;
    }
  return true;
}

bool arrow_leq(const std::vector<std::size_t>& f1,
               const std::vector<std::size_t>& f2, const QMetricSpace& t) {
  for (std::size_t x = 0; x < f1.size(); ++x)
    if (!t.quantale()->leq(t.quantale()->unit(), t.dist(f1[x], f2[x])))
      return false;
  return true;
}

// ---- limits and colimits ----------------------------------------------------

namespace {

QuantaleMorphism identity_morphism(const QuantalePtr& q) {
  if (q->enumerable()) {
    std::vector<QElem> vals(q->size());
    for (std::size_t i = 0; i < q->size(); ++i) vals[i] = q->element(i);
    return QuantaleMorphism("id", q, q, std::move(vals));
  }
  return QuantaleMorphism("id", q, q, [](const QElem& e) { return e; }, true);
}

void require_parallel(const MetArrow& f, const MetArrow& g) {
  if (f.src != g.src || f.tgt != g.tgt)
    throw Error("hypothesis-violation",
                "equalizer/coequalizer need parallel arrows");
}

}  // namespace

SpaceWithArrow equalizer(const MetArrow& f, const MetArrow& g) {
  require_parallel(f, g);
  const auto& s = *f.src;
  std::vector<std::size_t> keep;
  for (std::size_t x = 0; x < s.size(); ++x)
    if (f.f[x] == g.f[x]) keep.push_back(x);
  std::vector<std::string> pts;
  std::vector<QElem> d(keep.size() * keep.size(), s.quantale()->bottom());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    pts.push_back(s.point(keep[i]));
    for (std::size_t j = 0; j < keep.size(); ++j)
      d[i * keep.size() + j] = s.dist(keep[i], keep[j]);
  }
  auto sub = make_space(std::move(pts), s.quantale(), std::move(d));
  auto incl = make_arrow(sub, f.src, keep, identity_morphism(s.quantale()));
  return SpaceWithArrow{sub, std::move(incl)};
}

SpaceWithArrow coequalizer(const MetArrow& f, const MetArrow& g) {
  require_parallel(f, g);
  const auto& t = *f.tgt;
  auto n = t.size();
  // union-find over the target points
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t x = 0; x < f.f.size(); ++x) {
    auto a = find(f.f[x]);
    auto b = find(g.f[x]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> cls(n);
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = find(i);
    if (r == i) {
      cls[i] = reps.size();
      reps.push_back(i);
    }
  }
  for (std::size_t i = 0; i < n; ++i) cls[i] = cls[find(i)];

  auto m = reps.size();
  std::vector<std::string> pts(m);
  for (std::size_t c = 0; c < m; ++c) pts[c] = "[" + t.point(reps[c]) + "]";
  std::vector<QElem> d(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<QElem> vals;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          if (cls[x] == a && cls[y] == b) vals.push_back(t.dist(x, y));
      d[a * m + b] = t.quantale()->join(vals);
    }
  auto quot = make_space(std::move(pts), t.quantale(), std::move(d));
  auto e = make_arrow(f.tgt, quot, cls, identity_morphism(t.quantale()));
  return SpaceWithArrow{quot, std::move(e)};
}

ProductSpace product_space(const std::vector<SpacePtr>& spaces,
                           const Caps& caps) {
  if (spaces.empty())
    throw Error("hypothesis-violation", "product of zero spaces not built");
  QuantalePtr pq = spaces[0]->quantale();
  for (std::size_t i = 1; i < spaces.size(); ++i)
    pq = product(pq, spaces[i]->quantale(), caps);

  // enumerate point tuples, index = mixed radix over factors
  std::size_t total = 1;
  for (const auto& s : spaces) {
    total *= s->size();
    if (total > caps.carrier)
      throw Error("carrier-cap-exceeded", "product point set beyond cap");
  }
  std::vector<std::vector<std::size_t>> tuples(total);
  std::vector<std::string> pts(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::size_t> tup(spaces.size());
    std::size_t t = idx;
    for (std::size_t k = spaces.size(); k-- > 0;) {
      tup[k] = t % spaces[k]->size();
      t /= spaces[k]->size();
    }
    std::string label = "(";
    for (std::size_t k = 0; k < spaces.size(); ++k) {
      if (k) label += ",";
      label += spaces[k]->point(tup[k]);
    }
    pts[idx] = label + ")";
    tuples[idx] = std::move(tup);
  }

  // d(x,y) = tuple of component distances, as a product quantale element
  auto pack = [&](const std::vector<QElem>& comps) -> QElem {
    std::size_t idx = 0;
    QuantalePtr acc = spaces[0]->quantale();
    idx = *acc->index_of(comps[0]);
    for (std::size_t k = 1; k < spaces.size(); ++k) {
      idx = idx * spaces[k]->quantale()->size() +
            *spaces[k]->quantale()->index_of(comps[k]);
    }
    return static_cast<std::uint32_t>(idx);
  };

  std::vector<QElem> d(total * total);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      std::vector<QElem> comps(spaces.size());
      for (std::size_t k = 0; k < spaces.size(); ++k)
        comps[k] = spaces[k]->dist(tuples[a][k], tuples[b][k]);
      d[a * total + b] = pack(comps);
    }
  auto prod = make_space(std::move(pts), pq, std::move(d));

  ProductSpace out{prod, {}, tuples};
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    std::vector<std::size_t> proj(total);
    for (std::size_t idx = 0; idx < total; ++idx) proj[idx] = tuples[idx][k];
    // projection realizer: product element -> k-th coordinate
    std::vector<QElem> vals(pq->size());
    for (std::size_t e = 0; e < pq->size(); ++e) {
      std::size_t t = e;
      std::vector<std::size_t> coord(spaces.size());
      for (std::size_t k2 = spaces.size(); k2-- > 0;) {
        coord[k2] = t % spaces[k2]->quantale()->size();
        t /= spaces[k2]->quantale()->size();
      }
      vals[e] = spaces[k]->quantale()->element(coord[k]);
    }
    QuantaleMorphism pi("proj" + std::to_string(k), pq, spaces[k]->quantale(),
                        std::move(vals));
    out.projections.push_back(
        make_arrow(prod, spaces[k], std::move(proj), std::move(pi)));
  }
  return out;
}

SumSpace sum_space(const std::vector<SpacePtr>& spaces) {
  if (spaces.empty())
    throw Error("hypothesis-violation", "sum of zero spaces not built");
  auto q = spaces[0]->quantale();
  for (const auto& s : spaces)
    if (s->quantale()->name() != q->name())
      throw Error("mismatched-quantale", "sum requires a shared quantale");

  std::vector<std::string> pts;
  std::vector<std::pair<std::size_t, std::size_t>> origin;  // (component, idx)
  for (std::size_t k = 0; k < spaces.size(); ++k)
    for (std::size_t i = 0; i < spaces[k]->size(); ++i) {
      pts.push_back(std::to_string(k) + ":" + spaces[k]->point(i));
      origin.emplace_back(k, i);
    }
  auto n = pts.size();
  std::vector<QElem> d(n * n, q->bottom());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (origin[a].first == origin[b].first)
        d[a * n + b] =
            spaces[origin[a].first]->dist(origin[a].second, origin[b].second);
  auto sum = make_space(std::move(pts), q, std::move(d));

  SumSpace out{sum, {}};
  std::size_t offset = 0;
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    std::vector<std::size_t> inj(spaces[k]->size());
    for (std::size_t i = 0; i < spaces[k]->size(); ++i) inj[i] = offset + i;
    offset += spaces[k]->size();
    out.injections.push_back(
        make_arrow(spaces[k], sum, std::move(inj), identity_morphism(q)));
  }
  return out;
}

// ---- separation -------------------------------------------------------------

Separation separate(const SpacePtr& sp) {
  const auto& s = *sp;
  auto q = s.quantale();
  const auto& pre = s.d_preorder();
  auto n = s.size();
  std::vector<std::size_t> cls(n, SIZE_MAX);
  std::vector<std::size_t> reps;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t c = 0; c < reps.size(); ++c)
      if (pre.leq(x, reps[c]) && pre.leq(reps[c], x)) {
        cls[x] = c;
        break;
      }
    if (cls[x] == SIZE_MAX) {
      cls[x] = reps.size();
      reps.push_back(x);
    }
  }

  auto m = reps.size();
  // re-check well-definedness of the quotient metric
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (!q->equal(s.dist(x, y), s.dist(reps[cls[x]], reps[cls[y]])))
        throw Error("hypothesis-violation",
                    "separation quotient metric is ill-defined; the input "
                    "does not satisfy the metric axioms");

  std::vector<std::string> pts(m);
  std::vector<QElem> d(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    pts[a] = "[" + s.point(reps[a]) + "]";
    for (std::size_t b = 0; b < m; ++b) d[a * m + b] = s.dist(reps[a], reps[b]);
  }
  auto quot = make_space(std::move(pts), q, std::move(d));

  Separation out;
  out.quotient = quot;
  out.r = make_arrow(sp, quot, cls, identity_morphism(q));
  out.s_section = make_arrow(quot, sp, reps, identity_morphism(q));
  out.cls = cls;
  return out;
}

// ---- extensive metrization --------------------------------------------------

namespace {

DynBitset implication_set(const FinTopology& t, std::size_t x, std::size_t y) {
  // {O in opens : x in O => y in O}
  DynBitset s(t.opens().size());
  for (std::size_t o = 0; o < t.opens().size(); ++o)
    if (!t.opens()[o].test(x) || t.opens()[o].test(y)) s.set(o);
  return s;
}

}  // namespace

SpacePtr metrize(const FinTopology& t, const Caps& caps) {
  auto m = t.opens().size();
  if (m > caps.metrize_opens)
    throw Error("cap-exceeded", "metrize accepts at most " +
                                    std::to_string(caps.metrize_opens) +
                                    " opens");
  auto omega = std::make_shared<OmegaQuantale>(m);
  auto n = t.points();
  std::vector<std::string> pts(n);
  std::vector<QElem> d(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    pts[x] = "x" + std::to_string(x);
    for (std::size_t y = 0; y < n; ++y)
      d[x * n + y] = Antichain{{implication_set(t, x, y)}};
  }
  auto space = make_space(std::move(pts), omega, std::move(d));
  if (!(space->ball_topology() == t))
    throw Error("hypothesis-violation",
                "metrize ball topology does not reproduce the input");
  if (!(total_ball_topology(*space) == t))
    throw Error("hypothesis-violation",
                "metrize totally-below ball topology mismatch");
  return space;
}

SpacePtr metrize_materialized(const FinTopology& t, const Caps& caps) {
  auto m = t.opens().size();
  if (m > 4)
    throw Error("cap-exceeded",
                "materialized metrization is for tiny open families");
  // the poset P_f(S) of subsets of the opens family, ordered by inclusion
  std::size_t subsets = 1ull << m;
  Preorder ord(subsets);
  std::vector<std::string> labels(subsets);
  for (std::size_t a = 0; a < subsets; ++a) {
    labels[a] = "s" + std::to_string(a);
    for (std::size_t b = 0; b < subsets; ++b)
      if ((a & ~b) == 0) ord.set(a, b);
  }
  FinPoset pf(labels, ord);
  auto dl = lower_set_lattice(pf, caps.carrier);
  auto sz = dl.sets.size();
  // the locale D(P_f(S)): tensor is meet
  std::vector<std::uint32_t> tensor(sz * sz), joins(sz * sz);
  for (std::size_t i = 0; i < sz; ++i)
    for (std::size_t j = 0; j < sz; ++j) {
      tensor[i * sz + j] =
          static_cast<std::uint32_t>(dl.index_of(dl.sets[i] & dl.sets[j]));
      joins[i * sz + j] =
          static_cast<std::uint32_t>(dl.index_of(dl.sets[i] | dl.sets[j]));
    }
  auto meets = tensor;
  auto top = dl.index_of(DynBitset::full(subsets));
  auto q = std::make_shared<TableQuantale>("omega_table:" + std::to_string(m),
                                           dl.lattice, std::move(tensor),
                                           static_cast<std::uint32_t>(top),
                                           std::move(joins), std::move(meets));

  auto n = t.points();
  std::vector<std::string> pts(n);
  std::vector<QElem> d(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    pts[x] = "x" + std::to_string(x);
    for (std::size_t y = 0; y < n; ++y) {
      auto sxy = implication_set(t, x, y).to_mask();
      DynBitset singleton(subsets);
      singleton.set(sxy);
      d[x * n + y] = static_cast<std::uint32_t>(
          dl.index_of(pf.down_closure(singleton)));
    }
  }
  return make_space(std::move(pts), q, std::move(d));
}

// ---- sampling ---------------------------------------------------------------

SpacePtr random_metric_space(Lcg& rng, const QuantalePtr& q, std::size_t n) {
  std::vector<QElem> palette;
  if (q->enumerable()) {
    for (std::size_t i = 0; i < q->size(); ++i) palette.push_back(q->element(i));
  } else {
    for (const char* s : {"0", "1/2", "1", "3/2", "2", "3", "inf"})
      palette.push_back(*q->parse(s));
  }
  std::vector<QElem> d(n * n);
  for (auto& e : d) e = palette[rng.below(palette.size())];
  // repair into a metric: seed the diagonal, then quantale Floyd-Warshall
  for (std::size_t x = 0; x < n; ++x)
    d[x * n + x] = q->join2(d[x * n + x], q->unit());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          auto via = q->tensor(d[x * n + y], d[y * n + z]);
          if (!q->leq(via, d[x * n + z])) {
            d[x * n + z] = q->join2(d[x * n + z], via);
            changed = true;
          }
        }
  }
  std::vector<std::string> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = "x" + std::to_string(i);
  return make_space(std::move(pts), q, std::move(d));
}

std::vector<std::size_t> random_point_map(Lcg& rng, std::size_t from,
                                          std::size_t to) {
  std::vector<std::size_t> f(from);
  for (auto& v : f) v = rng.below(to);
  return f;
}

}  // namespace qmet
