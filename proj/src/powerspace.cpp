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

#include "qmet/powerspace.hpp"

#include <algorithm>

namespace qmet {

DynBitset b_r(const QMetricSpace& s, const DynBitset& a, const QElem& delta) {
  DynBitset out(s.size());
  for (auto x : a.members()) out |= s.ball(x, delta);
  return out;
}

DynBitset fattening(const QMetricSpace& s, const DynBitset& a,
                    const QElem& delta) {
  return s.closure_dual(b_r(s, a, delta));
}

DynBitset subset_of_index(std::size_t n, std::size_t index) {
  return DynBitset::from_mask(n, index);
}

std::size_t index_of_subset(const DynBitset& s) {
  return static_cast<std::size_t>(s.to_mask());
}

bool robust_open(const QMetricSpace& s, const DynBitset& family) {
  auto n = s.size();
  if (family.size() != (1ull << n))
    throw Error("arity-mismatch", "family width must be 2^|X|");
  auto cands = s.radius_candidates();
  for (auto ai : family.members()) {
    auto a = subset_of_index(n, ai);
    bool ok = false;
    for (const auto& delta : cands) {
      auto br = b_r(s, a, delta).to_mask();
      bool all_in = true;
      std::uint64_t sub = br;
      while (true) {
        if (!family.test(sub)) {
          all_in = false;
          break;
        }
        if (sub == 0) break;
        sub = (sub - 1) & br;
      }
      if (all_in) {
        ok = true;
        break;
      }
    }
    if (!ok) return false;
  }
  return true;
}

FinTopology robust_topology_small(const QMetricSpace& s) {
  auto n = s.size();
  if (n > 4)
    throw Error("cap-exceeded", "robust topology enumeration needs |X| <= 4");
  std::size_t subsets = 1ull << n;
  auto cands = s.radius_candidates();

  // per subset and radius: the family P(B_R(A, delta)) as a bitmask
  std::vector<std::vector<std::uint64_t>> pow_mask(subsets);
  for (std::size_t ai = 0; ai < subsets; ++ai) {
    for (const auto& delta : cands) {
      auto br = b_r(s, subset_of_index(n, ai), delta).to_mask();
      std::uint64_t fam = 0;
      std::uint64_t sub = br;
      while (true) {
        fam |= 1ull << sub;
        if (sub == 0) break;
        sub = (sub - 1) & br;
      }
      pow_mask[ai].push_back(fam);
    }
  }

  std::vector<DynBitset> opens;
  std::uint64_t families = 1ull << subsets;
  for (std::uint64_t fam = 0; fam < families; ++fam) {
    bool open = true;
    for (std::size_t ai = 0; ai < subsets && open; ++ai) {
      if (!((fam >> ai) & 1)) continue;
      bool ok = false;
      for (const auto& pm : pow_mask[ai])
        if ((pm & ~fam) == 0) {
          ok = true;
          break;
        }
      if (!ok) open = false;
    }
    if (open) opens.push_back(DynBitset::from_mask(subsets, fam));
  }

  // the collection must itself satisfy the topology axioms; a failure is an
  // implementation bug, not something to reconcile silently
  std::sort(opens.begin(), opens.end());
  auto t = FinTopology::generate(subsets, opens);
  if (t.opens() != opens)
    throw Error("hypothesis-violation",
                "robust-open families do not form a topology");
  return t;
}

Preorder robust_specialization(const QMetricSpace& s) {
  auto n = s.size();
  if (n > 10)
    throw Error("cap-exceeded", "robust specialization needs |X| <= 10");
  std::size_t subsets = 1ull << n;
  auto cands = s.radius_candidates();

  // route one: from the defining predicate, A <= B iff B is inside every
  // B_R(A, delta)
  Preorder route1(subsets);
  for (std::size_t ai = 0; ai < subsets; ++ai) {
    auto a = subset_of_index(n, ai);
    DynBitset inter = DynBitset::full(n);
    for (const auto& delta : cands) inter &= b_r(s, a, delta);
    for (std::size_t bi = 0; bi < subsets; ++bi)
      if (subset_of_index(n, bi).is_subset_of(inter)) route1.set(ai, bi);
  }

  // route two: B inside the dual closure of A
  Preorder route2(subsets);
  for (std::size_t ai = 0; ai < subsets; ++ai) {
    auto cl = s.closure_dual(subset_of_index(n, ai));
    for (std::size_t bi = 0; bi < subsets; ++bi)
      if (subset_of_index(n, bi).is_subset_of(cl)) route2.set(ai, bi);
  }

  if (!(route1 == route2))
    throw Error("hypothesis-violation",
                "robust specialization routes disagree");
  return route1;
}

// ---- powerspaces ------------------------------------------------------------

namespace {

std::string subset_label(const QMetricSpace& s, const DynBitset& a) {
  std::string out = "{";
  bool first = true;
  for (auto i : a.members()) {
    if (!first) out += ",";
    out += s.point(i);
    first = false;
  }
  return out + "}";
}

}  // namespace

PowerSpace build_powerspace(const SpacePtr& s, PowerVariant v,
                            const Caps& caps) {
  auto n = s->size();
  if (n > caps.points)
    throw Error("cap-exceeded",
                "powerspace construction capped at |X| = " +
                    std::to_string(caps.points));
  std::size_t subsets = 1ull << n;
  const auto& q = *s->quantale();

  PowerSpace out;
  out.base = s;
  out.variant = v;

  std::vector<std::string> pts(subsets);
  for (std::size_t i = 0; i < subsets; ++i)
    pts[i] = subset_label(*s, subset_of_index(n, i));

  if (v == PowerVariant::kDq) {
    std::vector<QElem> d(subsets * subsets);
    for (std::size_t ai = 0; ai < subsets; ++ai) {
      auto a = subset_of_index(n, ai);
      for (std::size_t bi = 0; bi < subsets; ++bi) {
        auto b = subset_of_index(n, bi);
        std::vector<QElem> meets;
        for (auto y : b.members()) {
          std::vector<QElem> joins;
          for (auto x : a.members()) joins.push_back(s->dist(x, y));
          meets.push_back(q.join(joins));
        }
        d[ai * subsets + bi] = q.meet(meets);
      }
    }
    out.space = make_space(std::move(pts), s->quantale(), std::move(d));
    return out;
  }

  auto cs = scott_closed_quantale(s->quantale());
  std::vector<QElem> d(subsets * subsets);
  if (cs.sets) {
    const auto& tq = *std::dynamic_pointer_cast<const TableQuantale>(cs.base);
    auto qn = tq.carrier().size();
    for (std::size_t ai = 0; ai < subsets; ++ai) {
      auto a = subset_of_index(n, ai);
      for (std::size_t bi = 0; bi < subsets; ++bi) {
        auto b = subset_of_index(n, bi);
        DynBitset acc = DynBitset::full(qn);  // top of C_S(Q)
        for (auto y : b.members()) {
          DynBitset vals(qn);
          for (auto x : a.members()) vals.set(tq.idx(s->dist(x, y)));
          acc &= tq.carrier().down_closure(vals);
        }
        d[ai * subsets + bi] = cs.from_lower_bitset(acc);
      }
    }
  } else {
    for (std::size_t ai = 0; ai < subsets; ++ai) {
      auto a = subset_of_index(n, ai);
      for (std::size_t bi = 0; bi < subsets; ++bi) {
        auto b = subset_of_index(n, bi);
        if (!b.any()) {
          d[ai * subsets + bi] = cs.closed->top();
        } else if (!a.any()) {
          d[ai * subsets + bi] = cs.closed->bottom();
        } else {
          std::vector<QElem> meets;
          for (auto y : b.members()) {
            std::vector<QElem> joins;
            for (auto x : a.members()) joins.push_back(s->dist(x, y));
            meets.push_back(q.join(joins));
          }
          d[ai * subsets + bi] = LiftedRat{std::get<ExtRat>(q.meet(meets))};
        }
      }
    }
  }
  out.space = make_space(std::move(pts), cs.closed, std::move(d));
  out.cs = std::move(cs);
  return out;
}

HausdorffReport hausdorff_theorem_check(const SpacePtr& s, const Caps& caps) {
  HausdorffReport rep;
  auto n = s->size();
  if (n <= 3) {
    rep.strategy = "exhaustive";
    auto rt = robust_topology_small(*s);
    auto ps = build_powerspace(s, PowerVariant::kDs, caps);
    const auto& bt = ps.space->ball_topology();
    if (!(rt == bt)) {
      rep.holds = false;
      for (const auto& o : rt.opens())
        if (!bt.is_open(o)) {
          rep.witness = "family " + o.to_string() + " robust-open only";
          return rep;
        }
      for (const auto& o : bt.opens())
        if (!rt.is_open(o)) {
          rep.witness = "family " + o.to_string() + " d_S-open only";
          return rep;
        }
    }
    return rep;
  }
  if (n > 5)
    throw Error("cap-exceeded", "hausdorff check strategies cover |X| <= 5");
  return hausdorff_filter_check(s, caps);
}

HausdorffReport hausdorff_filter_check(const SpacePtr& s, const Caps& caps) {
  HausdorffReport rep;
  auto n = s->size();
  rep.strategy = "filter-refinement";
  auto ps = build_powerspace(s, PowerVariant::kDs, caps);
  std::size_t subsets = 1ull << n;
  auto ball_cands = ps.space->radius_candidates();
  auto base_cands = s->radius_candidates();

  // (a) every d_S ball is robust-open
  for (std::size_t ai = 0; ai < subsets && rep.holds; ++ai)
    for (const auto& dprime : ball_cands) {
      auto family = ps.space->ball(ai, dprime);
      if (!robust_open(*s, family)) {
        rep.holds = false;
        rep.witness = "d_S ball around " + ps.space->point(ai) +
                      " is not robust-open";
        break;
      }
    }

  // (b) inside every P(B_R(A, delta)) sits a d_S ball around A
  for (std::size_t ai = 0; ai < subsets && rep.holds; ++ai) {
    auto a = subset_of_index(n, ai);
    for (const auto& delta : base_cands) {
      auto br = b_r(*s, a, delta);
      bool found = false;
      for (const auto& dprime : ball_cands) {
        auto family = ps.space->ball(ai, dprime);
        bool inside = true;
        for (auto bi : family.members())
          if (!subset_of_index(n, bi).is_subset_of(br)) {
            inside = false;
            break;
          }
        if (inside) {
          found = true;
          break;
        }
      }
      if (!found) {
        rep.holds = false;
        rep.witness = "no d_S ball around " + ps.space->point(ai) +
                      " fits inside P(B_R(A," + s->quantale()->label(delta) +
                      "))";
        break;
      }
    }
  }
  return rep;
}

// ---- monads -----------------------------------------------------------------

std::vector<DynBitset> kleisli_unit(std::size_t n) {
  std::vector<DynBitset> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = DynBitset::single(n, i);
  return f;
}

DynBitset kleisli_extend_set(const KleisliArrow& k, const DynBitset& a) {
  DynBitset out(k.tgt->size());
  for (auto x : a.members()) out |= k.f[x];
  return out;
}

namespace {

QuantaleMorphism eta_morphism(const ScottClosedQuantale& cs) {
  if (cs.base->enumerable()) {
    std::vector<QElem> vals(cs.base->size());
    for (std::size_t i = 0; i < cs.base->size(); ++i)
      vals[i] = cs.eta(cs.base->element(i));
    return QuantaleMorphism("eta_C", cs.base, cs.closed, std::move(vals));
  }
  return QuantaleMorphism(
      "eta_C", cs.base, cs.closed,
      [](const QElem& e) -> QElem { return LiftedRat{std::get<ExtRat>(e)}; },
      true);
}

QuantaleMorphism identity_morphism(const QuantalePtr& q) {
  if (q->enumerable()) {
    std::vector<QElem> vals(q->size());
    for (std::size_t i = 0; i < q->size(); ++i) vals[i] = q->element(i);
    return QuantaleMorphism("id", q, q, std::move(vals));
  }
  return QuantaleMorphism("id", q, q, [](const QElem& e) { return e; }, true);
}

std::vector<std::size_t> extension_point_map(const KleisliArrow& k) {
  std::size_t subsets = 1ull << k.src->size();
  std::vector<std::size_t> ext(subsets);
  for (std::size_t ai = 0; ai < subsets; ++ai)
    ext[ai] = index_of_subset(
        kleisli_extend_set(k, subset_of_index(k.src->size(), ai)));
  return ext;
}

}  // namespace

MonadLawReport verify_monad_laws(MonadTag tag, const SpacePtr& x,
                                 const SpacePtr& y, const SpacePtr& z,
                                 const std::vector<KleisliArrow>& fs,
                                 const std::vector<KleisliArrow>& gs,
                                 const Caps& caps) {
  MonadLawReport rep;

  if (tag == MonadTag::kTransformedPs) {
    auto tx = transformed_power(x, caps);
    auto ty = transformed_power(y, caps);
    auto tz = transformed_power(z, caps);

    auto nx = x->size();
    std::size_t xsubsets = 1ull << nx;

    // Kleisli arrows into classes; section composes back to subsets
    auto cls_f = [&](const KleisliArrow& k, std::size_t pt) {
      return ty.cls_of_subset(k.f[pt]);
    };
    auto ext_f = [&](const KleisliArrow& k, std::size_t cx) {
      DynBitset acc(y->size());
      for (auto pt : tx.canon[cx].members()) acc |= ty.canon[cls_f(k, pt)];
      return ty.cls_of_subset(acc);
    };
    auto ext_f_section = [&](const KleisliArrow& k, std::size_t cx,
                             const std::vector<DynBitset>& sec_x,
                             const std::vector<DynBitset>& sec_y) {
      DynBitset acc(y->size());
      for (auto pt : sec_x[cx].members()) acc |= sec_y[cls_f(k, pt)];
      return ty.cls_of_subset(acc);
    };

    // first-representative sections, to check section independence
    std::vector<DynBitset> first_x(tx.canon.size()), first_y(ty.canon.size());
    for (std::size_t c = 0; c < tx.canon.size(); ++c)
      first_x[c] = tx.ps.subset(tx.sep.s_section.f[c]);
    for (std::size_t c = 0; c < ty.canon.size(); ++c)
      first_y[c] = ty.ps.subset(ty.sep.s_section.f[c]);

    for (const auto& k : fs) {
      // law: f* after eta' equals f
      for (std::size_t pt = 0; pt < nx; ++pt) {
        auto eta_cls = tx.cls_of_subset(DynBitset::single(nx, pt));
        ++rep.law_instances;
        if (ext_f(k, eta_cls) != cls_f(k, pt))
          rep.fail("transformed unit law at " + x->point(pt));
      }
      // section independence on all classes
      for (std::size_t c = 0; c < tx.canon.size(); ++c) {
        ++rep.law_instances;
        if (ext_f(k, c) != ext_f_section(k, c, first_x, first_y))
          rep.fail("transformed extension depends on the section choice");
      }
    }

    // eta'* = id on classes
    for (std::size_t c = 0; c < tx.canon.size(); ++c) {
      DynBitset acc(nx);
      for (auto pt : tx.canon[c].members())
        acc |= tx.canon[tx.cls_of_subset(DynBitset::single(nx, pt))];
      ++rep.law_instances;
      if (tx.cls_of_subset(acc) != c) rep.fail("transformed eta* law");
    }

    // associativity via canonical sections
    for (const auto& kf : fs)
      for (const auto& kg : gs) {
        auto ext_g = [&](std::size_t cy) {
          DynBitset acc(z->size());
          for (auto pt : ty.canon[cy].members())
            acc |= tz.canon[tz.cls_of_subset(kg.f[pt])];
          return tz.cls_of_subset(acc);
        };
        for (std::size_t ai = 0; ai < xsubsets; ++ai) {
          auto cx = tx.cls_of_subset(subset_of_index(nx, ai));
          auto lhs = ext_g(ext_f(kf, cx));
          // (g* after f) as a Kleisli arrow X -> classes of P(Z)
          DynBitset acc(z->size());
          for (auto pt : tx.canon[cx].members())
            acc |= tz.canon[ext_g(cls_f(kf, pt))];
          auto rhs = tz.cls_of_subset(acc);
          ++rep.law_instances;
          if (lhs != rhs) rep.fail("transformed associativity law");
        }
      }

    // arrow level: the transformed extension is uniformly continuous on the
    // separated quotients
    for (const auto& k : fs) {
      std::vector<std::size_t> ext(tx.canon.size());
      for (std::size_t c = 0; c < tx.canon.size(); ++c) ext[c] = ext_f(k, c);
      ++rep.law_instances;
      if (!is_uniformly_continuous(ext, *tx.sep.quotient, *ty.sep.quotient))
        rep.fail("transformed extension is not an arrow");
    }
    return rep;
  }

  auto v = tag == MonadTag::kPq ? PowerVariant::kDq : PowerVariant::kDs;
  if (tag == MonadTag::kPq) {
    if (x->quantale()->name() != y->quantale()->name() ||
        y->quantale()->name() != z->quantale()->name())
      throw Error("mismatched-quantale", "P_Q needs a fixed quantale");
  }
  auto px = build_powerspace(x, v, caps);
  auto py = build_powerspace(y, v, caps);
  auto pz = build_powerspace(z, v, caps);

  // units are arrows with the canonical realizers
  auto unit_arrow = [&](const SpacePtr& s, const PowerSpace& ps) {
    std::vector<std::size_t> eta(s->size());
    for (std::size_t i = 0; i < s->size(); ++i)
      eta[i] = index_of_subset(DynBitset::single(s->size(), i));
    auto realizer = tag == MonadTag::kPq ? identity_morphism(s->quantale())
                                         : eta_morphism(*ps.cs);
    return make_arrow(s, ps.space, std::move(eta), std::move(realizer));
  };
  unit_arrow(x, px);
  unit_arrow(y, py);
  unit_arrow(z, pz);
  rep.law_instances += 3;

  std::size_t xsubsets = 1ull << x->size();

  // Kleisli arrows must themselves be arrows
  for (const auto& k : fs) {
    std::vector<std::size_t> pmap(k.f.size());
    for (std::size_t i = 0; i < k.f.size(); ++i)
      pmap[i] = index_of_subset(k.f[i]);
    if (!is_uniformly_continuous(pmap, *x, *py.space))
      throw Error("hypothesis-violation",
                  "kleisli arrow without a realizer was supplied");
  }

  for (const auto& k : fs) {
    // unit law
    for (std::size_t pt = 0; pt < x->size(); ++pt) {
      ++rep.law_instances;
      if (!(kleisli_extend_set(k, DynBitset::single(x->size(), pt)) ==
            k.f[pt]))
        rep.fail("f* after eta != f at " + x->point(pt));
    }
    // extension is an arrow between the powerspaces
    ++rep.law_instances;
    if (!is_uniformly_continuous(extension_point_map(k), *px.space,
                                 *py.space))
      rep.fail("extension of a kleisli arrow lost its realizer");
  }

  // eta* = id
  KleisliArrow etax{x, x, kleisli_unit(x->size())};
  for (std::size_t ai = 0; ai < xsubsets; ++ai) {
    ++rep.law_instances;
    auto a = subset_of_index(x->size(), ai);
    if (!(kleisli_extend_set(etax, a) == a)) rep.fail("eta* != id");
  }

  // associativity
  for (const auto& kf : fs)
    for (const auto& kg : gs) {
      KleisliArrow comp{x, z, {}};
      comp.f.resize(x->size());
      for (std::size_t pt = 0; pt < x->size(); ++pt)
        comp.f[pt] = kleisli_extend_set(kg, kf.f[pt]);
      for (std::size_t ai = 0; ai < xsubsets; ++ai) {
        ++rep.law_instances;
        auto a = subset_of_index(x->size(), ai);
        if (!(kleisli_extend_set(kg, kleisli_extend_set(kf, a)) ==
              kleisli_extend_set(comp, a)))
          rep.fail("associativity law");
      }
    }

  // enrichment: comparable arrows have comparable extensions
  for (const auto& k1 : fs)
    for (const auto& k2 : fs) {
      std::vector<std::size_t> p1(k1.f.size()), p2(k2.f.size());
      for (std::size_t i = 0; i < k1.f.size(); ++i) {
        p1[i] = index_of_subset(k1.f[i]);
        p2[i] = index_of_subset(k2.f[i]);
      }
      if (!arrow_leq(p1, p2, *py.space)) continue;
      for (std::size_t ai = 0; ai < xsubsets; ++ai) {
        ++rep.law_instances;
        auto a = subset_of_index(x->size(), ai);
        auto e1 = index_of_subset(kleisli_extend_set(k1, a));
        auto e2 = index_of_subset(kleisli_extend_set(k2, a));
        if (!py.space->quantale()->leq(py.space->quantale()->unit(),
                                       py.space->dist(e1, e2)))
          rep.fail("enrichment monotonicity");
      }
    }

  return rep;
}

MetArrow MonadInstance::unit(const SpacePtr& s, const Caps& caps) const {
  std::vector<std::size_t> eta(s->size());
  for (std::size_t i = 0; i < s->size(); ++i)
    eta[i] = index_of_subset(DynBitset::single(s->size(), i));
  if (tag == MonadTag::kPq) {
    auto ps = build_powerspace(s, PowerVariant::kDq, caps);
    return make_arrow(s, ps.space, std::move(eta),
                      identity_morphism(s->quantale()));
  }
  if (tag == MonadTag::kPs) {
    auto ps = build_powerspace(s, PowerVariant::kDs, caps);
    return make_arrow(s, ps.space, std::move(eta), eta_morphism(*ps.cs));
  }
  auto tp = transformed_power(s, caps);
  std::vector<std::size_t> unit_cls(s->size());
  for (std::size_t i = 0; i < s->size(); ++i)
    unit_cls[i] = tp.sep.cls[eta[i]];
  return make_arrow(s, tp.sep.quotient, std::move(unit_cls),
                    eta_morphism(*tp.ps.cs));
}

DynBitset MonadInstance::extend(const KleisliArrow& f,
                                const DynBitset& a) const {
  if (tag != MonadTag::kTransformedPs) return kleisli_extend_set(f, a);
  // classes act through canonical representatives; the result is returned
  // as its canonical representative subset
  auto ty = transformed_power(f.tgt);
  auto tx = transformed_power(f.src);
  auto canon_a = tx.canon[tx.cls_of_subset(a)];
  DynBitset acc(f.tgt->size());
  for (auto pt : canon_a.members())
    acc |= ty.canon[ty.cls_of_subset(f.f[pt])];
  return ty.canon[ty.cls_of_subset(acc)];
}

MonadInstance monad_ops(MonadTag tag) { return MonadInstance{tag}; }

std::size_t TransformedPower::cls_of_subset(const DynBitset& a) const {
  return sep.cls[index_of_subset(a)];
}

TransformedPower transformed_power(const SpacePtr& s, const Caps& caps) {
  TransformedPower out{build_powerspace(s, PowerVariant::kDs, caps),
                       Separation{}, {}};
  out.sep = separate(out.ps.space);
  auto classes = out.sep.quotient->size();
  out.canon.resize(classes);
  const auto& pre = out.ps.space->d_preorder();
  for (std::size_t c = 0; c < classes; ++c) {
    auto rep_index = out.sep.s_section.f[c];
    auto canonical = s->closure_dual(out.ps.subset(rep_index));
    auto ci = index_of_subset(canonical);
    if (!pre.leq(ci, rep_index) || !pre.leq(rep_index, ci))
      throw Error("hypothesis-violation",
                  "dual closure left its d_S equivalence class");
    out.canon[c] = canonical;
  }
  return out;
}

// ---- the counterexample decider ---------------------------------------------

FeasibilityReport powerset_metric_feasible(const QMetricSpace& s,
                                           const Preorder& target) {
  auto n = s.size();
  if (n > 8)
    throw Error("cap-exceeded", "feasibility decider needs |X| <= 8");
  std::size_t subsets = 1ull << n;
  if (target.n != subsets)
    throw Error("arity-mismatch", "target preorder must cover P(X)");
  const auto& q = *s.quantale();

  FeasibilityReport rep;
  rep.forced.assign(subsets * subsets, q.bottom());
  auto at = [&](std::size_t a, std::size_t b) -> QElem& {
    return rep.forced[a * subsets + b];
  };

  for (std::size_t a = 0; a < subsets; ++a)
    for (std::size_t b = 0; b < subsets; ++b)
      if (target.leq(a, b)) at(a, b) = q.join2(at(a, b), q.unit());
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      std::size_t a = 1ull << u, b = 1ull << v;
      at(a, b) = q.join2(at(a, b), s.dist(u, v));
    }

  // quantale-valued transitive closure to fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < subsets; ++a)
      for (std::size_t b = 0; b < subsets; ++b)
        for (std::size_t c = 0; c < subsets; ++c) {
          auto via = q.tensor(at(a, b), at(b, c));
          if (!q.leq(via, at(a, c))) {
            at(a, c) = q.join2(at(a, c), via);
            changed = true;
          }
        }
  }

  for (std::size_t a = 0; a < subsets && rep.feasible; ++a)
    for (std::size_t b = 0; b < subsets; ++b)
      if (!target.leq(a, b) && q.leq(q.unit(), at(a, b))) {
        rep.feasible = false;
        rep.violation = {a, b};
        break;
      }
  return rep;
}

QuantaleMorphism sup_morphism(const ScottClosedQuantale& cs) {
  if (cs.sets) {
    std::vector<QElem> vals(cs.closed->size());
    for (std::size_t i = 0; i < cs.closed->size(); ++i)
      vals[i] = cs.sup(cs.closed->element(i));
    return QuantaleMorphism("sup", cs.closed, cs.base, std::move(vals));
  }
  auto base = cs.base;
  return QuantaleMorphism(
      "sup", cs.closed, base,
      [base](const QElem& e) -> QElem {
        const auto& l = std::get<LiftedRat>(e);
        if (!l.down) return base->bottom();
        return *l.down;
      },
      true);
}

QuantaleMorphism linear_inverse_realizer(const ScottClosedQuantale& cs) {
  if (!cs.base->is_linear() || cs.base->is_trivial())
    throw Error("hypothesis-violation",
                "the inverse realizer needs a non-trivial linear quantale");
  if (cs.base->enumerable()) {
    std::vector<QElem> vals(cs.base->size());
    for (std::size_t i = 0; i < cs.base->size(); ++i) {
      auto e = cs.base->element(i);
      if (cs.base->equal(e, cs.base->bottom()))
        vals[i] = cs.from_lower_bitset(DynBitset(cs.base->size()));
      else
        vals[i] = cs.eta(e);
    }
    return QuantaleMorphism("linear-inverse", cs.base, cs.closed,
                            std::move(vals));
  }
  return QuantaleMorphism(
      "linear-inverse", cs.base, cs.closed,
      [](const QElem& e) -> QElem {
        const auto& r = std::get<ExtRat>(e);
        if (r.inf) return LiftedRat{};
        return LiftedRat{r};
      },
      true);
}

}  // namespace qmet
