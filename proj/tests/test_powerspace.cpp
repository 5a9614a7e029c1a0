#include <doctest.h>

#include "qmet/powerspace.hpp"

using namespace qmet;

namespace {

QElem q(const QuantalePtr& p, const std::string& label) {
  auto e = p->parse(label);
  REQUIRE(e.has_value());
  return *e;
}

SpacePtr x3() {
  auto s2 = product(sigma(), sigma());
  auto top = q(s2, "(0,0)"), t0 = q(s2, "(0,inf)"), t1 = q(s2, "(inf,0)"),
       bot = q(s2, "(inf,inf)");
  return make_space({"x0", "x1", "x"}, s2,
                    {top, bot, t0, bot, top, t1, t0, t1, top});
}

SpacePtr discrete_sigma(std::size_t n) {
  auto s = sigma();
  std::vector<std::string> pts(n);
  std::vector<QElem> d(n * n, s->bottom());
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = "x" + std::to_string(i);
    d[i * n + i] = s->unit();
  }
  return make_space(pts, s, d);
}

}  // namespace

TEST_CASE("b_r and fattening") {
  auto s = x3();
  auto a = DynBitset::from_mask(3, 0b011);  // {x0, x1}
  // unit radius reproduces the set on a separated symmetric fixture
  CHECK(b_r(*s, a, s->quantale()->unit()) == a);
  CHECK(b_r(*s, DynBitset(3), s->quantale()->unit()).none());
  CHECK(fattening(*s, a, s->quantale()->unit()) == a);
  // bottom radius floods everything
  CHECK(b_r(*s, DynBitset::single(3, 0), s->quantale()->bottom()) ==
        DynBitset::full(3));
}

TEST_CASE("robust topology on the discrete space") {
  auto s = discrete_sigma(2);
  auto rt = robust_topology_small(*s);
  // robust opens = down-closed families of subsets
  std::size_t count = 0;
  for (std::uint64_t fam = 0; fam < 16; ++fam) {
    bool down = true;
    for (std::size_t a = 0; a < 4; ++a) {
      if (!((fam >> a) & 1)) continue;
      for (std::uint64_t sub = a;; sub = (sub - 1) & a) {
        if (!((fam >> sub) & 1)) down = false;
        if (sub == 0) break;
      }
    }
    if (down) ++count;
    CHECK(rt.is_open(DynBitset::from_mask(4, fam)) == down);
  }
  CHECK(rt.opens().size() == count);
  CHECK(robust_open(*s, DynBitset::full(4)));
}

TEST_CASE("robust specialization of the fixture is reverse inclusion") {
  auto s = x3();
  auto spec = robust_specialization(*s);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      CHECK(spec.leq(a, b) == ((b & ~a) == 0));
}

TEST_CASE("powerspace metrics") {
  auto s = x3();
  auto pq = build_powerspace(s, PowerVariant::kDq);
  auto ps = build_powerspace(s, PowerVariant::kDs);
  CHECK(pq.space->verify().passed);
  CHECK(ps.space->verify().passed);

  // d_Q(A,{x}) = join of the distances = top: the counterexample's engine
  auto aq = pq.space->dist(0b011, 0b100);
  CHECK(pq.space->quantale()->equal(aq, s->quantale()->top()));

  // d_S(A,{x}) is the lower set {bot, t0, t1}, strictly below the unit
  auto as = ps.space->dist(0b011, 0b100);
  CHECK(ps.cs->to_lower_bitset(as).count() == 3);
  CHECK(!ps.space->quantale()->leq(ps.space->quantale()->unit(), as));

  // empty-set conventions
  CHECK(ps.space->quantale()->equal(ps.space->dist(0b000, 0b001),
                                    ps.space->quantale()->bottom()));
  CHECK(ps.space->quantale()->equal(ps.space->dist(0b001, 0b000),
                                    ps.space->quantale()->top()));
  CHECK(pq.space->quantale()->equal(pq.space->dist(0b000, 0b001),
                                    pq.space->quantale()->bottom()));
  CHECK(pq.space->quantale()->equal(pq.space->dist(0b001, 0b000),
                                    pq.space->quantale()->top()));
}

TEST_CASE("main theorem on small spaces") {
  auto rep = hausdorff_theorem_check(x3());
  CHECK(rep.holds);
  CHECK(rep.strategy == "exhaustive");

  auto one = discrete_sigma(1);
  CHECK(hausdorff_theorem_check(one).holds);

  // the filter strategy agrees where both run
  CHECK(hausdorff_filter_check(x3()).holds);

  Lcg rng(3);
  for (int i = 0; i < 10; ++i) {
    auto s = random_metric_space(rng, chain_plus(3), 3);
    CHECK(hausdorff_theorem_check(s).holds);
  }
}

TEST_CASE("monad instances") {
  auto inst = monad_ops(MonadTag::kPq);
  auto s = discrete_sigma(2);
  auto eta = inst.unit(s);
  CHECK(eta.f[0] == 1);  // {x0} is subset index 1
  CHECK(eta.f[1] == 2);
  KleisliArrow k{s, s, kleisli_unit(2)};
  CHECK(inst.extend(k, DynBitset::from_mask(2, 0b11)) ==
        DynBitset::from_mask(2, 0b11));

  auto inst_s = monad_ops(MonadTag::kPs);
  CHECK_NOTHROW(inst_s.unit(x3()));
  auto inst_t = monad_ops(MonadTag::kTransformedPs);
  CHECK_NOTHROW(inst_t.unit(x3()));
  CHECK(inst_t.extend(k, DynBitset::single(2, 0)) == DynBitset::single(2, 0));
}

TEST_CASE("monad laws on sampled arrows") {
  Lcg rng(5);
  auto s2 = product(sigma(), sigma());
  auto x = random_metric_space(rng, s2, 2);
  auto y = random_metric_space(rng, s2, 2);
  auto z = random_metric_space(rng, chain_plus(2), 2);

  // constant-to-everything arrows are always valid
  KleisliArrow f{x, y, {DynBitset::full(2), DynBitset::full(2)}};
  KleisliArrow g{y, z, {DynBitset::full(2), DynBitset::full(2)}};
  auto rep = verify_monad_laws(MonadTag::kPs, x, y, z, {f}, {g});
  CHECK(rep.passed);
  CHECK(rep.law_instances > 0);

  auto rep_t =
      verify_monad_laws(MonadTag::kTransformedPs, x, y, z, {f}, {g});
  CHECK(rep_t.passed);
}

TEST_CASE("transformed power structures") {
  auto tp = transformed_power(x3());
  // the fixture's powerspace is already separated (reverse inclusion is a
  // partial order), so there are 8 classes
  CHECK(tp.sep.quotient->size() == 8);
  for (std::size_t c = 0; c < tp.canon.size(); ++c)
    CHECK(tp.cls_of_subset(tp.canon[c]) == c);
}

TEST_CASE("feasibility decider") {
  auto s = x3();
  auto rep = powerset_metric_feasible(*s, robust_specialization(*s));
  CHECK(!rep.feasible);
  REQUIRE(rep.violation.has_value());
  CHECK(rep.violation->first == 0b011);
  CHECK(rep.violation->second == 0b100);
  CHECK(s->quantale()->equal(rep.bound(0b011, 0b100, 8),
                             s->quantale()->top()));

  auto one = discrete_sigma(1);
  CHECK(powerset_metric_feasible(*one, robust_specialization(*one)).feasible);
}

TEST_CASE("linear remark morphisms") {
  auto cs = scott_closed_quantale(chain_plus(2));
  auto sup = sup_morphism(cs);
  auto rep = verify_morphism(sup);
  CHECK(rep.strict_monoidal);
  CHECK(rep.join_preserving);

  auto inv = linear_inverse_realizer(cs);
  auto rep2 = verify_morphism(inv);
  CHECK(rep2.monotone);
  CHECK(rep2.lax_unital);

  // rational version
  auto rcs = scott_closed_quantale(rational_rplus());
  CHECK_NOTHROW(sup_morphism(rcs));
  CHECK_NOTHROW(linear_inverse_realizer(rcs));
  // non-linear bases are rejected
  auto s2cs = scott_closed_quantale(product(sigma(), sigma()));
  CHECK_THROWS_AS(linear_inverse_realizer(s2cs), Error);
}
