#include <doctest.h>

#include "qmet/quantale.hpp"
#include "qmet/sampling.hpp"

using namespace qmet;

namespace {

QElem q(const QuantalePtr& p, const std::string& label) {
  auto e = p->parse(label);
  REQUIRE(e.has_value());
  return *e;
}

}  // namespace

TEST_CASE("sigma is the two-point locale") {
  auto s = sigma();
  CHECK(s->size() == 2);
  CHECK(s->is_locale());
  CHECK(s->is_affine());
  CHECK(s->is_linear());
  CHECK(!s->is_trivial());
  CHECK(s->label(s->unit()) == "0");
  CHECK(s->label(s->bottom()) == "inf");
  CHECK(verify_quantale(*s).passed);
}

TEST_CASE("chain quantales") {
  auto cp = chain_plus(3);
  CHECK(verify_quantale(*cp).passed);
  CHECK(cp->is_linear());
  CHECK(!cp->is_locale());
  // capped addition
  CHECK(cp->label(cp->tensor(q(cp, "2"), q(cp, "2"))) == "3");
  CHECK(cp->label(cp->join2(q(cp, "2"), q(cp, "1"))) == "1");  // join = min
  CHECK(cp->label(cp->meet2(q(cp, "2"), q(cp, "1"))) == "2");

  auto cm = chain_max(2);
  CHECK(verify_quantale(*cm).passed);
  CHECK(cm->is_locale());

  // truncated subtraction residual
  CHECK(cp->label(cp->residual(q(cp, "1"), q(cp, "3"),
                               Quantale::Side::kLeft)) == "2");
}

TEST_CASE("relations quantale") {
  auto r = relations(2);
  CHECK(r->size() == 16);
  CHECK(verify_quantale(*r).passed);
  CHECK(!r->is_commutative());
  CHECK(!r->is_affine());
  CHECK(!r->is_linear());
  CHECK(r->label(r->unit()) == "{(0,0),(1,1)}");
  // composition: (0,1) ; (1,0) = (0,0)
  auto a = q(r, "{(0,1)}");
  auto b = q(r, "{(1,0)}");
  CHECK(r->label(r->tensor(a, b)) == "{(0,0)}");
  CHECK(r->label(r->tensor(b, a)) == "{(1,1)}");
}

TEST_CASE("product and affine part") {
  auto s2 = product(sigma(), sigma());
  CHECK(s2->size() == 4);
  CHECK(s2->is_locale());
  CHECK(verify_quantale(*s2).passed);
  CHECK(s2->label(s2->top()) == "(0,0)");
  CHECK(s2->label(s2->bottom()) == "(inf,inf)");
  // the diamond: the two middle elements are incomparable
  auto t0 = q(s2, "(0,inf)");
  auto t1 = q(s2, "(inf,0)");
  CHECK(!s2->leq(t0, t1));
  CHECK(!s2->leq(t1, t0));
  CHECK(s2->equal(s2->join2(t0, t1), s2->top()));
  CHECK(s2->equal(s2->tensor(t0, t1), s2->bottom()));

  auto ap = affine_part(relations(2));
  CHECK(ap->is_affine());
  CHECK(verify_quantale(*ap).passed);
  CHECK(ap->size() == 4);  // subsets of the identity relation
}

TEST_CASE("verification catches broken tensors") {
  auto cp = std::dynamic_pointer_cast<const TableQuantale>(chain_plus(3));
  // x tensor bottom = x instead of bottom
  auto broken = cp->with_tensor_cell(1, std::get<std::uint32_t>(cp->bottom()),
                                     1);
  auto rep = verify_quantale(*broken);
  CHECK(!rep.passed);
  CHECK(!rep.violations.empty());

  auto broken2 = cp->with_tensor_cell(std::get<std::uint32_t>(cp->unit()),
                                      2, 3);
  CHECK(!verify_quantale(*broken2).passed);
}

TEST_CASE("rational chains") {
  auto rp = rational_rplus();
  CHECK(rp->is_linear());
  CHECK(!rp->is_locale());
  CHECK(rational_rmax()->is_locale());
  CHECK(verify_quantale(*rp).passed);

  auto half = q(rp, "1/2");
  auto one = q(rp, "1");
  CHECK(rp->leq(one, half));  // reversed numeric order
  CHECK(rp->label(rp->tensor(half, one)) == "3/2");
  CHECK(rp->label(rp->join2(half, one)) == "1/2");
  CHECK(rp->label(rp->tensor(q(rp, "inf"), one)) == "inf");

  CHECK(rp->way_below(one, half));
  CHECK(!rp->way_below(half, one));
  CHECK(rp->way_below(q(rp, "inf"), q(rp, "inf")));
  CHECK(!rp->totally_below(q(rp, "inf"), q(rp, "inf")));

  // residuals: truncated subtraction / Heyting
  CHECK(rp->label(rp->residual(one, q(rp, "3"), Quantale::Side::kLeft)) ==
        "2");
  CHECK(rp->label(rp->residual(q(rp, "3"), one, Quantale::Side::kLeft)) ==
        "0");
  auto rm = rational_rmax();
  CHECK(rm->label(rm->residual(q(rm, "1"), q(rm, "3"),
                               Quantale::Side::kLeft)) == "3");
  CHECK(rm->label(rm->residual(q(rm, "3"), q(rm, "1"),
                               Quantale::Side::kLeft)) == "0");

  // radius candidates from a context
  RadiusContext ctx{{q(rp, "0"), q(rp, "1"), q(rp, "3"), q(rp, "inf")}};
  auto cands = rp->radius_candidates(ctx);
  CHECK(cands.size() == 2);  // 1/2 and 2
  CHECK(rp->label(cands[0]) == "1/2");
  CHECK(rp->label(cands[1]) == "2");
  RadiusContext empty{{q(rp, "0")}};
  CHECK(rp->radius_candidates(empty).size() == 1);
}

TEST_CASE("scott closed quantales") {
  auto cs_sigma = scott_closed_quantale(sigma());
  CHECK(cs_sigma.closed->size() == 3);
  CHECK(cs_sigma.closed->is_linear());
  CHECK(verify_quantale(*cs_sigma.closed).passed);

  auto cs_s2 = scott_closed_quantale(product(sigma(), sigma()));
  CHECK(cs_s2.closed->size() == 6);
  CHECK(verify_quantale(*cs_s2.closed).passed);
  CHECK(cs_s2.closed->is_locale());

  auto cs_c2 = scott_closed_quantale(chain_plus(2));
  CHECK(cs_c2.closed->size() == 4);  // chain of length n+2
  CHECK(cs_c2.closed->is_linear());
  CHECK(verify_quantale(*cs_c2.closed).passed);

  // eta embeds, sup collapses
  auto base = chain_plus(2);
  for (std::size_t i = 0; i < base->size(); ++i) {
    auto e = base->element(i);
    CHECK(base->equal(cs_c2.sup(cs_c2.eta(e)), e));
  }
  CHECK(base->equal(cs_c2.sup(cs_c2.closed->bottom()), base->bottom()));

  // rational base: the lifting closed form
  auto cs_r = scott_closed_quantale(rational_rplus());
  CHECK(!cs_r.sets);
  auto down1 = cs_r.eta(QElem(ExtRat(1L)));
  CHECK(cs_r.closed->label(down1) == "down:1");
  CHECK(cs_r.closed->leq(cs_r.closed->bottom(), down1));
  CHECK(!cs_r.closed->leq(down1, cs_r.closed->bottom()));
  CHECK(cs_r.closed->label(cs_r.closed->tensor(down1, down1)) == "down:2");
  CHECK(verify_quantale(*cs_r.closed).passed);
  CHECK(std::get<ExtRat>(cs_r.sup(down1)) == ExtRat(1L));
  CHECK(std::get<ExtRat>(cs_r.sup(cs_r.closed->bottom())) ==
        ExtRat::infinity());
}

TEST_CASE("C monad basics") {
  auto cs = scott_closed_quantale(product(sigma(), sigma()));
  const auto& tq = dynamic_cast<const TableQuantale&>(*cs.base);

  // eta* is the identity
  std::vector<QElem> etag(tq.size());
  for (std::size_t i = 0; i < tq.size(); ++i) etag[i] = cs.eta(tq.element(i));
  auto etak = make_c_kleisli(cs, cs, etag);
  for (std::size_t a = 0; a < cs.closed->size(); ++a)
    CHECK(qelem_eq(c_extend(etak, cs.closed->element(a)),
                   cs.closed->element(a)));

  // non-monotone maps are rejected
  auto cs_sig = scott_closed_quantale(sigma());
  std::vector<QElem> bad = {cs_sig.closed->top(), cs_sig.closed->bottom()};
  CHECK_THROWS_AS(make_c_kleisli(cs_sig, cs_sig, bad), Error);
}

TEST_CASE("pointwise hom and day convolution") {
  Preorder ord(2);
  ord.set(0, 1);
  FinPoset p({"lo", "hi"}, ord);
  auto ph = pointwise_hom(p, sigma());
  CHECK(ph->size() == 3);  // monotone maps 2 -> 2
  CHECK(verify_quantale(*ph).passed);
  CHECK(ph->is_commutative());
  CHECK(ph->is_affine());

  Operation mx;
  mx.arity = 2;
  mx.table = {0, 1, 1, 1};
  OrderedMonoid m(p, mx, 0);
  auto day = day_convolution(m, sigma());
  CHECK(verify_quantale(*day).passed);
  CHECK(day->is_commutative());
  // the unit is the top map since the monoid unit is the bottom element
  CHECK(day->label(day->unit()) == "[0,0]");

  CHECK_THROWS_AS(day_convolution(m, relations(2)), Error);

  // the restriction conditions are computable predicates on lattice monoids
  CHECK(day_star_condition(m) == day_star_condition(m));
  (void)day_star_star_condition(m);
}

TEST_CASE("free quantale over an ordered monoid") {
  Preorder ord(4);
  ord.set(0, 1);
  ord.set(0, 2);
  ord.set(0, 3);
  ord.set(1, 3);
  ord.set(2, 3);
  FinPoset diamond({"bot", "a", "b", "top"}, ord);
  Operation join;
  join.arity = 2;
  join.table.resize(16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      join.table[i * 4 + j] = *diamond.join_of({i, j});
  OrderedMonoid m(diamond, join, 0);

  auto fq = free_quantale(m);
  CHECK(fq->size() == 6);  // lower sets of the diamond
  CHECK(verify_quantale(*fq).passed);
  CHECK(fq->is_commutative());
  // eta is strict-monoidal into the free quantale
  auto eta_elem = [&](std::size_t i) {
    return q(fq, "{" + std::string(i == 0   ? "bot"
                                   : i == 1 ? "bot,a"
                                   : i == 2 ? "bot,b"
                                            : "bot,a,b,top") +
                     "}");
  };
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(fq->equal(fq->tensor(eta_elem(i), eta_elem(j)),
                      eta_elem(join.apply(4, {i, j}))));
  CHECK(fq->equal(fq->unit(), eta_elem(0)));
}

TEST_CASE("morphism verification") {
  auto rep = verify_morphism(morphism_ceil(3));
  CHECK(rep.monotone);
  CHECK(rep.lax_monoidal);
  CHECK(!rep.scott_continuous);

  auto rep2 = verify_morphism(morphism_chain_inclusion(2));
  CHECK(rep2.lax_monoidal);
  CHECK(!rep2.join_preserving);

  auto rep3 = verify_morphism(morphism_rmax_to_rplus());
  CHECK(rep3.lax_monoidal);
  CHECK(rep3.join_preserving);

  auto rep4 = verify_morphism(morphism_top(relations(2)));
  CHECK(rep4.lax_monoidal);
  CHECK(!rep4.strict_monoidal);
}

TEST_CASE("residual adjunctions on the symbolic and lifted quantales") {
  // Omega over a two-element universe: all six lower sets enumerable
  OmegaQuantale om(2);
  std::vector<QElem> els = {
      om.bottom(),
      Antichain{{DynBitset::from_mask(2, 0b00)}},
      Antichain{{DynBitset::from_mask(2, 0b01)}},
      Antichain{{DynBitset::from_mask(2, 0b10)}},
      make_antichain({DynBitset::from_mask(2, 0b01),
                      DynBitset::from_mask(2, 0b10)}),
      om.top(),
  };
  for (const auto& x : els)
    for (const auto& z : els) {
      auto r = om.residual(x, z, Quantale::Side::kLeft);
      for (const auto& y : els)
        CHECK(om.leq(om.tensor(x, y), z) == om.leq(y, r));
      // Heyting implication is the largest such element
      CHECK(om.leq(om.tensor(x, r), z));
    }

  // the lifted rational C_S(R+): adjunction on a sample grid
  LiftedRationalQuantale lift(rational_rplus());
  std::vector<QElem> ls = {lift.bottom(), LiftedRat{ExtRat(0L)},
                           LiftedRat{ExtRat(Rational(1, 2))},
                           LiftedRat{ExtRat(2L)},
                           LiftedRat{ExtRat::infinity()}};
  for (const auto& x : ls)
    for (const auto& z : ls) {
      auto r = lift.residual(x, z, Quantale::Side::kLeft);
      for (const auto& y : ls)
        CHECK(lift.leq(lift.tensor(x, y), z) == lift.leq(y, r));
    }
}

TEST_CASE("relations(3) builds through the trusted tables") {
  auto r = relations(3);
  CHECK(r->size() == 512);
  CHECK(!r->is_commutative());
  CHECK(r->label(r->unit()) == "{(0,0),(1,1),(2,2)}");
  // spot-check composition and the bound tables
  auto a = *r->parse("{(0,1)}");
  auto b = *r->parse("{(1,2)}");
  CHECK(r->label(r->tensor(a, b)) == "{(0,2)}");
  CHECK(r->label(r->tensor(b, a)) == "{}");
  CHECK(r->equal(r->join2(a, b), *r->parse("{(0,1),(1,2)}")));
  CHECK(r->equal(r->meet2(a, b), r->bottom()));
  // residual adjunction at a few triples
  auto z = *r->parse("{(0,2),(0,1)}");
  auto res = r->residual(a, z, Quantale::Side::kLeft);
  for (auto label : {"{}", "{(1,2)}", "{(0,0)}", "{(1,2),(2,2)}"}) {
    auto y = *r->parse(label);
    CHECK(r->leq(r->tensor(a, y), z) == r->leq(y, res));
  }
}

TEST_CASE("caps abort constructions") {
  Caps tight;
  tight.carrier = 4;
  CHECK_THROWS_AS(relations(2, tight), Error);
  CHECK_THROWS_AS(product(relations(2), relations(2), tight), Error);
  CHECK_THROWS_AS(relations(4), Error);
}
