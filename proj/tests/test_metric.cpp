#include <doctest.h>

#include <atomic>
#include <thread>

#include "qmet/metric.hpp"
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

SpacePtr path3() {
  auto cp = chain_plus(3);
  std::vector<std::string> pts = {"0", "1", "2", "3"};
  std::vector<QElem> d(16);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::size_t diff = i > j ? i - j : j - i;
      d[i * 4 + j] = q(cp, std::to_string(diff));
    }
  return make_space(pts, cp, d);
}

}  // namespace

TEST_CASE("metric verification") {
  auto s = x3();
  auto rep = s->verify();
  CHECK(rep.passed);
  CHECK(rep.symmetric);
  CHECK(rep.separated);
  CHECK(rep.d_preorder == Preorder(3));  // equality

  // broken diagonal reported with a witness
  auto s2 = product(sigma(), sigma());
  auto broken = make_space({"a", "b"}, s2,
                           {q(s2, "(inf,inf)"), q(s2, "(0,0)"),
                            q(s2, "(0,0)"), q(s2, "(0,0)")});
  auto brep = broken->verify();
  CHECK(!brep.passed);
  CHECK(!brep.violations.empty());
}

TEST_CASE("balls and topologies") {
  auto s = x3();
  CHECK(s->ball(0, s->quantale()->unit()) == DynBitset::single(3, 0));
  CHECK(s->ball(0, s->quantale()->bottom()) == DynBitset::full(3));
  CHECK(s->ball_topology() == FinTopology::discrete(3));
  // every element below the unit is a legal radius on a finite table
  for (std::size_t i = 0; i < s->quantale()->size(); ++i)
    CHECK_NOTHROW(s->ball(0, s->quantale()->element(i)));
  // radii above the unit are rejected on the rational chain
  auto rp = rational_rplus();
  auto rs = make_space({"a"}, rp, {q(rp, "0")});
  CHECK_THROWS_AS(rs->ball(0, q(rp, "0")), Error);
}

TEST_CASE("path space") {
  auto s = path3();
  CHECK(s->verify().passed);
  CHECK(s->ball(1, q(s->quantale(), "1")) == DynBitset::from_mask(4, 0b0111));
  // d-preorder relates points within distance 0 only
  CHECK(s->d_preorder() == Preorder(4));
}

TEST_CASE("rational spaces") {
  auto rp = rational_rplus();
  std::vector<QElem> d = {q(rp, "0"), q(rp, "1/2"), q(rp, "1/2"), q(rp, "0")};
  auto s = make_space({"a", "b"}, rp, d);
  CHECK(s->verify().passed);
  auto cands = s->radius_candidates();
  CHECK(cands.size() == 1);
  CHECK(rp->label(cands[0]) == "1/4");
  CHECK(s->ball(0, cands[0]) == DynBitset::single(2, 0));
  CHECK(s->ball_topology() == FinTopology::discrete(2));
}

TEST_CASE("uniform continuity deciders agree") {
  auto s = x3();
  auto t = path3();
  std::vector<std::size_t> f = {0, 1, 2};
  bool u1 = is_uniformly_continuous(f, *s, *t);
  bool u2 = uniform_eps_delta(f, *s, *t);
  auto u3 = brute_force_realizer(f, *s, *t);
  CHECK(u1 == u2);
  CHECK(u1 == u3.has_value());

  // identity and constant maps
  std::vector<std::size_t> id3 = {0, 1, 2};
  CHECK(is_uniformly_continuous(id3, *s, *s));
  std::vector<std::size_t> c3 = {1, 1, 1};
  CHECK(is_uniformly_continuous(c3, *s, *t));
  CHECK(is_pointwise_continuous(c3, *s, *t));
}

TEST_CASE("greatest realizer") {
  auto s = x3();
  std::vector<std::size_t> id3 = {0, 1, 2};
  auto g = greatest_realizer(id3, *s, *s);
  // realizer at the unit dominates the unit
  CHECK(s->quantale()->leq(s->quantale()->unit(),
                           g.map(s->quantale()->unit())));
  // arrow construction validates it
  CHECK_NOTHROW(make_arrow(s, s, id3, g));

  // the greatest realizer dominates whatever the brute force finds
  auto h = brute_force_realizer(id3, *s, *s);
  REQUIRE(h.has_value());
  for (std::size_t i = 0; i < s->quantale()->size(); ++i)
    CHECK(s->quantale()->leq((*h)[i], g.map(s->quantale()->element(i))));
}

TEST_CASE("equalizer and coequalizer") {
  auto s = path3();
  auto fa = make_arrow(s, s, {0, 1, 2, 3});
  auto ga = make_arrow(s, s, {0, 1, 2, 2});
  auto eq = equalizer(fa, ga);
  CHECK(eq.space->size() == 3);
  CHECK(eq.space->verify().passed);

  auto one = make_space({"p"}, chain_plus(3), {q(chain_plus(3), "0")});
  auto co = coequalizer(make_arrow(one, s, {0}), make_arrow(one, s, {1}));
  CHECK(co.space->size() == 3);
  CHECK(co.space->verify().passed);
  // join over representatives: d([0/1],[2]) = join{d(0,2), d(1,2)}
  //                                         = min(2,1) numerically = 1
  auto cls01 = co.arrow.f[0];
  auto cls2 = co.arrow.f[2];
  CHECK(co.space->quantale()->label(co.space->dist(cls01, cls2)) == "1");
}

TEST_CASE("products and sums") {
  auto a = path3();
  auto prod = product_space({a, a});
  CHECK(prod.space->size() == 16);
  CHECK(prod.space->verify().passed);
  auto i = prod.space->point_index("(0,1)");
  auto j = prod.space->point_index("(3,2)");
  REQUIRE((i && j));
  CHECK(prod.space->quantale()->label(prod.space->dist(*i, *j)) == "(3,1)");

  auto sum = sum_space({a, a});
  CHECK(sum.space->size() == 8);
  CHECK(sum.space->verify().passed);
  CHECK(sum.space->quantale()->equal(sum.space->dist(0, 4),
                                     sum.space->quantale()->bottom()));
}

TEST_CASE("separation quotient") {
  auto s2 = sigma();
  auto top = q(s2, "0");
  auto blob = make_space({"a", "b"}, s2, {top, top, top, top});
  auto sep = separate(blob);
  CHECK(sep.quotient->size() == 1);
  CHECK(sep.quotient->verify().separated);
  CHECK(sep.r.f[0] == sep.r.f[1]);
  // r after s is the identity on classes
  CHECK(sep.r.f[sep.s_section.f[0]] == 0);
}

TEST_CASE("metrization") {
  auto sier = FinTopology::generate(2, {DynBitset::single(2, 0)});
  auto m = metrize(sier);
  CHECK(m->ball_topology() == sier);
  CHECK(m->verify().passed);
  CHECK(total_ball_topology(*m) == sier);

  auto mat = metrize_materialized(sier);
  CHECK(mat->ball_topology() == sier);
  CHECK(mat->verify().passed);

  // symbolic distances are singleton antichains of implication families
  const auto& gens = std::get<Antichain>(m->dist(0, 1)).gens;
  CHECK(gens.size() == 1);
  CHECK(gens[0].count() == 2);  // the empty set and the full set

  Caps caps;
  caps.metrize_opens = 2;
  CHECK_THROWS_AS(metrize(sier, caps), Error);
}

TEST_CASE("random spaces are metrics") {
  Lcg rng(11);
  for (int i = 0; i < 20; ++i) {
    auto s = random_metric_space(rng, chain_plus(3), 1 + rng.below(4));
    CHECK(s->verify().passed);
    auto r = random_metric_space(rng, rational_rplus(), 1 + rng.below(4));
    CHECK(r->verify().passed);
  }
}

TEST_CASE("degenerate empty space") {
  auto empty = make_space({}, sigma(), {});
  CHECK(empty->verify().passed);
  // the one topology on no points: just the empty open
  CHECK(empty->ball_topology().opens().size() == 1);
  CHECK(empty->closure_dual(DynBitset(0)) == DynBitset(0));
  auto ps = build_powerspace(empty, PowerVariant::kDs);
  CHECK(ps.space->size() == 1);
  CHECK(hausdorff_theorem_check(empty).holds);
}

TEST_CASE("caches are shareable across threads") {
  auto s = path3();
  std::vector<std::thread> threads;
  std::atomic<int> sum{0};
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&] {
      sum += static_cast<int>(s->ball_topology().opens().size());
      sum += static_cast<int>(s->dual_ball_topology().opens().size());
      sum += s->d_preorder().leq(0, 0) ? 1 : 0;
    });
  for (auto& t : threads) t.join();
  CHECK(sum.load() ==
        8 * (static_cast<int>(s->ball_topology().opens().size()) +
             static_cast<int>(s->dual_ball_topology().opens().size()) + 1));
}

TEST_CASE("dual spaces need commutativity") {
  auto s = x3();
  CHECK_NOTHROW(dual_space(s));
  auto rel = relations(2);
  std::vector<QElem> d = {rel->unit(), rel->bottom(), rel->bottom(),
                          rel->unit()};
  auto ncs = make_space({"a", "b"}, rel, d);
  CHECK_THROWS_AS(dual_space(ncs), Error);
}
