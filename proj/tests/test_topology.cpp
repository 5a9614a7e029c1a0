#include <doctest.h>

#include <set>

#include "qmet/topology.hpp"

using namespace qmet;

TEST_CASE("generation from a subbase") {
  auto sier = FinTopology::generate(2, {DynBitset::single(2, 0)});
  CHECK(sier.opens().size() == 3);
  CHECK(sier.is_open(DynBitset::single(2, 0)));
  CHECK(!sier.is_open(DynBitset::single(2, 1)));

  CHECK(FinTopology::generate(3, {}) == FinTopology::indiscrete(3));
  CHECK(FinTopology::discrete(3).opens().size() == 8);

  // idempotent
  CHECK(FinTopology::generate(2, sier.opens()) == sier);

  // cap honored
  CHECK_THROWS_AS(FinTopology::generate(5,
                                        {DynBitset::single(5, 0),
                                         DynBitset::single(5, 1),
                                         DynBitset::single(5, 2)},
                                        4),
                  Error);
}

TEST_CASE("specialization and alexandrov") {
  auto sier = FinTopology::generate(2, {DynBitset::single(2, 0)});
  auto spec = sier.specialization();
  CHECK(spec.leq(1, 0));
  CHECK(!spec.leq(0, 1));
  CHECK(sier.is_t0());

  Preorder disc(3);
  CHECK(alexandrov(disc) == FinTopology::discrete(3));

  // roundtrip on every preorder over 4 points given by random-ish relations
  for (std::uint64_t bits = 0; bits < 64; ++bits) {
    Preorder pre(3);
    std::size_t k = 0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) continue;
        if ((bits >> k) & 1) pre.set(i, j);
        ++k;
      }
    pre.transitive_close();
    CHECK(alexandrov(pre).specialization() == pre);
  }
}

TEST_CASE("closure and interior") {
  auto ind = FinTopology::indiscrete(3);
  CHECK(ind.closure(DynBitset::single(3, 0)) == DynBitset::full(3));
  CHECK(ind.closure(DynBitset(3)) == DynBitset(3));
  CHECK(ind.interior(DynBitset::single(3, 0)) == DynBitset(3));

  auto disc = FinTopology::discrete(2);
  CHECK(disc.closure(DynBitset::single(2, 0)) == DynBitset::single(2, 0));
  CHECK(!FinTopology::indiscrete(2).is_t0());
}

TEST_CASE("continuity is preimage openness") {
  auto sier = FinTopology::generate(2, {DynBitset::single(2, 0)});
  auto disc = FinTopology::discrete(2);
  std::vector<std::size_t> id = {0, 1};
  CHECK(is_continuous(id, disc, sier));  // finer to coarser
  CHECK(!is_continuous(id, sier, disc));
  std::vector<std::size_t> swap = {1, 0};
  CHECK(!is_continuous(swap, sier, sier));
}

TEST_CASE("topology enumeration") {
  auto t2 = all_topologies(2);
  CHECK(t2.size() == 4);
  auto t3 = all_topologies(3);
  CHECK(t3.size() == 29);
  auto g3 = all_topologies_by_generation(3);
  CHECK(g3.size() == t3.size());
  std::set<FinTopology> a(t3.begin(), t3.end()), b(g3.begin(), g3.end());
  CHECK(a == b);
  CHECK_THROWS_AS(all_topologies(5), Error);
}
