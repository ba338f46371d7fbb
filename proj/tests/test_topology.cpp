#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_support.hpp"

using namespace toposcan;
using tst::brute_ideals;
using tst::sieve_of;

namespace {

GrothendieckTopology jb() { return site_arrow_jb().top; }

}  // namespace

TEST_CASE("validate_topology on the examples") {
  const FiniteCategory pair = fixture_pair();
  CHECK(validate_topology(pair, trivial_topology(pair).covers).ok());

  const FiniteCategory arrow = fixture_arrow();
  const ObjId a = arrow.object_index("a"), b = arrow.object_index("b");
  std::vector<std::vector<Sieve>> covers(2);
  covers[a] = {maximal_sieve(arrow, a)};
  covers[b] = {maximal_sieve(arrow, b), sieve_of(arrow, b, {"u"})};
  const TopologyValidation good = validate_topology(arrow, covers);
  REQUIRE(good.ok());
  CHECK(*good.topology == jb());

  std::vector<std::vector<Sieve>> bad(2);
  bad[a] = {maximal_sieve(arrow, a)};
  bad[b] = {sieve_of(arrow, b, {"u"})};
  const TopologyValidation broken = validate_topology(arrow, bad);
  REQUIRE(!broken.ok());
  CHECK(broken.violations.front().kind == "maximality violated");
}

TEST_CASE("validated topologies satisfy the axioms under direct loops") {
  const Site site = site_arrow_jb();
  for (ObjId c = 0; c < site.cat.num_objects(); ++c)
    for (const Sieve& s : site.top.covers[c]) {
      for (ArrId h : site.cat.arrows_into(c)) CHECK(site.top.contains(pullback(site.cat, h, s)));
      for (const Sieve& r : all_sieves_on(site.cat, c)) {
        bool locally = true;
        for (ArrId f : sieve_members(s))
          if (!site.top.contains(pullback(site.cat, f, r))) locally = false;
        if (locally) CHECK(site.top.contains(r));
      }
    }
}

TEST_CASE("saturate on the examples") {
  const FiniteCategory one = fixture_one();
  CHECK(saturate(one, {}) == trivial_topology(one));
  const Site degenerate = site_one_degenerate();
  CHECK(degenerate.top.covers[0].size() == 2);

  const FiniteCategory arrow = fixture_arrow();
  const ObjId b = arrow.object_index("b");
  std::vector<std::vector<Sieve>> coverage(2);
  coverage[b] = {sieve_of(arrow, b, {"u"})};
  CHECK(saturate(arrow, coverage) == jb());
}

TEST_CASE("closure examples") {
  const Site site = site_arrow_jb();
  const ObjId b = site.cat.object_index("b");
  CHECK(closure(site.cat, site.top, sieve_of(site.cat, b, {"u"})) == maximal_sieve(site.cat, b));

  const FiniteCategory pair = fixture_pair();
  const GrothendieckTopology triv = trivial_topology(pair);
  for (ObjId c = 0; c < pair.num_objects(); ++c)
    for (const Sieve& s : all_sieves_on(pair, c)) CHECK(closure(pair, triv, s) == s);

  for (ObjId c = 0; c < site.cat.num_objects(); ++c)
    CHECK(closure(site.cat, site.top, maximal_sieve(site.cat, c)) == maximal_sieve(site.cat, c));
}

TEST_CASE("closure is a closure operator and commutes with pullback") {
  for (const FiniteCategory& cat : enumerate_categories_list({2, 4}, false)) {
    for (const GrothendieckTopology& top : enumerate_topologies(cat))
      for (ObjId c = 0; c < cat.num_objects(); ++c)
        for (const Sieve& s : all_sieves_on(cat, c)) {
          const Sieve cl = closure(cat, top, s);
          CHECK(sieve_subset(s, cl));
          CHECK(closure(cat, top, cl) == cl);
          for (const Sieve& t : all_sieves_on(cat, c))
            if (sieve_subset(s, t)) CHECK(sieve_subset(cl, closure(cat, top, t)));
          for (ArrId h : cat.arrows_into(c))
            CHECK(pullback(cat, h, cl) == closure(cat, top, pullback(cat, h, s)));
          CHECK(is_covering(cat, top, s) == (cl == maximal_sieve(cat, c)));
          CHECK(is_covering(cat, top, s) == top.contains(s));
        }
  }
}

TEST_CASE("density") {
  const Site site = site_arrow_jb();
  const ObjId b = site.cat.object_index("b");
  CHECK(is_dense_in(site.cat, site.top, sieve_of(site.cat, b, {"u"}), maximal_sieve(site.cat, b)));

  const FiniteCategory pair = fixture_pair();
  const GrothendieckTopology triv = trivial_topology(pair);
  for (ObjId c = 0; c < pair.num_objects(); ++c)
    for (const Sieve& s : all_sieves_on(pair, c)) {
      CHECK(is_dense_in(pair, triv, s, s));
      for (const Sieve& t : all_sieves_on(pair, c))
        if (sieve_subset(t, s)) CHECK(is_dense_in(pair, triv, t, s) == (t == s));
    }
  CHECK_THROWS_AS(
      is_dense_in(site.cat, site.top, maximal_sieve(site.cat, b), sieve_of(site.cat, b, {"u"})),
      std::invalid_argument);
}

TEST_CASE("j_ideals on the examples") {
  const FiniteCategory arrow = fixture_arrow();
  const ObjId a = arrow.object_index("a"), b = arrow.object_index("b");
  const uint32_t bit_a = uint32_t{1} << a, bit_b = uint32_t{1} << b;

  const JIdealList triv = j_ideals(arrow, trivial_topology(arrow));
  REQUIRE(triv.ideals.size() == 3);
  CHECK(triv.ideals[0].object_bits == 0);
  CHECK(triv.ideals[1].object_bits == bit_a);
  CHECK(triv.ideals[2].object_bits == (bit_a | bit_b));
  CHECK(triv.zero.object_bits == 0);

  const JIdealList withjb = j_ideals(arrow, jb());
  REQUIRE(withjb.ideals.size() == 2);
  CHECK(withjb.ideals[0].object_bits == 0);
  CHECK(withjb.ideals[1].object_bits == (bit_a | bit_b));

  const Site degenerate = site_one_degenerate();
  const JIdealList deg = j_ideals(degenerate.cat, degenerate.top);
  REQUIRE(deg.ideals.size() == 1);
  CHECK(deg.ideals[0].object_bits == 1);
  CHECK(deg.zero.object_bits == 1);
}

TEST_CASE("j_ideals equals the brute enumeration and the zero ideal is an ideal") {
  for (const FiniteCategory& cat : enumerate_categories_list({2, 4}, false))
    for (const GrothendieckTopology& top : enumerate_topologies(cat)) {
      const JIdealList list = j_ideals(cat, top);
      const auto brute = brute_ideals(cat, top);
      REQUIRE(list.ideals.size() == brute.size());
      for (size_t i = 0; i < brute.size(); ++i) CHECK(list.ideals[i].object_bits == brute[i]);
      bool zero_found = false;
      for (const JIdeal& ideal : list.ideals)
        if (ideal == list.zero) zero_found = true;
      CHECK(zero_found);
      // The defining implication, restated on the output.
      for (const JIdeal& ideal : list.ideals)
        for (ObjId c = 0; c < cat.num_objects(); ++c)
          for (const Sieve& s : top.covers[c]) {
            bool domains_in = true;
            for (ArrId f : sieve_members(s))
              if (!ideal.contains(cat.dom(f))) domains_in = false;
            if (domains_in) CHECK(ideal.contains(c));
          }
    }
}

TEST_CASE("saturation is a fixpoint on validated topologies") {
  for (const FiniteCategory& cat : {fixture_one(), fixture_arrow(), fixture_pair()})
    for (const GrothendieckTopology& top : enumerate_topologies(cat))
      CHECK(saturate(cat, top.covers) == top);
}

TEST_CASE("trivial topology is subcanonical on the corpus") {
  for (const FiniteCategory& cat : enumerate_categories_list({2, 4}, false)) {
    SiteContext ctx(with_trivial_topology(cat));
    CHECK(ctx.subcanonical());
  }
}
