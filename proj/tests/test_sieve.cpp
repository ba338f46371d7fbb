#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_support.hpp"

using namespace toposcan;
using tst::brute_close;
using tst::members_of;
using tst::sieve_of;

TEST_CASE("generate on the named fixtures") {
  const FiniteCategory arrow = fixture_arrow();
  const ObjId b = arrow.object_index("b");
  const ArrId u = arrow.arrow_index("u"), idb = arrow.arrow_index("idb");
  CHECK(generate(arrow, b, {idb}) == maximal_sieve(arrow, b));
  CHECK(members_of(generate(arrow, b, {u})) == std::set<ArrId>{u});

  const FiniteCategory z2 = fixture_z2();
  CHECK(generate(z2, 0, {z2.arrow_index("s")}) == maximal_sieve(z2, 0));

  CHECK(generate(arrow, b, {}).empty());
  CHECK_THROWS_AS(generate(arrow, arrow.object_index("a"), {u}), std::invalid_argument);
}

TEST_CASE("pullback on the arrow fixture") {
  const FiniteCategory arrow = fixture_arrow();
  const ObjId a = arrow.object_index("a"), b = arrow.object_index("b");
  const ArrId u = arrow.arrow_index("u"), idb = arrow.arrow_index("idb");
  CHECK(pullback(arrow, u, maximal_sieve(arrow, b)) == maximal_sieve(arrow, a));
  CHECK(pullback(arrow, idb, sieve_of(arrow, b, {"u"})) == sieve_of(arrow, b, {"u"}));

  // Enumerate all g with u∘g ∈ {u}: exactly the identity of a.
  std::set<ArrId> expected;
  for (ArrId g : arrow.arrows_into(a))
    if (arrow.compose(u, g) == u) expected.insert(g);
  CHECK(members_of(pullback(arrow, u, sieve_of(arrow, b, {"u"}))) == expected);
  CHECK(pullback(arrow, u, sieve_of(arrow, b, {"u"})) == maximal_sieve(arrow, a));

  CHECK_THROWS_AS(pullback(arrow, u, maximal_sieve(arrow, a)), std::invalid_argument);
}

TEST_CASE("lattice operations") {
  const FiniteCategory pair = fixture_pair();
  const ObjId b = pair.object_index("b");
  const Sieve f = sieve_of(pair, b, {"f"}), g = sieve_of(pair, b, {"g"});
  CHECK(sieve_union(f, g) == sieve_of(pair, b, {"f", "g"}));
  CHECK(sieve_intersection(f, g).empty());
  CHECK(sieve_subset(sieve_of(fixture_arrow(), 1, {"u"}), maximal_sieve(fixture_arrow(), 1)));
  CHECK_THROWS_AS(sieve_union(f, sieve_of(pair, pair.object_index("a"), {})), std::invalid_argument);
}

TEST_CASE("generate matches fixpoint closure and is a closure operator") {
  for (const FiniteCategory& cat : enumerate_categories_list({2, 4}, false)) {
    for (ObjId c = 0; c < cat.num_objects(); ++c) {
      const auto& incoming = cat.arrows_into(c);
      for (size_t mask = 0; mask < (size_t{1} << incoming.size()); ++mask) {
        std::set<ArrId> gens;
        uint64_t bits = 0;
        for (size_t i = 0; i < incoming.size(); ++i)
          if (mask >> i & 1) {
            gens.insert(incoming[i]);
            bits |= uint64_t{1} << incoming[i];
          }
        const Sieve s = generate_mask(cat, c, bits);
        CHECK(members_of(s) == brute_close(cat, c, gens));
        CHECK(is_sieve(cat, s));
        // Extensive, idempotent, monotone.
        CHECK((bits & ~s.bits) == 0);
        CHECK(generate_mask(cat, c, s.bits) == s);
        CHECK(sieve_subset(generate_mask(cat, c, bits & (bits - 1)), s));
      }
    }
  }
}

TEST_CASE("pullback functoriality and the membership identity, exhaustively") {
  for (const FiniteCategory& cat : enumerate_categories_list({2, 4}, false)) {
    for (ObjId c = 0; c < cat.num_objects(); ++c)
      for (const Sieve& s : all_sieves_on(cat, c)) {
        for (ArrId h : cat.arrows_into(c)) {
          const Sieve hs = pullback(cat, h, s);
          CHECK(is_sieve(cat, hs));
          for (ArrId k : cat.arrows_into(cat.dom(h)))
            CHECK(pullback(cat, cat.compose(h, k), s) == pullback(cat, k, hs));
        }
        for (ArrId f : cat.arrows_into(c))
          CHECK(s.contains(f) == (pullback(cat, f, s) == maximal_sieve(cat, cat.dom(f))));
      }
  }
}

TEST_CASE("sieve presheaf and inclusion") {
  const FiniteCategory arrow = fixture_arrow();
  const ObjId a = arrow.object_index("a"), b = arrow.object_index("b");
  const Sieve s = sieve_of(arrow, b, {"u"});
  const Presheaf p = sieve_presheaf(arrow, s);
  CHECK(check_presheaf_laws(arrow, p).empty());
  CHECK(p.card[a] == 1);
  CHECK(p.card[b] == 0);
  const PresheafMorphism incl = sieve_inclusion(arrow, s);
  CHECK(is_natural(arrow, p, yoneda(arrow, b), incl));
}
