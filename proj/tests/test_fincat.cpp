#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_support.hpp"

using namespace toposcan;

TEST_CASE("arrow fixture validates") {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.arrows = {{"ida", "a", "a"}, {"idb", "b", "b"}, {"u", "a", "b"}};
  raw.identities = {{"a", "ida"}, {"b", "idb"}};
  const CategoryValidation v = validate_category(raw);
  REQUIRE(v.ok());
  CHECK(v.category->num_objects() == 2);
  CHECK(v.category->num_arrows() == 3);
  const ArrId u = v.category->arrow_index("u");
  CHECK(v.category->compose(v.category->arrow_index("idb"), u) == u);
}

TEST_CASE("z2 fixture validates as a group table") {
  const CategoryValidation v = validate_category(z2_presentation(false).raw);
  REQUIRE(v.ok());
  const FiniteCategory& cat = *v.category;
  const ArrId s = cat.arrow_index("s");
  CHECK(cat.compose(s, s) == cat.arrow_index("e"));
  CHECK(validate_group_presentation(z2_presentation(false)).empty());
}

TEST_CASE("z2 with s*s=s: lawful as a category, rejected as a group presentation") {
  // The flipped table is the two-element idempotent monoid, so plain
  // category validation accepts it; the declared inverse table is what it
  // contradicts.
  const GroupPresentation flipped = z2_presentation(true);
  CHECK(validate_category(flipped.raw).ok());
  const auto violations = validate_group_presentation(flipped);
  REQUIRE(!violations.empty());
  CHECK(violations.front().kind ==
        "identity law / inverse table inconsistent with declared composition");
}

TEST_CASE("validation reports broken laws with witnesses") {
  SUBCASE("missing identity") {
    RawCategory raw;
    raw.objects = {"a"};
    raw.arrows = {{"ida", "a", "a"}};
    const CategoryValidation v = validate_category(raw);
    REQUIRE(!v.ok());
    CHECK(v.violations.front().kind == "missing identity");
  }
  SUBCASE("partial composition table") {
    RawCategory raw;
    raw.objects = {"a"};
    raw.arrows = {{"e", "a", "a"}, {"s", "a", "a"}};
    raw.identities = {{"a", "e"}};
    const CategoryValidation v = validate_category(raw);
    REQUIRE(!v.ok());
    CHECK(v.violations.front().kind == "partial composition table");
  }
  SUBCASE("associativity failure") {
    // Three-element table with (s.s).t != s.(s.t).
    RawCategory raw;
    raw.objects = {"a"};
    raw.arrows = {{"e", "a", "a"}, {"s", "a", "a"}, {"t", "a", "a"}};
    raw.identities = {{"a", "e"}};
    raw.compose = {{"s", "s", "e"}, {"s", "t", "t"}, {"t", "s", "s"}, {"t", "t", "e"}};
    const CategoryValidation v = validate_category(raw);
    REQUIRE(!v.ok());
    bool found = false;
    for (const Violation& violation : v.violations)
      if (violation.kind == "associativity failure") found = true;
    CHECK(found);
  }
  SUBCASE("identity law conflicts with a declared entry") {
    RawCategory raw;
    raw.objects = {"a"};
    raw.arrows = {{"e", "a", "a"}, {"s", "a", "a"}};
    raw.identities = {{"a", "e"}};
    raw.compose = {{"s", "s", "e"}, {"e", "s", "e"}};
    const CategoryValidation v = validate_category(raw);
    REQUIRE(!v.ok());
    CHECK(v.violations.front().kind == "identity law");
  }
}

TEST_CASE("validate_category is idempotent on fixtures") {
  for (const FiniteCategory& cat : {fixture_one(), fixture_arrow(), fixture_pair(), fixture_span(),
                                    fixture_d2(), fixture_z2()}) {
    const CategoryValidation again = validate_category(to_raw(cat));
    REQUIRE(again.ok());
    CHECK(categories_isomorphic(cat, *again.category));
  }
}

TEST_CASE("is_preorder") {
  CHECK(is_preorder(fixture_arrow()));
  CHECK(!is_preorder(fixture_pair()));
  CHECK(!is_preorder(fixture_z2()));
  CHECK(is_preorder(fixture_d2()));
  CHECK(is_preorder(FiniteCategory{}));
}

TEST_CASE("is_preorder equals the exhaustive parallel-arrow scan on a corpus") {
  for (const FiniteCategory& cat : enumerate_categories_list({2, 4}, false)) {
    bool parallel_pair = false;
    for (ArrId f = 0; f < cat.num_arrows() && !parallel_pair; ++f)
      for (ArrId g = f + 1; g < cat.num_arrows() && !parallel_pair; ++g)
        if (cat.dom(f) == cat.dom(g) && cat.cod(f) == cat.cod(g)) parallel_pair = true;
    CHECK(is_preorder(cat) == !parallel_pair);
  }
}

TEST_CASE("yoneda sizes follow hom-sets") {
  for (const FiniteCategory& cat : {fixture_arrow(), fixture_pair(), fixture_span(), fixture_z2()})
    for (ObjId c = 0; c < cat.num_objects(); ++c) {
      const Presheaf y = yoneda(cat, c);
      REQUIRE(check_presheaf_laws(cat, y).empty());
      for (ObjId d = 0; d < cat.num_objects(); ++d)
        CHECK(y.card[d] == static_cast<int>(cat.hom(d, c).size()));
    }
}

TEST_CASE("yoneda on arrow and z2") {
  const FiniteCategory arrow = fixture_arrow();
  const Presheaf yb = yoneda(arrow, arrow.object_index("b"));
  CHECK(yb.card[arrow.object_index("a")] == 1);
  CHECK(yb.card[arrow.object_index("b")] == 1);

  const FiniteCategory z2 = fixture_z2();
  const Presheaf ystar = yoneda(z2, 0);
  CHECK(ystar.card[0] == 2);
  // Action is right multiplication: e <- s under s, s <- e under s.
  const ArrId s = z2.arrow_index("s");
  const int epos = 0, spos = 1;  // hom order follows arrow order e, s
  CHECK(ystar.act(s, epos) == spos);
  CHECK(ystar.act(s, spos) == epos);
}

TEST_CASE("validate_presheaf catches non-functorial actions") {
  const FiniteCategory pair = fixture_pair();
  RawPresheaf raw;
  raw.value = {{"a", {"x", "y"}}, {"b", {"z"}}};
  raw.action = {{"ida", {{"x", "x"}, {"y", "y"}}},
                {"idb", {{"z", "z"}}},
                {"f", {{"z", "x"}}},
                {"g", {{"z", "y"}}}};
  CHECK(validate_presheaf(pair, raw).ok());

  RawPresheaf broken = raw;
  broken.action["ida"] = {{"x", "y"}, {"y", "x"}};
  const PresheafValidation v = validate_presheaf(pair, broken);
  REQUIRE(!v.ok());
  CHECK(v.violations.front().kind == "non-functorial action");
}

TEST_CASE("natural transformation machinery") {
  const FiniteCategory arrow = fixture_arrow();
  const Presheaf ya = yoneda(arrow, arrow.object_index("a"));
  const Presheaf yb = yoneda(arrow, arrow.object_index("b"));
  // Hom(y(a), y(b)) = y(b)(a) = {u}: exactly one transformation.
  CHECK(natural_transformations(arrow, ya, yb).size() == 1);
  CHECK(natural_transformations(arrow, yb, ya).empty());
  CHECK(presheaves_isomorphic(arrow, ya, ya));
  CHECK(!presheaves_isomorphic(arrow, ya, yb));
}
