#include <stdexcept>

#include "toposcan/workbench.hpp"

namespace toposcan {

namespace {

FiniteCategory must_validate(const RawCategory& raw) {
  CategoryValidation v = validate_category(raw);
  if (!v.ok()) throw std::logic_error("fixture failed validation: " + v.violations.front().kind);
  return *v.category;
}

}  // namespace

FiniteCategory fixture_one() {
  RawCategory raw;
  raw.objects = {"*"};
  raw.arrows = {{"id", "*", "*"}};
  raw.identities = {{"*", "id"}};
  return must_validate(raw);
}

FiniteCategory fixture_arrow() {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.arrows = {{"ida", "a", "a"}, {"idb", "b", "b"}, {"u", "a", "b"}};
  raw.identities = {{"a", "ida"}, {"b", "idb"}};
  return must_validate(raw);
}

FiniteCategory fixture_pair() {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.arrows = {{"ida", "a", "a"}, {"idb", "b", "b"}, {"f", "a", "b"}, {"g", "a", "b"}};
  raw.identities = {{"a", "ida"}, {"b", "idb"}};
  return must_validate(raw);
}

FiniteCategory fixture_span() {
  RawCategory raw;
  raw.objects = {"a", "b", "t"};
  raw.arrows = {{"ida", "a", "a"}, {"idb", "b", "b"}, {"idt", "t", "t"},
                {"p", "a", "t"},  {"q", "b", "t"}};
  raw.identities = {{"a", "ida"}, {"b", "idb"}, {"t", "idt"}};
  return must_validate(raw);
}

FiniteCategory fixture_d2() {
  RawCategory raw;
  raw.objects = {"a", "b"};
  raw.arrows = {{"ida", "a", "a"}, {"idb", "b", "b"}};
  raw.identities = {{"a", "ida"}, {"b", "idb"}};
  return must_validate(raw);
}

FiniteCategory fixture_z2() {
  RawCategory raw;
  raw.objects = {"*"};
  raw.arrows = {{"e", "*", "*"}, {"s", "*", "*"}};
  raw.identities = {{"*", "e"}};
  raw.compose = {{"s", "s", "e"}};
  return must_validate(raw);
}

Site with_trivial_topology(FiniteCategory cat) {
  GrothendieckTopology top = trivial_topology(cat);
  return {std::move(cat), std::move(top)};
}

Site site_arrow_jb() {
  FiniteCategory cat = fixture_arrow();
  const ObjId b = cat.object_index("b");
  const ArrId u = cat.arrow_index("u");
  std::vector<std::vector<Sieve>> coverage(cat.num_objects());
  coverage[b].push_back(generate(cat, b, {u}));
  GrothendieckTopology top = saturate(cat, coverage);
  return {std::move(cat), std::move(top)};
}

Site site_one_degenerate() {
  FiniteCategory cat = fixture_one();
  std::vector<std::vector<Sieve>> coverage(1);
  coverage[0].push_back(empty_sieve(0));
  GrothendieckTopology top = saturate(cat, coverage);
  return {std::move(cat), std::move(top)};
}

GroupPresentation z2_presentation(bool flip_ss_to_s) {
  GroupPresentation g;
  g.raw.objects = {"*"};
  g.raw.arrows = {{"e", "*", "*"}, {"s", "*", "*"}};
  g.raw.identities = {{"*", "e"}};
  g.raw.compose = {{"s", "s", flip_ss_to_s ? "s" : "e"}};
  g.inverses = {{"e", "e"}, {"s", "s"}};
  return g;
}

std::vector<Violation> validate_group_presentation(const GroupPresentation& g) {
  CategoryValidation v = validate_category(g.raw);
  if (!v.ok()) return v.violations;
  const FiniteCategory& cat = *v.category;
  std::vector<Violation> out;
  if (cat.num_objects() != 1)
    out.push_back({"not a group presentation", "more than one object"});
  const ArrId e = cat.identity[0];
  for (const Arrow& a : cat.arrows) {
    const auto it = g.inverses.find(a.name);
    if (it == g.inverses.end()) {
      out.push_back({"missing inverse", a.name});
      continue;
    }
    const ArrId x = cat.arrow_index(a.name);
    const ArrId xi = cat.arrow_index(it->second);
    if (xi < 0) {
      out.push_back({"missing inverse", it->second});
      continue;
    }
    if (cat.compose(x, xi) != e || cat.compose(xi, x) != e)
      out.push_back({"identity law / inverse table inconsistent with declared composition",
                     a.name + " with declared inverse " + it->second});
  }
  return out;
}

}  // namespace toposcan
