#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace toposcan {

using ObjId = int;
using ArrId = int;

// Arrows and objects are index-based; names are kept for I/O and witnesses.
struct Arrow {
  std::string name;
  ObjId dom = -1;
  ObjId cod = -1;
};

// A finite category with an explicit total composition table.
// Objects and arrows are canonically ordered; all downstream structures
// (sieves, topologies, reports) inherit determinism from this ordering.
class FiniteCategory {
public:
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<ArrId> identity;   // per object
  std::vector<int16_t> table;    // table[g*m+f] = g∘f, or -1 if not composable

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }

  ObjId dom(ArrId f) const { return arrows[f].dom; }
  ObjId cod(ArrId f) const { return arrows[f].cod; }
  bool is_identity(ArrId f) const { return identity[arrows[f].dom] == f && arrows[f].dom == arrows[f].cod; }

  bool composable(ArrId g, ArrId f) const { return cod(f) == dom(g); }
  // g∘f for f: a -> b, g: b -> c.
  ArrId compose(ArrId g, ArrId f) const { return table[static_cast<size_t>(g) * arrows.size() + f]; }

  const std::vector<ArrId>& arrows_into(ObjId c) const { return into_[c]; }
  const std::vector<ArrId>& arrows_out_of(ObjId c) const { return out_[c]; }
  const std::vector<ArrId>& hom(ObjId d, ObjId c) const { return hom_[d][c]; }

  // Rebuilds the derived lookup tables; must be called after the raw fields
  // are filled in. validate_category does this for file input.
  void finalize();

  ObjId object_index(const std::string& name) const;
  ArrId arrow_index(const std::string& name) const;

private:
  std::vector<std::vector<ArrId>> into_;
  std::vector<std::vector<ArrId>> out_;
  std::vector<std::vector<std::vector<ArrId>>> hom_;
};

// Raw (unvalidated) category description, mirroring the site file format.
struct RawArrow {
  std::string id, dom, cod;
};
struct RawComposite {
  std::string g, f, result;
};
struct RawCategory {
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;
  std::map<std::string, std::string> identities;  // object -> arrow id
  std::vector<RawComposite> compose;
};

struct Violation {
  std::string kind;
  std::string detail;
};

struct CategoryValidation {
  std::optional<FiniteCategory> category;
  std::vector<Violation> violations;
  bool ok() const { return category.has_value(); }
};

// Checks every category law exhaustively and reports all violations with
// witnesses. Composition entries involving identities may be omitted in the
// raw description (they are forced by the identity laws); entries for
// non-identity composable pairs are required.
CategoryValidation validate_category(const RawCategory& raw);

RawCategory to_raw(const FiniteCategory& cat);

// True iff every hom-set has at most one arrow.
bool is_preorder(const FiniteCategory& cat);

// A finite-set-valued presheaf on a finite category. Element sets are
// 0..card[c]-1; action[f] maps value(cod f) -> value(dom f).
struct Presheaf {
  std::vector<int> card;
  std::vector<std::vector<int>> action;

  int value_card(ObjId c) const { return card[c]; }
  int act(ArrId f, int x) const { return action[f][x]; }
};

// A morphism of presheaves: component functions per object.
struct PresheafMorphism {
  std::vector<std::vector<int>> map;  // map[c][x] in target's value(c)
};

struct RawPresheaf {
  std::map<std::string, std::vector<std::string>> value;               // object -> element names
  std::map<std::string, std::map<std::string, std::string>> action;    // arrow -> (element of cod -> element of dom)
};

struct PresheafValidation {
  std::optional<Presheaf> presheaf;
  std::vector<Violation> violations;
  bool ok() const { return presheaf.has_value(); }
};

PresheafValidation validate_presheaf(const FiniteCategory& cat, const RawPresheaf& raw);

// The representable presheaf C(-, c); elements of value(d) are the arrows
// d -> c in the order of FiniteCategory::hom(d, c).
Presheaf yoneda(const FiniteCategory& cat, ObjId c);

// Exhaustive functoriality check (used by validate_presheaf and tests).
std::vector<Violation> check_presheaf_laws(const FiniteCategory& cat, const Presheaf& p);

bool is_identity_morphism(const Presheaf& p, const PresheafMorphism& m);
PresheafMorphism compose_morphisms(const PresheafMorphism& second, const PresheafMorphism& first);
bool is_natural(const FiniteCategory& cat, const Presheaf& p, const Presheaf& q, const PresheafMorphism& m);

// All natural transformations p -> q, in a deterministic order.
std::vector<PresheafMorphism> natural_transformations(const FiniteCategory& cat, const Presheaf& p,
                                                      const Presheaf& q);

// Natural isomorphism test by per-object cardinality plus backtracking on
// the action tables.
bool presheaves_isomorphic(const FiniteCategory& cat, const Presheaf& p, const Presheaf& q);

}  // namespace toposcan
