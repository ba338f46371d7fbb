#pragma once

#include <string>

#include "json.hpp"
#include "toposcan/sheaf.hpp"

namespace toposcan {

// The five object properties decided directly in the sheaf topos. Subjects
// are subobjects of some l(c), represented by J-closed sieves (an object c
// itself stands for the maximal sieve on c).
enum class ObjectProperty {
  subterminal,
  atom,
  indecomposable,
  irreducible,
  well_supported,
};

enum class Invariant {
  localic,
  atomic,
  locally_connected,
  presheaf_type,
  well_supported,
};

const char* invariant_name(Invariant inv);

struct OracleVerdict {
  bool value = false;
  nlohmann::ordered_json witness;
};

// Decides the property of a_J(S) by direct computation in Sh(C, J):
// sheafification, subobject lattices, and the closure translation of
// epimorphic families. Deliberately independent of the criteria module.
bool oracle_object_property(SiteContext& ctx, const Sieve& subject, ObjectProperty kind);
bool oracle_object_property(SiteContext& ctx, ObjId subject, ObjectProperty kind);

// Topos-side verdict for an invariant: each l(c) must be covered by
// subobjects satisfying the matching object property (for presheaf type, by
// composites through irreducible principal images).
OracleVerdict oracle_invariant(SiteContext& ctx, Invariant inv);

bool revalidate_oracle(SiteContext& ctx, Invariant inv, const OracleVerdict& verdict);

}  // namespace toposcan
