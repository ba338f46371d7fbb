#pragma once

#include <cstdint>
#include <vector>

#include "toposcan/fincat.hpp"

namespace toposcan {

// A sieve on an object: a right-composition-closed set of arrows into it,
// stored as a bit-set over the global arrow ordering. Bit-set storage gives
// canonical equality and cheap lattice operations.
struct Sieve {
  ObjId codomain = -1;
  uint64_t bits = 0;

  bool contains(ArrId f) const { return bits >> f & 1; }
  bool empty() const { return bits == 0; }
  int size() const { return __builtin_popcountll(bits); }

  friend bool operator==(const Sieve&, const Sieve&) = default;
  friend auto operator<=>(const Sieve& a, const Sieve& b) {
    if (auto c = a.codomain <=> b.codomain; c != 0) return c;
    return a.bits <=> b.bits;
  }
};

Sieve empty_sieve(ObjId c);
Sieve maximal_sieve(const FiniteCategory& cat, ObjId c);
bool is_maximal(const FiniteCategory& cat, const Sieve& s);

// Smallest sieve on c containing the generators (all must have codomain c).
Sieve generate(const FiniteCategory& cat, ObjId c, const std::vector<ArrId>& generators);
Sieve generate_mask(const FiniteCategory& cat, ObjId c, uint64_t generator_bits);

// The principal sieve (f) = generate(cod f, {f}).
Sieve principal(const FiniteCategory& cat, ArrId f);

// h*(S) = {g | h∘g ∈ S} on dom(h); requires cod(h) = S.codomain.
Sieve pullback(const FiniteCategory& cat, ArrId h, const Sieve& s);

Sieve sieve_union(const Sieve& a, const Sieve& b);
Sieve sieve_intersection(const Sieve& a, const Sieve& b);
bool sieve_subset(const Sieve& a, const Sieve& b);

bool is_sieve(const FiniteCategory& cat, const Sieve& s);

std::vector<ArrId> sieve_members(const Sieve& s);

// Every sieve on c, canonically ordered by bit pattern. Enumeration closes
// each subset of the arrows into c; feasible at desk scale.
std::vector<Sieve> all_sieves_on(const FiniteCategory& cat, ObjId c);

// The sieve S as a presheaf: value(d) = {f ∈ S | dom f = d} in ascending
// arrow order, with action by precomposition.
Presheaf sieve_presheaf(const FiniteCategory& cat, const Sieve& s);

// The inclusion of sieve_presheaf(s) into yoneda(cat, s.codomain).
PresheafMorphism sieve_inclusion(const FiniteCategory& cat, const Sieve& s);

}  // namespace toposcan
