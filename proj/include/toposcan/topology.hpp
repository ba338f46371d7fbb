#pragma once

#include <optional>
#include <vector>

#include "toposcan/fincat.hpp"
#include "toposcan/sieve.hpp"

namespace toposcan {

// A Grothendieck topology, stored extensionally: the full list of covering
// sieves per object, sorted by bit pattern. At desk scale the number of
// sieves is small and extensional storage makes axiom checks and
// enumeration trivial.
struct GrothendieckTopology {
  std::vector<std::vector<Sieve>> covers;  // per object, sorted by bits

  bool contains(const Sieve& s) const;
  int total_sieves() const;

  friend bool operator==(const GrothendieckTopology&, const GrothendieckTopology&) = default;
};

GrothendieckTopology trivial_topology(const FiniteCategory& cat);

struct TopologyValidation {
  std::optional<GrothendieckTopology> topology;
  std::vector<Violation> violations;
  bool ok() const { return topology.has_value(); }
};

// Exhaustive check of maximality, stability and transitivity; violations
// carry (object, sieve, arrow) witnesses.
TopologyValidation validate_topology(const FiniteCategory& cat,
                                     const std::vector<std::vector<Sieve>>& raw_covers);

// Smallest Grothendieck topology whose covers include the coverage;
// fixpoint of adding maximal sieves, pullbacks, and transitivity
// consequences. Always terminates: finitely many sieves.
GrothendieckTopology saturate(const FiniteCategory& cat,
                              const std::vector<std::vector<Sieve>>& coverage);

// c_J(S) = {f into c | f*(S) ∈ J(dom f)}.
Sieve closure(const FiniteCategory& cat, const GrothendieckTopology& top, const Sieve& s);

// S is J-covering iff closure(S) is maximal, equivalently S ∈ J(c) for a
// validated topology; both routes are implemented and cross-checked.
bool is_covering(const FiniteCategory& cat, const GrothendieckTopology& top, const Sieve& s);

// T ⊆ S is c_J-dense in S: every f ∈ S pulls T back to a covering sieve.
bool is_dense_in(const FiniteCategory& cat, const GrothendieckTopology& top, const Sieve& t,
                 const Sieve& s);

// A J-ideal: a downward-closed, J-closed set of objects (the subterminal
// objects of the sheaf topos).
struct JIdeal {
  uint32_t object_bits = 0;
  bool contains(ObjId c) const { return object_bits >> c & 1; }
  friend bool operator==(const JIdeal&, const JIdeal&) = default;
};

struct JIdealList {
  std::vector<JIdeal> ideals;  // canonically ordered by bit pattern
  JIdeal zero;                 // {c | ∅ ∈ J(c)}
};

JIdealList j_ideals(const FiniteCategory& cat, const GrothendieckTopology& top);

// Bundles a category with a topology on it.
struct Site {
  FiniteCategory cat;
  GrothendieckTopology top;
};

}  // namespace toposcan
