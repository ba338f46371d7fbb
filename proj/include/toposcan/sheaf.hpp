#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "toposcan/fincat.hpp"
#include "toposcan/sieve.hpp"
#include "toposcan/topology.hpp"

namespace toposcan {

// A matching family for P over a sieve S: one element of P(dom f) per
// member f, compatible with precomposition. Stored as a value vector
// aligned with sieve_members(S).
using FamilyChoice = std::vector<int>;

// All matching families for p over s, in a deterministic order.
std::vector<FamilyChoice> matching_families(const FiniteCategory& cat, const Presheaf& p,
                                            const Sieve& s);

// The family induced by an element: f ↦ p(f)(x).
FamilyChoice restriction_family(const FiniteCategory& cat, const Presheaf& p, const Sieve& s, int x);

struct SheafConditionFailure {
  ObjId object;
  Sieve sieve;
};

// Sheaf condition: for every covering sieve the canonical map from values to
// matching families is a bijection. Returns the first failing (c, S).
std::optional<SheafConditionFailure> sheaf_condition_failure(const FiniteCategory& cat,
                                                             const GrothendieckTopology& top,
                                                             const Presheaf& p);
bool is_sheaf(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& p);

// One application of the plus construction, keeping enough structure to act
// on morphisms: per object, the families over each covering sieve and the
// colimit class of each (cover, family) node.
struct PlusData {
  Presheaf result;
  PresheafMorphism unit;  // P -> P⁺
  // families[c][cover][k]: k-th matching family over top.covers[c][cover].
  std::vector<std::vector<std::vector<FamilyChoice>>> families;
  // node_class[c][cover][k]: element of result(c) for that node.
  std::vector<std::vector<std::vector<int>>> node_class;
  // Canonical representative node per element of result(c).
  std::vector<std::vector<std::pair<int, int>>> representative;
};

PlusData plus(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& p);

// P⁺ -> Q⁺ induced by a morphism P -> Q.
PresheafMorphism plus_map(const FiniteCategory& cat, const GrothendieckTopology& top,
                          const PresheafMorphism& base, const PlusData& src, const PlusData& dst);

// Two plus levels: the sheafification pyramid for one presheaf.
struct SheafifyData {
  PlusData once;
  PlusData twice;
  const Presheaf& sheaf() const { return twice.result; }
  PresheafMorphism unit() const;  // P -> a_J(P)
};

// a_J = plus applied twice; the result is checked to satisfy the sheaf
// condition.
SheafifyData sheafify(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& p);

// a_J applied to a morphism, given the pyramids of source and target.
PresheafMorphism sheafify_map(const FiniteCategory& cat, const GrothendieckTopology& top,
                              const PresheafMorphism& base, const SheafifyData& src,
                              const SheafifyData& dst);

Presheaf terminal_presheaf(const FiniteCategory& cat);
Presheaf initial_presheaf(const FiniteCategory& cat);

// Per-site immutable input with lazily built caches. Instances are cheap to
// construct and single-threaded; concurrent sweeps use one context per site.
class SiteContext {
 public:
  explicit SiteContext(Site site);

  const Site& site() const { return site_; }
  const FiniteCategory& cat() const { return site_.cat; }
  const GrothendieckTopology& top() const { return site_.top; }

  bool degenerate(ObjId c) const { return degenerate_[c]; }
  bool zero_arrow(ArrId f) const { return degenerate_[cat().dom(f)]; }
  uint64_t zero_arrow_mask(ObjId c) const;  // zero arrows into c

  const std::vector<Sieve>& all_sieves(ObjId c);
  const std::vector<Sieve>& closed_sieves(ObjId c);
  Sieve closure(const Sieve& s);
  bool covering(const Sieve& s);
  bool is_closed(const Sieve& s);

  const JIdealList& ideals();

  // Sheafified representables and their functorial data.
  const SheafifyData& l_data(ObjId c);
  const Presheaf& l_object(ObjId c) { return l_data(c).sheaf(); }
  PresheafMorphism l_unit(ObjId c) { return l_data(c).unit(); }
  const PresheafMorphism& l_arrow(ArrId g);

  struct SieveSheaf {
    SheafifyData data;
    PresheafMorphism mono;  // a_J(S) -> l(cod S)
    const Presheaf& sheaf() const { return data.sheaf(); }
  };
  const SieveSheaf& sheaf_of_sieve(const Sieve& s);

  // l^S(g): l(dom g) -> a_J(S), for g ∈ S.
  PresheafMorphism l_into_sieve(const Sieve& s, ArrId g);

  const Presheaf& initial_sheaf();

  // Every representable is a sheaf.
  bool subcanonical();

  // l(f) factors through l(g) in the sheaf topos; f, g share a codomain.
  bool l_factors_through(ArrId f, ArrId g);

 private:
  Site site_;
  std::vector<char> degenerate_;
  std::vector<std::optional<std::vector<Sieve>>> all_sieves_;
  std::vector<std::optional<std::vector<Sieve>>> closed_sieves_;
  std::vector<std::map<uint64_t, uint64_t>> closure_memo_;
  std::optional<JIdealList> ideals_;
  std::vector<std::unique_ptr<SheafifyData>> l_;
  std::vector<std::unique_ptr<PresheafMorphism>> l_arrow_;
  std::map<std::pair<int, uint64_t>, std::unique_ptr<SieveSheaf>> sieve_sheaf_;
  std::optional<Presheaf> initial_;
  std::optional<bool> subcanonical_;
};

// a_J(S) ≅ 0, by the ideal formula: every member has a zero-covered domain.
bool is_zero_sieve(SiteContext& ctx, const Sieve& s);

// Independent route: sheafify the sieve presheaf and compare with the
// initial sheaf up to isomorphism. Used to cross-check the formula.
bool is_zero_sieve_by_sheafification(SiteContext& ctx, const Sieve& s);

// Lemma-style epimorphy test for a sieve on the sheaf a_J(S): R is presented
// by the set of members f ∈ S with l^S(f) ∈ R, and R is epimorphic iff that
// set has J-closure equal to S. Requires S J-closed and members ⊆ S.
bool sieve_on_sheaf_is_epimorphic(SiteContext& ctx, const Sieve& s, uint64_t members_bits);

// Subobjects of l(c), represented by the J-closed sieves on c.
const std::vector<Sieve>& subobjects_of_l(SiteContext& ctx, ObjId c);

// Independent subobject count: subpresheaves of l(c) that are sheaves.
int count_subsheaves(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& f);

}  // namespace toposcan
