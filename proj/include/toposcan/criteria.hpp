#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "toposcan/sheaf.hpp"

namespace toposcan {

using Json = nlohmann::ordered_json;

// A criterion outcome together with structured evidence. Witnesses are
// deterministic (first witness in canonical order) and re-checkable.
struct CriterionVerdict {
  bool value = false;
  Json witness;
};

// Localic criterion: every object carries J-ideals with matching families
// whose arrows generate a J-covering sieve.
CriterionVerdict is_localic(SiteContext& ctx);
bool is_localic_value(SiteContext& ctx);

// All compatible assignments d ∈ I ↦ (d -> c), in canonical order. An
// assignment is encoded per object, -1 outside the ideal.
std::vector<std::vector<ArrId>> ideal_matching_families(const FiniteCategory& cat, JIdeal ideal,
                                                        ObjId c);

// Localic shortcut for sites presented by a coverage and flagged geometric
// by the caller (the flag is trusted): some supplied covering family (or the
// identity family) consists of arrows equalizing every parallel pair into
// their domain.
CriterionVerdict localic_geometric_shortcut(const FiniteCategory& cat,
                                            const std::vector<std::vector<std::vector<ArrId>>>& coverage);

// Atom test for a J-closed sieve: some member has a non-degenerate domain,
// and every subsieve is either dense or zero.
bool is_atom_sieve(SiteContext& ctx, const Sieve& s);

enum class AtomicRoute {
  principal_generators,  // per-arrow factoring test on generators
  closed_atom_sieves,    // union of atom subobjects, full per-sieve test
};

CriterionVerdict is_atomic(SiteContext& ctx, AtomicRoute route = AtomicRoute::principal_generators);

// Indecomposability of a J-closed sieve: no family of pairwise-disjoint
// (up to zero) subsieves with dense union and no dense member. Families
// reduce to pairs; the reduction is property-tested against bounded family
// enumeration.
bool is_indecomposable_sieve(SiteContext& ctx, const Sieve& s);

// Reference evaluation quantifying over all deduplicated nonempty families
// of subsieves up to the given size; exponential, test use only.
bool is_indecomposable_sieve_by_families(SiteContext& ctx, const Sieve& s, int max_family);

CriterionVerdict is_locally_connected(SiteContext& ctx);

// overline(S): arrows whose l-image factors through the l-image of a member.
Sieve overline(SiteContext& ctx, const Sieve& s);
bool is_l_closed(SiteContext& ctx, const Sieve& s);

// Irreducibility of l((f)): every l-closed subsieve of (f) pulls back to a
// cover along f exactly when it contains f. The l-closedness filter is
// dropped on subcanonical sites, where every sieve is l-closed.
bool is_irreducible_principal(SiteContext& ctx, ArrId f);

CriterionVerdict is_presheaf_type(SiteContext& ctx);

CriterionVerdict has_separating_well_supported(SiteContext& ctx);

// Shortcut for geometric sites with initial and terminal objects: every
// object is initial or its unique arrow to the terminal object generates a
// cover.
CriterionVerdict well_supported_geometric_shortcut(SiteContext& ctx);

// True iff the witness re-checks to the stated value.
bool revalidate_criterion(SiteContext& ctx, const std::string& invariant,
                          const CriterionVerdict& verdict);

}  // namespace toposcan
