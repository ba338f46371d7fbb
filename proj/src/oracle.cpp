#include "toposcan/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace toposcan {

using Json = nlohmann::ordered_json;

const char* invariant_name(Invariant inv) {
  switch (inv) {
    case Invariant::localic: return "localic";
    case Invariant::atomic: return "atomic";
    case Invariant::locally_connected: return "locally_connected";
    case Invariant::presheaf_type: return "presheaf_type";
    case Invariant::well_supported: return "well_supported";
  }
  return "?";
}

namespace {

Json sieve_json(const FiniteCategory& cat, const Sieve& s) {
  Json arr = Json::array();
  for (ArrId f : sieve_members(s)) arr.push_back(cat.arrows[f].name);
  return arr;
}

bool subterminal_property(SiteContext& ctx, const Sieve& s) {
  const Presheaf& sheaf = ctx.sheaf_of_sieve(s).sheaf();
  for (int c = 0; c < ctx.cat().num_objects(); ++c)
    if (sheaf.card[c] > 1) return false;
  return true;
}

bool atom_property(SiteContext& ctx, const Sieve& s) {
  // Subobjects of a_J(S) are the J-closed subsieves; an atom has exactly the
  // zero closure and S itself, distinct.
  int count = 0;
  for (const Sieve& t : ctx.closed_sieves(s.codomain))
    if (sieve_subset(t, s)) ++count;
  return count == 2 && !(ctx.closure(empty_sieve(s.codomain)) == s);
}

bool dense_union_in(SiteContext& ctx, const Sieve& u, const Sieve& s) {
  for (ArrId f : sieve_members(s))
    if (!ctx.covering(pullback(ctx.cat(), f, u))) return false;
  return true;
}

bool indecomposable_property(SiteContext& ctx, const Sieve& s) {
  // Pairwise-disjoint families of nonzero closed subsieves; a jointly
  // epimorphic one with at least two members is a coproduct decomposition.
  const uint64_t zero_mask = ctx.zero_arrow_mask(s.codomain);
  std::vector<Sieve> candidates;
  for (const Sieve& t : ctx.closed_sieves(s.codomain))
    if (sieve_subset(t, s) && (t.bits & ~zero_mask) != 0 && !(t == s)) candidates.push_back(t);

  std::vector<int> clique;
  auto rec = [&](auto&& self, size_t start, Sieve u) -> bool {
    if (clique.size() >= 2 && dense_union_in(ctx, u, s)) return false;
    for (size_t k = start; k < candidates.size(); ++k) {
      bool disjoint = true;
      for (int i : clique)
        if ((candidates[i].bits & candidates[k].bits & ~zero_mask) != 0) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      clique.push_back(static_cast<int>(k));
      if (!self(self, k + 1, sieve_union(u, candidates[k]))) return false;
      clique.pop_back();
    }
    return true;
  };
  return rec(rec, 0, empty_sieve(s.codomain));
}

// l^S(g) is split epic iff some sheaf morphism a_J(S) -> l(dom g) composes
// with it to the identity.
bool split_epi_onto_sieve(SiteContext& ctx, const Sieve& s, ArrId g) {
  const PresheafMorphism e = ctx.l_into_sieve(s, g);
  const Presheaf& aj = ctx.sheaf_of_sieve(s).sheaf();
  const Presheaf& ld = ctx.l_object(ctx.cat().dom(g));
  for (const PresheafMorphism& section : natural_transformations(ctx.cat(), aj, ld))
    if (is_identity_morphism(aj, compose_morphisms(e, section))) return true;
  return false;
}

bool irreducible_property(SiteContext& ctx, const Sieve& s) {
  // Every epimorphic sieve on a_J(S) is maximal. A sieve of arrows into
  // a_J(S) reduces to its trace A ⊆ S: it is epimorphic iff c_J(A) = S and
  // maximal iff some l^S(g), g ∈ A, is split epic.
  const FiniteCategory& cat = ctx.cat();
  std::map<ArrId, bool> split_memo;
  auto split = [&](ArrId g) {
    auto it = split_memo.find(g);
    if (it == split_memo.end()) it = split_memo.emplace(g, split_epi_onto_sieve(ctx, s, g)).first;
    return it->second;
  };
  for (const Sieve& a : ctx.all_sieves(s.codomain)) {
    if (!sieve_subset(a, s)) continue;
    if (!(ctx.closure(a) == s)) continue;
    bool maximal = false;
    for (ArrId g : sieve_members(a))
      if (split(g)) {
        maximal = true;
        break;
      }
    if (!maximal) return false;
  }
  return true;
}

bool well_supported_property(SiteContext& ctx, const Sieve& s) {
  // a_J(S) -> 1 is epic iff every object is covered by arrows whose domains
  // lie in the support of the sheafification.
  const FiniteCategory& cat = ctx.cat();
  const Presheaf& sheaf = ctx.sheaf_of_sieve(s).sheaf();
  for (ObjId d = 0; d < cat.num_objects(); ++d) {
    Sieve t{d, 0};
    for (ArrId g : cat.arrows_into(d))
      if (sheaf.card[cat.dom(g)] > 0) t.bits |= uint64_t{1} << g;
    if (!ctx.covering(t)) return false;
  }
  return true;
}

}  // namespace

bool oracle_object_property(SiteContext& ctx, const Sieve& subject, ObjectProperty kind) {
  if (!ctx.is_closed(subject))
    throw std::invalid_argument("oracle subject sieve must be J-closed");
  switch (kind) {
    case ObjectProperty::subterminal: return subterminal_property(ctx, subject);
    case ObjectProperty::atom: return atom_property(ctx, subject);
    case ObjectProperty::indecomposable: return indecomposable_property(ctx, subject);
    case ObjectProperty::irreducible: return irreducible_property(ctx, subject);
    case ObjectProperty::well_supported: return well_supported_property(ctx, subject);
  }
  throw std::invalid_argument("unknown object property");
}

bool oracle_object_property(SiteContext& ctx, ObjId subject, ObjectProperty kind) {
  return oracle_object_property(ctx, maximal_sieve(ctx.cat(), subject), kind);
}

namespace {

ObjectProperty property_for(Invariant inv) {
  switch (inv) {
    case Invariant::localic: return ObjectProperty::subterminal;
    case Invariant::atomic: return ObjectProperty::atom;
    case Invariant::locally_connected: return ObjectProperty::indecomposable;
    case Invariant::well_supported: return ObjectProperty::well_supported;
    default: throw std::logic_error("no single object property for this invariant");
  }
}

}  // namespace

OracleVerdict oracle_invariant(SiteContext& ctx, Invariant inv) {
  const FiniteCategory& cat = ctx.cat();
  OracleVerdict verdict;
  verdict.value = true;
  Json per_object = Json::array();

  if (inv == Invariant::presheaf_type) {
    std::map<std::pair<int, uint64_t>, bool> irr_memo;
    auto irreducible_image = [&](ArrId k) {
      const Sieve subj = ctx.closure(principal(cat, k));
      const auto key = std::make_pair(subj.codomain, subj.bits);
      auto it = irr_memo.find(key);
      if (it == irr_memo.end())
        it = irr_memo.emplace(key, oracle_object_property(ctx, subj, ObjectProperty::irreducible))
                 .first;
      return it->second;
    };
    for (ObjId c = 0; c < cat.num_objects(); ++c) {
      Sieve covered = empty_sieve(c);
      Json composites = Json::array();
      bool done = ctx.covering(covered);
      for (ArrId w : cat.arrows_into(c)) {
        if (done) break;
        for (ArrId k : cat.arrows_into(cat.dom(w))) {
          if (!irreducible_image(k)) continue;
          const Sieve p = principal(cat, cat.compose(w, k));
          if (sieve_subset(p, covered)) continue;
          covered = sieve_union(covered, p);
          composites.push_back(Json{{"k", cat.arrows[k].name}, {"w", cat.arrows[w].name}});
          if (ctx.covering(covered)) {
            done = true;
            break;
          }
        }
      }
      if (!done && !ctx.covering(covered)) {
        verdict.value = false;
        verdict.witness = Json{{"failing_object", cat.objects[c]}};
        return verdict;
      }
      per_object.push_back(Json{{"object", cat.objects[c]}, {"composites", composites}});
    }
    verdict.witness = Json{{"per_object", per_object}};
    return verdict;
  }

  const ObjectProperty kind = property_for(inv);
  for (ObjId c = 0; c < cat.num_objects(); ++c) {
    Sieve covered = empty_sieve(c);
    Json used = Json::array();
    bool done = ctx.covering(covered);
    for (const Sieve& t : ctx.closed_sieves(c)) {
      if (done) break;
      if (!oracle_object_property(ctx, t, kind)) continue;
      if (sieve_subset(t, covered)) continue;
      covered = sieve_union(covered, t);
      used.push_back(sieve_json(cat, t));
      if (ctx.covering(covered)) done = true;
    }
    if (!done && !ctx.covering(covered)) {
      verdict.value = false;
      verdict.witness = Json{{"failing_object", cat.objects[c]}};
      return verdict;
    }
    per_object.push_back(Json{{"object", cat.objects[c]}, {"subobjects", used}});
  }
  verdict.witness = Json{{"per_object", per_object}};
  return verdict;
}

bool revalidate_oracle(SiteContext& ctx, Invariant inv, const OracleVerdict& verdict) {
  const FiniteCategory& cat = ctx.cat();
  if (!verdict.value) return !oracle_invariant(ctx, inv).value;

  std::vector<char> seen(cat.num_objects(), 0);
  for (const Json& entry : verdict.witness.at("per_object")) {
    const ObjId c = cat.object_index(entry.at("object").get<std::string>());
    if (c < 0) return false;
    seen[c] = 1;
    Sieve covered = empty_sieve(c);
    if (inv == Invariant::presheaf_type) {
      for (const Json& pair : entry.at("composites")) {
        const ArrId k = cat.arrow_index(pair.at("k").get<std::string>());
        const ArrId w = cat.arrow_index(pair.at("w").get<std::string>());
        if (k < 0 || w < 0 || !cat.composable(w, k) || cat.cod(w) != c) return false;
        if (!oracle_object_property(ctx, ctx.closure(principal(cat, k)), ObjectProperty::irreducible))
          return false;
        covered = sieve_union(covered, principal(cat, cat.compose(w, k)));
      }
    } else {
      for (const Json& arr : entry.at("subobjects")) {
        Sieve t{c, 0};
        for (const auto& name : arr) {
          const ArrId f = cat.arrow_index(name.get<std::string>());
          if (f < 0) return false;
          t.bits |= uint64_t{1} << f;
        }
        if (!ctx.is_closed(t) || !oracle_object_property(ctx, t, property_for(inv))) return false;
        covered = sieve_union(covered, t);
      }
    }
    if (!ctx.covering(covered)) return false;
  }
  for (ObjId c = 0; c < cat.num_objects(); ++c)
    if (!seen[c]) return false;
  return true;
}

}  // namespace toposcan
