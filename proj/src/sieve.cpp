#include "toposcan/sieve.hpp"

#include <algorithm>
#include <stdexcept>

namespace toposcan {

Sieve empty_sieve(ObjId c) { return {c, 0}; }

Sieve maximal_sieve(const FiniteCategory& cat, ObjId c) {
  Sieve s{c, 0};
  for (ArrId f : cat.arrows_into(c)) s.bits |= uint64_t{1} << f;
  return s;
}

bool is_maximal(const FiniteCategory& cat, const Sieve& s) {
  return s.contains(cat.identity[s.codomain]);
}

Sieve generate_mask(const FiniteCategory& cat, ObjId c, uint64_t generator_bits) {
  // One pass suffices: {g∘h | g generator} is already right-closed.
  Sieve s{c, 0};
  for (uint64_t rest = generator_bits; rest;) {
    const ArrId g = __builtin_ctzll(rest);
    rest &= rest - 1;
    if (cat.cod(g) != c) throw std::invalid_argument("generator with wrong codomain");
    for (ArrId h : cat.arrows_into(cat.dom(g))) s.bits |= uint64_t{1} << cat.compose(g, h);
  }
  return s;
}

Sieve generate(const FiniteCategory& cat, ObjId c, const std::vector<ArrId>& generators) {
  uint64_t bits = 0;
  for (ArrId g : generators) bits |= uint64_t{1} << g;
  return generate_mask(cat, c, bits);
}

Sieve principal(const FiniteCategory& cat, ArrId f) { return generate_mask(cat, cat.cod(f), uint64_t{1} << f); }

Sieve pullback(const FiniteCategory& cat, ArrId h, const Sieve& s) {
  if (cat.cod(h) != s.codomain) throw std::invalid_argument("pullback codomain mismatch");
  Sieve r{cat.dom(h), 0};
  for (ArrId g : cat.arrows_into(cat.dom(h)))
    if (s.contains(cat.compose(h, g))) r.bits |= uint64_t{1} << g;
  return r;
}

Sieve sieve_union(const Sieve& a, const Sieve& b) {
  if (a.codomain != b.codomain) throw std::invalid_argument("sieve codomain mismatch");
  return {a.codomain, a.bits | b.bits};
}

Sieve sieve_intersection(const Sieve& a, const Sieve& b) {
  if (a.codomain != b.codomain) throw std::invalid_argument("sieve codomain mismatch");
  return {a.codomain, a.bits & b.bits};
}

bool sieve_subset(const Sieve& a, const Sieve& b) {
  if (a.codomain != b.codomain) throw std::invalid_argument("sieve codomain mismatch");
  return (a.bits & ~b.bits) == 0;
}

bool is_sieve(const FiniteCategory& cat, const Sieve& s) {
  for (ArrId f = 0; f < cat.num_arrows(); ++f) {
    if (!s.contains(f)) continue;
    if (cat.cod(f) != s.codomain) return false;
    for (ArrId h : cat.arrows_into(cat.dom(f)))
      if (!s.contains(cat.compose(f, h))) return false;
  }
  return true;
}

std::vector<ArrId> sieve_members(const Sieve& s) {
  std::vector<ArrId> out;
  for (uint64_t rest = s.bits; rest;) {
    out.push_back(__builtin_ctzll(rest));
    rest &= rest - 1;
  }
  return out;
}

std::vector<Sieve> all_sieves_on(const FiniteCategory& cat, ObjId c) {
  const auto& incoming = cat.arrows_into(c);
  std::vector<Sieve> out;
  const size_t subsets = size_t{1} << incoming.size();
  for (size_t mask = 0; mask < subsets; ++mask) {
    uint64_t gens = 0;
    for (size_t i = 0; i < incoming.size(); ++i)
      if (mask >> i & 1) gens |= uint64_t{1} << incoming[i];
    Sieve s = generate_mask(cat, c, gens);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const Sieve& a, const Sieve& b) { return a.bits < b.bits; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Presheaf sieve_presheaf(const FiniteCategory& cat, const Sieve& s) {
  const int n = cat.num_objects();
  const int m = cat.num_arrows();
  Presheaf p;
  p.card.assign(n, 0);
  std::vector<int> pos(m, -1);
  for (ArrId f = 0; f < m; ++f)
    if (s.contains(f)) pos[f] = p.card[cat.dom(f)]++;
  p.action.assign(m, {});
  for (ArrId h = 0; h < m; ++h) {
    const ObjId d = cat.cod(h);
    p.action[h].assign(p.card[d], -1);
    for (ArrId f = 0; f < m; ++f)
      if (s.contains(f) && cat.dom(f) == d) p.action[h][pos[f]] = pos[cat.compose(f, h)];
  }
  return p;
}

PresheafMorphism sieve_inclusion(const FiniteCategory& cat, const Sieve& s) {
  const int n = cat.num_objects();
  PresheafMorphism incl;
  incl.map.resize(n);
  std::vector<int> count(n, 0);
  for (ArrId f = 0; f < cat.num_arrows(); ++f) {
    if (!s.contains(f)) continue;
    const ObjId d = cat.dom(f);
    // Position of f inside hom(d, codomain) = its index in the yoneda value set.
    const auto& hs = cat.hom(d, s.codomain);
    const int ypos = static_cast<int>(std::find(hs.begin(), hs.end(), f) - hs.begin());
    incl.map[d].push_back(ypos);
    ++count[d];
  }
  return incl;
}

}  // namespace toposcan
