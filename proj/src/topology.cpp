#include "toposcan/topology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace toposcan {

bool GrothendieckTopology::contains(const Sieve& s) const {
  const auto& list = covers[s.codomain];
  return std::binary_search(list.begin(), list.end(), s,
                            [](const Sieve& a, const Sieve& b) { return a.bits < b.bits; });
}

int GrothendieckTopology::total_sieves() const {
  int n = 0;
  for (const auto& list : covers) n += static_cast<int>(list.size());
  return n;
}

GrothendieckTopology trivial_topology(const FiniteCategory& cat) {
  GrothendieckTopology top;
  top.covers.resize(cat.num_objects());
  for (ObjId c = 0; c < cat.num_objects(); ++c) top.covers[c] = {maximal_sieve(cat, c)};
  return top;
}

namespace {

std::string sieve_str(const FiniteCategory& cat, const Sieve& s) {
  std::string out = "{";
  bool first = true;
  for (ArrId f : sieve_members(s)) {
    if (!first) out += ",";
    out += cat.arrows[f].name;
    first = false;
  }
  return out + "} on " + cat.objects[s.codomain];
}

std::vector<std::vector<Sieve>> normalized(const FiniteCategory& cat,
                                           const std::vector<std::vector<Sieve>>& raw) {
  std::vector<std::vector<Sieve>> covers(cat.num_objects());
  for (const auto& list : raw)
    for (const Sieve& s : list) covers[s.codomain].push_back(s);
  for (auto& list : covers) {
    std::sort(list.begin(), list.end(), [](const Sieve& a, const Sieve& b) { return a.bits < b.bits; });
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return covers;
}

}  // namespace

TopologyValidation validate_topology(const FiniteCategory& cat,
                                     const std::vector<std::vector<Sieve>>& raw_covers) {
  TopologyValidation result;
  auto violate = [&](std::string kind, std::string detail) {
    result.violations.push_back({std::move(kind), std::move(detail)});
  };

  GrothendieckTopology top;
  top.covers = normalized(cat, raw_covers);

  for (ObjId c = 0; c < cat.num_objects(); ++c)
    for (const Sieve& s : top.covers[c])
      if (!is_sieve(cat, s)) violate("not a sieve", sieve_str(cat, s));
  if (!result.violations.empty()) return result;

  for (ObjId c = 0; c < cat.num_objects(); ++c)
    if (!top.contains(maximal_sieve(cat, c))) violate("maximality violated", cat.objects[c]);

  for (ObjId c = 0; c < cat.num_objects(); ++c)
    for (const Sieve& s : top.covers[c])
      for (ArrId h : cat.arrows_into(c))
        if (!top.contains(pullback(cat, h, s)))
          violate("stability violated", sieve_str(cat, s) + " along " + cat.arrows[h].name);

  for (ObjId c = 0; c < cat.num_objects(); ++c) {
    const auto candidates = all_sieves_on(cat, c);
    for (const Sieve& s : top.covers[c])
      for (const Sieve& r : candidates) {
        if (top.contains(r)) continue;
        bool locally_covering = true;
        for (ArrId f : sieve_members(s))
          if (!top.contains(pullback(cat, f, r))) {
            locally_covering = false;
            break;
          }
        if (locally_covering)
          violate("transitivity violated",
                  sieve_str(cat, r) + " forced by " + sieve_str(cat, s) + " but absent");
      }
  }

  if (!result.violations.empty()) return result;
  result.topology = std::move(top);
  return result;
}

GrothendieckTopology saturate(const FiniteCategory& cat,
                              const std::vector<std::vector<Sieve>>& coverage) {
  const int n = cat.num_objects();
  std::vector<std::set<uint64_t>> covers(n);
  for (const auto& list : coverage)
    for (const Sieve& s : list) {
      if (!is_sieve(cat, s)) throw std::invalid_argument("coverage entry is not a sieve");
      covers[s.codomain].insert(s.bits);
    }
  for (ObjId c = 0; c < n; ++c) covers[c].insert(maximal_sieve(cat, c).bits);

  std::vector<std::vector<Sieve>> universe(n);
  for (ObjId c = 0; c < n; ++c) universe[c] = all_sieves_on(cat, c);

  bool changed = true;
  while (changed) {
    changed = false;
    for (ObjId c = 0; c < n; ++c) {
      for (uint64_t bits : std::vector<uint64_t>(covers[c].begin(), covers[c].end())) {
        const Sieve s{c, bits};
        for (ArrId h : cat.arrows_into(c)) {
          const Sieve p = pullback(cat, h, s);
          if (covers[p.codomain].insert(p.bits).second) changed = true;
        }
        for (const Sieve& r : universe[c]) {
          if (covers[c].count(r.bits)) continue;
          bool locally_covering = true;
          for (ArrId f : sieve_members(s))
            if (!covers[cat.dom(f)].count(pullback(cat, f, r).bits)) {
              locally_covering = false;
              break;
            }
          if (locally_covering) {
            covers[c].insert(r.bits);
            changed = true;
          }
        }
      }
    }
  }

  GrothendieckTopology top;
  top.covers.resize(n);
  for (ObjId c = 0; c < n; ++c)
    for (uint64_t bits : covers[c]) top.covers[c].push_back({c, bits});
  return top;
}

Sieve closure(const FiniteCategory& cat, const GrothendieckTopology& top, const Sieve& s) {
  Sieve out{s.codomain, 0};
  for (ArrId f : cat.arrows_into(s.codomain))
    if (top.contains(pullback(cat, f, s))) out.bits |= uint64_t{1} << f;
  return out;
}

bool is_covering(const FiniteCategory& cat, const GrothendieckTopology& top, const Sieve& s) {
  // Cheap routes first: any sieve containing the identity is maximal, and
  // under a trivial cover set coveringness is exactly maximality.
  if (s.contains(cat.identity[s.codomain])) return true;
  if (top.covers[s.codomain].size() == 1) return false;
  return closure(cat, top, s) == maximal_sieve(cat, s.codomain);
}

bool is_dense_in(const FiniteCategory& cat, const GrothendieckTopology& top, const Sieve& t,
                 const Sieve& s) {
  if (!sieve_subset(t, s)) throw std::invalid_argument("density requires T ⊆ S");
  for (ArrId f : sieve_members(s))
    if (!is_covering(cat, top, pullback(cat, f, t))) return false;
  return true;
}

JIdealList j_ideals(const FiniteCategory& cat, const GrothendieckTopology& top) {
  const int n = cat.num_objects();
  JIdealList out;
  out.zero.object_bits = 0;
  for (ObjId c = 0; c < n; ++c)
    if (top.contains(empty_sieve(c))) out.zero.object_bits |= uint32_t{1} << c;

  for (uint32_t mask = 0; mask < (uint32_t{1} << n); ++mask) {
    bool ok = true;
    // Downward closed: f: a -> b with b in I forces a in I.
    for (ArrId f = 0; f < cat.num_arrows() && ok; ++f)
      if ((mask >> cat.cod(f) & 1) && !(mask >> cat.dom(f) & 1)) ok = false;
    // J-closed: a cover of c with all domains in I forces c in I.
    for (ObjId c = 0; c < n && ok; ++c) {
      if (mask >> c & 1) continue;
      for (const Sieve& s : top.covers[c]) {
        bool domains_in = true;
        for (ArrId f : sieve_members(s))
          if (!(mask >> cat.dom(f) & 1)) {
            domains_in = false;
            break;
          }
        if (domains_in) {
          ok = false;
          break;
        }
      }
    }
    if (ok) out.ideals.push_back({mask});
  }
  return out;
}

}  // namespace toposcan
