#pragma once

// Shared fixtures and small independent oracles for the test suites. The
// oracle helpers deliberately recompute definitions with plain loops instead
// of calling the library paths they are checking.

#include <set>
#include <vector>

#include "toposcan/workbench.hpp"

namespace tst {

using namespace toposcan;

// Right-closure computed by fixpoint iteration over explicit arrow sets.
inline std::set<ArrId> brute_close(const FiniteCategory& cat, ObjId c,
                                   const std::set<ArrId>& generators) {
  std::set<ArrId> out = generators;
  bool changed = true;
  while (changed) {
    changed = false;
    for (ArrId f : std::set<ArrId>(out)) {
      (void)c;
      for (ArrId h = 0; h < cat.num_arrows(); ++h) {
        if (cat.cod(h) != cat.dom(f)) continue;
        if (out.insert(cat.compose(f, h)).second) changed = true;
      }
    }
  }
  return out;
}

inline std::set<ArrId> members_of(const Sieve& s) {
  const auto v = sieve_members(s);
  return {v.begin(), v.end()};
}

inline Sieve sieve_of(const FiniteCategory& cat, ObjId c, const std::vector<std::string>& names) {
  Sieve s{c, 0};
  for (const auto& n : names) s.bits |= uint64_t{1} << cat.arrow_index(n);
  return s;
}

// All subsets of objects that are downward closed and J-closed, by the
// definitions, with explicit loops.
inline std::vector<uint32_t> brute_ideals(const FiniteCategory& cat,
                                          const GrothendieckTopology& top) {
  std::vector<uint32_t> out;
  for (uint32_t mask = 0; mask < (uint32_t{1} << cat.num_objects()); ++mask) {
    bool ok = true;
    for (ArrId f = 0; f < cat.num_arrows() && ok; ++f)
      if ((mask >> cat.cod(f) & 1) && !(mask >> cat.dom(f) & 1)) ok = false;
    for (ObjId c = 0; c < cat.num_objects() && ok; ++c) {
      if (mask >> c & 1) continue;
      for (const Sieve& s : top.covers[c]) {
        bool all_in = true;
        for (ArrId f : sieve_members(s))
          if (!(mask >> cat.dom(f) & 1)) all_in = false;
        if (all_in) ok = false;
      }
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

// Counts matching families by brute force over all assignments.
inline long long brute_matching_family_count(const FiniteCategory& cat, const Presheaf& p,
                                             const Sieve& s) {
  const auto members = sieve_members(s);
  std::vector<int> choice(members.size(), 0);
  long long count = 0;
  auto valid = [&]() {
    for (size_t i = 0; i < members.size(); ++i)
      for (ArrId h = 0; h < cat.num_arrows(); ++h) {
        if (cat.cod(h) != cat.dom(members[i])) continue;
        const ArrId fh = cat.compose(members[i], h);
        size_t j = 0;
        while (members[j] != fh) ++j;
        if (choice[j] != p.act(h, choice[i])) return false;
      }
    return true;
  };
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == members.size()) {
      if (valid()) ++count;
      return;
    }
    for (int x = 0; x < p.card[cat.dom(members[i])]; ++x) {
      choice[i] = x;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace tst
