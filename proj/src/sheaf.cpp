#include "toposcan/sheaf.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace toposcan {

std::vector<FamilyChoice> matching_families(const FiniteCategory& cat, const Presheaf& p,
                                            const Sieve& s) {
  const std::vector<ArrId> members = sieve_members(s);
  const int k = static_cast<int>(members.size());
  std::vector<int> pos(cat.num_arrows(), -1);
  for (int i = 0; i < k; ++i) pos[members[i]] = i;

  std::vector<FamilyChoice> out;
  FamilyChoice m(k, -1);

  // Compatibility: m[f∘h] == p(h)(m[f]) for every f ∈ S and composable h.
  auto consistent = [&](int i) {
    const ArrId f = members[i];
    for (ArrId h : cat.arrows_into(cat.dom(f))) {
      const int j = pos[cat.compose(f, h)];
      if (m[j] >= 0 && m[j] != p.act(h, m[i])) return false;
    }
    for (int j = 0; j < i; ++j) {
      const ArrId g = members[j];
      for (ArrId h : cat.arrows_into(cat.dom(g)))
        if (cat.compose(g, h) == f && m[i] != p.act(h, m[j])) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int i) -> void {
    if (i == k) {
      out.push_back(m);
      return;
    }
    if (m[i] >= 0) {  // forced by an earlier assignment
      if (consistent(i)) self(self, i + 1);
      return;
    }
    const int card = p.card[cat.dom(members[i])];
    for (int x = 0; x < card; ++x) {
      m[i] = x;
      if (consistent(i)) self(self, i + 1);
    }
    m[i] = -1;
  };
  rec(rec, 0);
  return out;
}

FamilyChoice restriction_family(const FiniteCategory& cat, const Presheaf& p, const Sieve& s, int x) {
  FamilyChoice m;
  for (ArrId f : sieve_members(s)) m.push_back(p.act(f, x));
  return m;
}

std::optional<SheafConditionFailure> sheaf_condition_failure(const FiniteCategory& cat,
                                                             const GrothendieckTopology& top,
                                                             const Presheaf& p) {
  for (ObjId c = 0; c < cat.num_objects(); ++c)
    for (const Sieve& s : top.covers[c]) {
      const auto families = matching_families(cat, p, s);
      if (static_cast<int>(families.size()) != p.card[c]) return SheafConditionFailure{c, s};
      std::vector<FamilyChoice> images;
      for (int x = 0; x < p.card[c]; ++x) images.push_back(restriction_family(cat, p, s, x));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end())
        return SheafConditionFailure{c, s};
    }
  return std::nullopt;
}

bool is_sheaf(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& p) {
  return !sheaf_condition_failure(cat, top, p).has_value();
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

PlusData plus(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& p) {
  const int n = cat.num_objects();
  PlusData out;
  out.families.resize(n);
  out.node_class.resize(n);
  out.representative.resize(n);
  out.result.card.assign(n, 0);
  out.result.action.assign(cat.num_arrows(), {});

  // Per object: enumerate nodes (cover, family) and glue along restrictions.
  std::vector<std::vector<std::map<FamilyChoice, int>>> family_index(n);
  for (ObjId c = 0; c < n; ++c) {
    const auto& covers = top.covers[c];
    const int nc = static_cast<int>(covers.size());
    out.families[c].resize(nc);
    family_index[c].resize(nc);
    std::vector<int> node_base(nc + 1, 0);
    for (int i = 0; i < nc; ++i) {
      out.families[c][i] = matching_families(cat, p, covers[i]);
      for (size_t k = 0; k < out.families[c][i].size(); ++k)
        family_index[c][i].emplace(out.families[c][i][k], static_cast<int>(k));
      node_base[i + 1] = node_base[i] + static_cast<int>(out.families[c][i].size());
    }

    UnionFind uf(node_base[nc]);
    for (int i = 0; i < nc; ++i) {
      const auto mem_i = sieve_members(covers[i]);
      for (int j = 0; j < nc; ++j) {
        if (i == j || !sieve_subset(covers[j], covers[i])) continue;
        // Positions of cover[j]'s members inside cover[i]'s member list.
        std::vector<int> sel;
        for (ArrId f : sieve_members(covers[j]))
          sel.push_back(static_cast<int>(std::lower_bound(mem_i.begin(), mem_i.end(), f) -
                                         mem_i.begin()));
        for (size_t k = 0; k < out.families[c][i].size(); ++k) {
          FamilyChoice restricted;
          restricted.reserve(sel.size());
          for (int idx : sel) restricted.push_back(out.families[c][i][k][idx]);
          const int kj = family_index[c][j].at(restricted);
          uf.unite(node_base[i] + static_cast<int>(k), node_base[j] + kj);
        }
      }
    }

    out.node_class[c].resize(nc);
    std::vector<int> class_of(node_base[nc], -1);
    for (int node = 0; node < node_base[nc]; ++node) {
      const int root = uf.find(node);
      if (class_of[root] < 0) {
        class_of[root] = out.result.card[c]++;
        // root is the smallest node of its class by construction
        int i = 0;
        while (node_base[i + 1] <= root) ++i;
        out.representative[c].push_back({i, root - node_base[i]});
      }
      class_of[node] = class_of[root];
    }
    for (int i = 0; i < nc; ++i) {
      out.node_class[c][i].resize(out.families[c][i].size());
      for (size_t k = 0; k < out.families[c][i].size(); ++k)
        out.node_class[c][i][k] = class_of[node_base[i] + static_cast<int>(k)];
    }
  }

  // Action: restrict a representative family along the pullback sieve.
  auto cover_index = [&](ObjId c, const Sieve& s) {
    const auto& list = top.covers[c];
    const auto it = std::lower_bound(list.begin(), list.end(), s,
                                     [](const Sieve& a, const Sieve& b) { return a.bits < b.bits; });
    if (it == list.end() || !(*it == s)) throw std::logic_error("pullback of a cover is not a cover");
    return static_cast<int>(it - list.begin());
  };
  for (ArrId h = 0; h < cat.num_arrows(); ++h) {
    const ObjId d = cat.dom(h), c = cat.cod(h);
    out.result.action[h].assign(out.result.card[c], -1);
    for (int e = 0; e < out.result.card[c]; ++e) {
      const auto [ci, fi] = out.representative[c][e];
      const Sieve& s = top.covers[c][ci];
      const auto mem_s = sieve_members(s);
      const Sieve t = pullback(cat, h, s);
      const int tj = cover_index(d, t);
      FamilyChoice moved;
      for (ArrId g : sieve_members(t)) {
        const ArrId hg = cat.compose(h, g);
        const int idx = static_cast<int>(std::lower_bound(mem_s.begin(), mem_s.end(), hg) -
                                         mem_s.begin());
        moved.push_back(out.families[c][ci][fi][idx]);
      }
      out.result.action[h][e] = out.node_class[d][tj][family_index[d][tj].at(moved)];
    }
  }

  // Unit: x ↦ class of the restriction family over the maximal sieve.
  out.unit.map.resize(n);
  for (ObjId c = 0; c < n; ++c) {
    const Sieve max = maximal_sieve(cat, c);
    const int mi = cover_index(c, max);
    out.unit.map[c].assign(p.card[c], -1);
    for (int x = 0; x < p.card[c]; ++x) {
      const FamilyChoice fam = restriction_family(cat, p, max, x);
      out.unit.map[c][x] = out.node_class[c][mi][family_index[c][mi].at(fam)];
    }
  }
  return out;
}

PresheafMorphism plus_map(const FiniteCategory& cat, const GrothendieckTopology& top,
                          const PresheafMorphism& base, const PlusData& src, const PlusData& dst) {
  const int n = cat.num_objects();
  PresheafMorphism out;
  out.map.resize(n);
  for (ObjId c = 0; c < n; ++c) {
    out.map[c].assign(src.result.card[c], -1);
    for (int e = 0; e < src.result.card[c]; ++e) {
      const auto [ci, fi] = src.representative[c][e];
      const Sieve& s = top.covers[c][ci];
      const FamilyChoice& fam = src.families[c][ci][fi];
      FamilyChoice image;
      image.reserve(fam.size());
      const auto members = sieve_members(s);
      for (size_t i = 0; i < members.size(); ++i)
        image.push_back(base.map[cat.dom(members[i])][fam[i]]);
      const auto& dst_fams = dst.families[c][ci];
      const auto it = std::find(dst_fams.begin(), dst_fams.end(), image);
      if (it == dst_fams.end()) throw std::logic_error("image of a matching family is not matching");
      out.map[c][e] = dst.node_class[c][ci][it - dst_fams.begin()];
    }
  }
  return out;
}

PresheafMorphism SheafifyData::unit() const { return compose_morphisms(twice.unit, once.unit); }

SheafifyData sheafify(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& p) {
  SheafifyData data;
  data.once = plus(cat, top, p);
  data.twice = plus(cat, top, data.once.result);
  if (!is_sheaf(cat, top, data.twice.result))
    throw std::logic_error("plus applied twice did not produce a sheaf");
  return data;
}

PresheafMorphism sheafify_map(const FiniteCategory& cat, const GrothendieckTopology& top,
                              const PresheafMorphism& base, const SheafifyData& src,
                              const SheafifyData& dst) {
  const PresheafMorphism one = plus_map(cat, top, base, src.once, dst.once);
  return plus_map(cat, top, one, src.twice, dst.twice);
}

Presheaf terminal_presheaf(const FiniteCategory& cat) {
  Presheaf p;
  p.card.assign(cat.num_objects(), 1);
  p.action.assign(cat.num_arrows(), std::vector<int>(1, 0));
  return p;
}

Presheaf initial_presheaf(const FiniteCategory& cat) {
  Presheaf p;
  p.card.assign(cat.num_objects(), 0);
  p.action.assign(cat.num_arrows(), {});
  return p;
}

SiteContext::SiteContext(Site site) : site_(std::move(site)) {
  const int n = site_.cat.num_objects();
  degenerate_.assign(n, 0);
  for (ObjId c = 0; c < n; ++c)
    if (site_.top.contains(empty_sieve(c))) degenerate_[c] = 1;
  all_sieves_.resize(n);
  closed_sieves_.resize(n);
  closure_memo_.resize(n);
  l_.resize(n);
  l_arrow_.resize(site_.cat.num_arrows());
}

uint64_t SiteContext::zero_arrow_mask(ObjId c) const {
  uint64_t mask = 0;
  for (ArrId f : cat().arrows_into(c))
    if (degenerate_[cat().dom(f)]) mask |= uint64_t{1} << f;
  return mask;
}

const std::vector<Sieve>& SiteContext::all_sieves(ObjId c) {
  if (!all_sieves_[c]) all_sieves_[c] = all_sieves_on(cat(), c);
  return *all_sieves_[c];
}

Sieve SiteContext::closure(const Sieve& s) {
  auto& memo = closure_memo_[s.codomain];
  if (const auto it = memo.find(s.bits); it != memo.end()) return {s.codomain, it->second};
  const Sieve out = toposcan::closure(cat(), top(), s);
  memo.emplace(s.bits, out.bits);
  return out;
}

bool SiteContext::covering(const Sieve& s) { return toposcan::is_covering(cat(), top(), s); }

bool SiteContext::is_closed(const Sieve& s) { return closure(s) == s; }

const std::vector<Sieve>& SiteContext::closed_sieves(ObjId c) {
  if (!closed_sieves_[c]) {
    std::vector<Sieve> out;
    for (const Sieve& s : all_sieves(c))
      if (is_closed(s)) out.push_back(s);
    closed_sieves_[c] = std::move(out);
  }
  return *closed_sieves_[c];
}

const JIdealList& SiteContext::ideals() {
  if (!ideals_) ideals_ = j_ideals(cat(), top());
  return *ideals_;
}

const SheafifyData& SiteContext::l_data(ObjId c) {
  if (!l_[c]) l_[c] = std::make_unique<SheafifyData>(sheafify(cat(), top(), yoneda(cat(), c)));
  return *l_[c];
}

const PresheafMorphism& SiteContext::l_arrow(ArrId g) {
  if (!l_arrow_[g]) {
    const ObjId d = cat().dom(g), c = cat().cod(g);
    // y(g): postcomposition with g.
    PresheafMorphism yg;
    yg.map.resize(cat().num_objects());
    for (ObjId e = 0; e < cat().num_objects(); ++e) {
      const auto& he = cat().hom(e, d);
      const auto& hc = cat().hom(e, c);
      for (ArrId h : he) {
        const ArrId gh = cat().compose(g, h);
        yg.map[e].push_back(
            static_cast<int>(std::find(hc.begin(), hc.end(), gh) - hc.begin()));
      }
    }
    l_arrow_[g] =
        std::make_unique<PresheafMorphism>(sheafify_map(cat(), top(), yg, l_data(d), l_data(c)));
  }
  return *l_arrow_[g];
}

const SiteContext::SieveSheaf& SiteContext::sheaf_of_sieve(const Sieve& s) {
  const auto key = std::make_pair(s.codomain, s.bits);
  if (const auto it = sieve_sheaf_.find(key); it != sieve_sheaf_.end()) return *it->second;
  auto entry = std::make_unique<SieveSheaf>();
  entry->data = sheafify(cat(), top(), sieve_presheaf(cat(), s));
  entry->mono = sheafify_map(cat(), top(), sieve_inclusion(cat(), s), entry->data,
                             l_data(s.codomain));
  return *sieve_sheaf_.emplace(key, std::move(entry)).first->second;
}

PresheafMorphism SiteContext::l_into_sieve(const Sieve& s, ArrId g) {
  if (!s.contains(g)) throw std::invalid_argument("arrow is not a member of the sieve");
  const ObjId d = cat().dom(g);
  // y(dom g) -> sieve presheaf: h ↦ g∘h, which lands in S by right closure.
  const Presheaf sp = sieve_presheaf(cat(), s);
  // Element positions per object of the sieve presheaf, in ascending arrow order.
  std::vector<std::vector<ArrId>> elems(cat().num_objects());
  for (ArrId f : sieve_members(s)) elems[cat().dom(f)].push_back(f);
  PresheafMorphism base;
  base.map.resize(cat().num_objects());
  for (ObjId e = 0; e < cat().num_objects(); ++e) {
    for (ArrId h : cat().hom(e, d)) {
      const ArrId gh = cat().compose(g, h);
      const auto& row = elems[e];
      base.map[e].push_back(
          static_cast<int>(std::find(row.begin(), row.end(), gh) - row.begin()));
    }
  }
  return sheafify_map(cat(), top(), base, l_data(d), sheaf_of_sieve(s).data);
}

const Presheaf& SiteContext::initial_sheaf() {
  if (!initial_) initial_ = sheafify(cat(), top(), initial_presheaf(cat())).sheaf();
  return *initial_;
}

bool SiteContext::subcanonical() {
  if (!subcanonical_) {
    bool ok = true;
    for (ObjId c = 0; c < cat().num_objects() && ok; ++c)
      ok = is_sheaf(cat(), top(), yoneda(cat(), c));
    subcanonical_ = ok;
  }
  return *subcanonical_;
}

bool SiteContext::l_factors_through(ArrId f, ArrId g) {
  const ObjId c = cat().cod(f);
  if (cat().cod(g) != c) throw std::invalid_argument("factorization test needs a shared codomain");
  const ObjId d = cat().dom(f);
  // Arrows l(d) -> l(e) correspond to elements of l(e)(d); composing with
  // l(g) is the component of l(g) at d, and l(f) corresponds to the unit
  // image of f. So factorization is a preimage question.
  const auto& hs = cat().hom(d, c);
  const int fpos = static_cast<int>(std::find(hs.begin(), hs.end(), f) - hs.begin());
  const int target = l_unit(c).map[d][fpos];
  for (int xi : l_arrow(g).map[d])
    if (xi == target) return true;
  return false;
}

bool is_zero_sieve(SiteContext& ctx, const Sieve& s) {
  for (ArrId f : sieve_members(s))
    if (!ctx.zero_arrow(f)) return false;
  return true;
}

bool is_zero_sieve_by_sheafification(SiteContext& ctx, const Sieve& s) {
  return presheaves_isomorphic(ctx.cat(), ctx.sheaf_of_sieve(s).sheaf(), ctx.initial_sheaf());
}

bool sieve_on_sheaf_is_epimorphic(SiteContext& ctx, const Sieve& s, uint64_t members_bits) {
  if (!ctx.is_closed(s)) throw std::invalid_argument("epimorphy test requires a J-closed sieve");
  if (members_bits & ~s.bits) throw std::invalid_argument("presented members must lie in the sieve");
  return ctx.closure({s.codomain, members_bits}) == s;
}

const std::vector<Sieve>& subobjects_of_l(SiteContext& ctx, ObjId c) { return ctx.closed_sieves(c); }

int count_subsheaves(const FiniteCategory& cat, const GrothendieckTopology& top, const Presheaf& f) {
  // Subpresheaves = per-object element subsets closed under the action.
  const int n = cat.num_objects();
  std::vector<uint64_t> chosen(n, 0);
  int count = 0;

  auto closed_under_action = [&]() {
    for (ArrId h = 0; h < cat.num_arrows(); ++h) {
      const ObjId d = cat.dom(h), c = cat.cod(h);
      for (int x = 0; x < f.card[c]; ++x)
        if ((chosen[c] >> x & 1) && !(chosen[d] >> f.act(h, x) & 1)) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, ObjId c) -> void {
    if (c == n) {
      if (closed_under_action()) {
        Presheaf sub;
        sub.card.assign(n, 0);
        std::vector<std::vector<int>> pos(n);
        for (ObjId d = 0; d < n; ++d) {
          pos[d].assign(f.card[d], -1);
          for (int x = 0; x < f.card[d]; ++x)
            if (chosen[d] >> x & 1) pos[d][x] = sub.card[d]++;
        }
        sub.action.assign(cat.num_arrows(), {});
        for (ArrId h = 0; h < cat.num_arrows(); ++h) {
          sub.action[h].assign(sub.card[cat.cod(h)], -1);
          for (int x = 0; x < f.card[cat.cod(h)]; ++x)
            if (chosen[cat.cod(h)] >> x & 1)
              sub.action[h][pos[cat.cod(h)][x]] = pos[cat.dom(h)][f.act(h, x)];
        }
        if (is_sheaf(cat, top, sub)) ++count;
      }
      return;
    }
    for (uint64_t mask = 0; mask < (uint64_t{1} << f.card[c]); ++mask) {
      chosen[c] = mask;
      self(self, c + 1);
    }
    chosen[c] = 0;
  };
  rec(rec, 0);
  return count;
}

}  // namespace toposcan
