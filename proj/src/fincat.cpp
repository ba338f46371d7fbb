#include "toposcan/fincat.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace toposcan {

void FiniteCategory::finalize() {
  const int n = num_objects();
  const int m = num_arrows();
  into_.assign(n, {});
  out_.assign(n, {});
  hom_.assign(n, std::vector<std::vector<ArrId>>(n));
  for (ArrId f = 0; f < m; ++f) {
    into_[arrows[f].cod].push_back(f);
    out_[arrows[f].dom].push_back(f);
    hom_[arrows[f].dom][arrows[f].cod].push_back(f);
  }
}

ObjId FiniteCategory::object_index(const std::string& name) const {
  for (int i = 0; i < num_objects(); ++i)
    if (objects[i] == name) return i;
  return -1;
}

ArrId FiniteCategory::arrow_index(const std::string& name) const {
  for (int i = 0; i < num_arrows(); ++i)
    if (arrows[i].name == name) return i;
  return -1;
}

namespace {

// Index maps for the raw description, with duplicate detection.
struct RawIndex {
  std::map<std::string, int> objects;
  std::map<std::string, int> arrows;
};

}  // namespace

CategoryValidation validate_category(const RawCategory& raw) {
  CategoryValidation result;
  auto violate = [&](std::string kind, std::string detail) {
    result.violations.push_back({std::move(kind), std::move(detail)});
  };

  RawIndex idx;
  for (size_t i = 0; i < raw.objects.size(); ++i) {
    if (!idx.objects.emplace(raw.objects[i], static_cast<int>(i)).second)
      violate("duplicate object", raw.objects[i]);
  }
  for (size_t i = 0; i < raw.arrows.size(); ++i) {
    const RawArrow& a = raw.arrows[i];
    if (!idx.arrows.emplace(a.id, static_cast<int>(i)).second) violate("duplicate arrow", a.id);
    if (!idx.objects.count(a.dom)) violate("unknown object", "dom of " + a.id + ": " + a.dom);
    if (!idx.objects.count(a.cod)) violate("unknown object", "cod of " + a.id + ": " + a.cod);
  }
  if (!result.violations.empty()) return result;

  const int n = static_cast<int>(raw.objects.size());
  const int m = static_cast<int>(raw.arrows.size());

  FiniteCategory cat;
  cat.objects = raw.objects;
  cat.arrows.resize(m);
  for (int i = 0; i < m; ++i)
    cat.arrows[i] = {raw.arrows[i].id, idx.objects.at(raw.arrows[i].dom), idx.objects.at(raw.arrows[i].cod)};

  // Identities: one per object, with matching endpoints.
  cat.identity.assign(n, -1);
  for (const auto& [obj, arr] : raw.identities) {
    auto oit = idx.objects.find(obj);
    auto ait = idx.arrows.find(arr);
    if (oit == idx.objects.end()) {
      violate("unknown object", "identity declared for " + obj);
      continue;
    }
    if (ait == idx.arrows.end()) {
      violate("missing identity", "identity arrow " + arr + " of " + obj + " not among arrows");
      continue;
    }
    const Arrow& a = cat.arrows[ait->second];
    if (a.dom != oit->second || a.cod != oit->second)
      violate("missing identity", "declared identity " + arr + " is not an endomorphism of " + obj);
    else
      cat.identity[oit->second] = ait->second;
  }
  for (int c = 0; c < n; ++c)
    if (cat.identity[c] < 0) violate("missing identity", "object " + raw.objects[c]);
  if (!result.violations.empty()) return result;

  // Composition table. Identity entries are forced; declared ones must agree.
  cat.table.assign(static_cast<size_t>(m) * m, -1);
  auto cell = [&](int g, int f) -> int16_t& { return cat.table[static_cast<size_t>(g) * m + f]; };
  for (int f = 0; f < m; ++f) {
    cell(cat.identity[cat.arrows[f].cod], f) = static_cast<int16_t>(f);
    cell(f, cat.identity[cat.arrows[f].dom]) = static_cast<int16_t>(f);
  }
  for (const RawComposite& e : raw.compose) {
    auto git = idx.arrows.find(e.g);
    auto fit = idx.arrows.find(e.f);
    auto rit = idx.arrows.find(e.result);
    if (git == idx.arrows.end() || fit == idx.arrows.end() || rit == idx.arrows.end()) {
      violate("unknown arrow", "compose entry (" + e.g + ", " + e.f + ") -> " + e.result);
      continue;
    }
    const int g = git->second, f = fit->second, r = rit->second;
    if (cat.arrows[f].cod != cat.arrows[g].dom) {
      violate("spurious composition", "(" + e.g + ", " + e.f + ") is not composable");
      continue;
    }
    if (cat.arrows[r].dom != cat.arrows[f].dom || cat.arrows[r].cod != cat.arrows[g].cod) {
      violate("ill-typed composition",
              "(" + e.g + ", " + e.f + ") -> " + e.result + " has wrong endpoints");
      continue;
    }
    if (cell(g, f) != -1 && cell(g, f) != r) {
      violate(cat.is_identity(g) || cat.is_identity(f) ? "identity law" : "conflicting composition",
              "entry (" + e.g + ", " + e.f + ") declared " + e.result + " but forced " +
                  cat.arrows[cell(g, f)].name);
      continue;
    }
    cell(g, f) = static_cast<int16_t>(r);
  }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (cat.arrows[f].cod == cat.arrows[g].dom && cell(g, f) == -1)
        violate("partial composition table",
                "missing entry (" + cat.arrows[g].name + ", " + cat.arrows[f].name + ")");
  if (!result.violations.empty()) return result;

  // Associativity, exhaustively; O(arrows^3) is fine at this scale.
  for (int h = 0; h < m; ++h)
    for (int g = 0; g < m; ++g) {
      if (cat.arrows[g].cod != cat.arrows[h].dom) continue;
      const int hg = cell(h, g);
      for (int f = 0; f < m; ++f) {
        if (cat.arrows[f].cod != cat.arrows[g].dom) continue;
        const int gf = cell(g, f);
        if (cell(h, gf) != cell(hg, f))
          violate("associativity failure", "(" + cat.arrows[h].name + ", " + cat.arrows[g].name + ", " +
                                               cat.arrows[f].name + ")");
      }
    }
  if (!result.violations.empty()) return result;

  cat.finalize();
  result.category = std::move(cat);
  return result;
}

RawCategory to_raw(const FiniteCategory& cat) {
  RawCategory raw;
  raw.objects = cat.objects;
  for (const Arrow& a : cat.arrows)
    raw.arrows.push_back({a.name, cat.objects[a.dom], cat.objects[a.cod]});
  for (int c = 0; c < cat.num_objects(); ++c)
    raw.identities[cat.objects[c]] = cat.arrows[cat.identity[c]].name;
  for (int g = 0; g < cat.num_arrows(); ++g)
    for (int f = 0; f < cat.num_arrows(); ++f) {
      if (!cat.composable(g, f)) continue;
      if (cat.is_identity(g) || cat.is_identity(f)) continue;
      raw.compose.push_back({cat.arrows[g].name, cat.arrows[f].name, cat.arrows[cat.compose(g, f)].name});
    }
  return raw;
}

bool is_preorder(const FiniteCategory& cat) {
  for (int d = 0; d < cat.num_objects(); ++d)
    for (int c = 0; c < cat.num_objects(); ++c)
      if (cat.hom(d, c).size() > 1) return false;
  return true;
}

PresheafValidation validate_presheaf(const FiniteCategory& cat, const RawPresheaf& raw) {
  PresheafValidation result;
  auto violate = [&](std::string kind, std::string detail) {
    result.violations.push_back({std::move(kind), std::move(detail)});
  };

  const int n = cat.num_objects();
  const int m = cat.num_arrows();
  Presheaf p;
  p.card.assign(n, 0);
  std::vector<std::map<std::string, int>> elem_index(n);
  for (int c = 0; c < n; ++c) {
    auto it = raw.value.find(cat.objects[c]);
    if (it == raw.value.end()) {
      violate("missing value set", cat.objects[c]);
      continue;
    }
    for (const std::string& e : it->second) {
      if (!elem_index[c].emplace(e, p.card[c]).second)
        violate("duplicate element", cat.objects[c] + "." + e);
      else
        ++p.card[c];
    }
  }
  for (const auto& [obj, elems] : raw.value)
    if (cat.object_index(obj) < 0) violate("unknown object", obj);
  if (!result.violations.empty()) return result;

  p.action.assign(m, {});
  for (int f = 0; f < m; ++f) {
    const ObjId d = cat.dom(f), c = cat.cod(f);
    p.action[f].assign(p.card[c], -1);
    auto it = raw.action.find(cat.arrows[f].name);
    if (it == raw.action.end()) {
      if (p.card[c] > 0) violate("missing action", cat.arrows[f].name);
      continue;
    }
    for (const auto& [from, to] : it->second) {
      auto fi = elem_index[c].find(from);
      auto ti = elem_index[d].find(to);
      if (fi == elem_index[c].end() || ti == elem_index[d].end()) {
        violate("unknown element", cat.arrows[f].name + ": " + from + " -> " + to);
        continue;
      }
      p.action[f][fi->second] = ti->second;
    }
    for (int x = 0; x < p.card[c]; ++x)
      if (p.action[f][x] < 0)
        violate("missing action", cat.arrows[f].name + " undefined on some element");
  }
  if (!result.violations.empty()) return result;

  result.violations = check_presheaf_laws(cat, p);
  if (!result.violations.empty()) return result;
  result.presheaf = std::move(p);
  return result;
}

std::vector<Violation> check_presheaf_laws(const FiniteCategory& cat, const Presheaf& p) {
  std::vector<Violation> out;
  for (int c = 0; c < cat.num_objects(); ++c) {
    const ArrId id = cat.identity[c];
    for (int x = 0; x < p.card[c]; ++x)
      if (p.act(id, x) != x)
        out.push_back({"non-functorial action", "identity of " + cat.objects[c] + " moves element"});
  }
  for (int g = 0; g < cat.num_arrows(); ++g)
    for (int f = 0; f < cat.num_arrows(); ++f) {
      if (!cat.composable(g, f)) continue;
      const ArrId gf = cat.compose(g, f);
      for (int x = 0; x < p.card[cat.cod(g)]; ++x)
        if (p.act(f, p.act(g, x)) != p.act(gf, x))
          out.push_back({"non-functorial action", "witness (" + cat.arrows[g].name + ", " +
                                                      cat.arrows[f].name + ", element " +
                                                      std::to_string(x) + ")"});
    }
  return out;
}

Presheaf yoneda(const FiniteCategory& cat, ObjId c) {
  Presheaf p;
  const int n = cat.num_objects();
  const int m = cat.num_arrows();
  // Position of each arrow d -> c inside hom(d, c).
  std::vector<int> pos(m, -1);
  p.card.assign(n, 0);
  for (int d = 0; d < n; ++d) {
    const auto& hs = cat.hom(d, c);
    p.card[d] = static_cast<int>(hs.size());
    for (size_t i = 0; i < hs.size(); ++i) pos[hs[i]] = static_cast<int>(i);
  }
  p.action.assign(m, {});
  for (int f = 0; f < m; ++f) {
    const ObjId e = cat.dom(f), d = cat.cod(f);
    p.action[f].assign(p.card[d], -1);
    const auto& hs = cat.hom(d, c);
    for (size_t i = 0; i < hs.size(); ++i) p.action[f][i] = pos[cat.compose(hs[i], f)];
    (void)e;
  }
  return p;
}

bool is_identity_morphism(const Presheaf& p, const PresheafMorphism& m) {
  for (size_t c = 0; c < m.map.size(); ++c) {
    if (static_cast<int>(m.map[c].size()) != p.card[c]) return false;
    for (int x = 0; x < p.card[c]; ++x)
      if (m.map[c][x] != x) return false;
  }
  return true;
}

PresheafMorphism compose_morphisms(const PresheafMorphism& second, const PresheafMorphism& first) {
  PresheafMorphism out;
  out.map.resize(first.map.size());
  for (size_t c = 0; c < first.map.size(); ++c) {
    out.map[c].resize(first.map[c].size());
    for (size_t x = 0; x < first.map[c].size(); ++x) out.map[c][x] = second.map[c][first.map[c][x]];
  }
  return out;
}

bool is_natural(const FiniteCategory& cat, const Presheaf& p, const Presheaf& q,
                const PresheafMorphism& m) {
  for (int f = 0; f < cat.num_arrows(); ++f) {
    const ObjId d = cat.dom(f), c = cat.cod(f);
    for (int x = 0; x < p.card[c]; ++x)
      if (m.map[d][p.act(f, x)] != q.act(f, m.map[c][x])) return false;
  }
  return true;
}

namespace {

// Backtracking over component functions, checking naturality incrementally.
// `bijective` restricts the search to pointwise bijections.
void search_transformations(const FiniteCategory& cat, const Presheaf& p, const Presheaf& q,
                            bool bijective, bool first_only, std::vector<PresheafMorphism>& out) {
  const int n = cat.num_objects();
  if (bijective)
    for (int c = 0; c < n; ++c)
      if (p.card[c] != q.card[c]) return;

  // Flatten the assignment domain as (object, element) pairs.
  std::vector<std::pair<int, int>> slots;
  for (int c = 0; c < n; ++c)
    for (int x = 0; x < p.card[c]; ++x) slots.push_back({c, x});

  PresheafMorphism m;
  m.map.resize(n);
  for (int c = 0; c < n; ++c) m.map[c].assign(p.card[c], -1);
  std::vector<uint64_t> used(n, 0);

  // Naturality constraints touching a slot, checkable once both ends are set:
  // for f: d -> c and x in p(c):  m[d][p(f)(x)] == q(f)(m[c][x]).
  auto consistent = [&](int c, int x) {
    for (int f = 0; f < cat.num_arrows(); ++f) {
      const ObjId d = cat.dom(f), cc = cat.cod(f);
      if (cc == c) {
        const int y = m.map[c][x];
        const int px = p.act(f, x);
        if (m.map[d][px] >= 0 && m.map[d][px] != q.act(f, y)) return false;
      }
      if (d == c) {
        for (int z = 0; z < p.card[cc]; ++z)
          if (p.act(f, z) == x && m.map[cc][z] >= 0 && m.map[c][x] != q.act(f, m.map[cc][z]))
            return false;
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, size_t i) -> void {
    if (first_only && !out.empty()) return;
    if (i == slots.size()) {
      out.push_back(m);
      return;
    }
    const auto [c, x] = slots[i];
    for (int y = 0; y < q.card[c]; ++y) {
      if (bijective && (used[c] >> y & 1)) continue;
      m.map[c][x] = y;
      used[c] |= uint64_t{1} << y;
      if (consistent(c, x)) self(self, i + 1);
      used[c] &= ~(uint64_t{1} << y);
      m.map[c][x] = -1;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<PresheafMorphism> natural_transformations(const FiniteCategory& cat, const Presheaf& p,
                                                      const Presheaf& q) {
  std::vector<PresheafMorphism> out;
  search_transformations(cat, p, q, /*bijective=*/false, /*first_only=*/false, out);
  return out;
}

bool presheaves_isomorphic(const FiniteCategory& cat, const Presheaf& p, const Presheaf& q) {
  std::vector<PresheafMorphism> out;
  search_transformations(cat, p, q, /*bijective=*/true, /*first_only=*/true, out);
  return !out.empty();
}

}  // namespace toposcan
