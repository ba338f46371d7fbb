#include <algorithm>
#include <array>
#include <cstring>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "toposcan/workbench.hpp"

namespace toposcan {

// ------------------------------------------------------------- topologies

std::vector<GrothendieckTopology> enumerate_topologies(const FiniteCategory& cat) {
  const int n = cat.num_objects();
  std::vector<std::vector<Sieve>> universe(n);
  std::vector<int> max_idx(n, 0);
  for (ObjId c = 0; c < n; ++c) {
    universe[c] = all_sieves_on(cat, c);
    if (universe[c].size() > 64) throw std::invalid_argument("size bound exceeded: too many sieves");
    for (size_t i = 0; i < universe[c].size(); ++i)
      if (universe[c][i] == maximal_sieve(cat, c)) max_idx[c] = static_cast<int>(i);
  }

  auto sieve_index = [&](const Sieve& s) {
    const auto& u = universe[s.codomain];
    return static_cast<int>(std::lower_bound(u.begin(), u.end(), s,
                                             [](const Sieve& a, const Sieve& b) {
                                               return a.bits < b.bits;
                                             }) -
                            u.begin());
  };

  // Superset closure masks and pullback index tables.
  std::vector<std::vector<uint64_t>> sup(n);
  std::vector<std::vector<std::vector<int>>> pull(n);  // pull[c][h-pos][si]
  for (ObjId c = 0; c < n; ++c) {
    const auto& u = universe[c];
    sup[c].assign(u.size(), 0);
    for (size_t i = 0; i < u.size(); ++i)
      for (size_t j = 0; j < u.size(); ++j)
        if (sieve_subset(u[i], u[j])) sup[c][i] |= uint64_t{1} << j;
    const auto& incoming = cat.arrows_into(c);
    pull[c].assign(incoming.size(), std::vector<int>(u.size()));
    for (size_t h = 0; h < incoming.size(); ++h)
      for (size_t i = 0; i < u.size(); ++i)
        pull[c][h][i] = sieve_index(pullback(cat, incoming[h], u[i]));
  }

  // Per-object candidate filters: subsets containing the maximal sieve and
  // closed under supersets.
  std::vector<std::vector<uint64_t>> filters(n);
  for (ObjId c = 0; c < n; ++c) {
    const size_t k = universe[c].size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
      if (!(mask >> max_idx[c] & 1)) continue;
      bool closed = true;
      for (size_t i = 0; i < k && closed; ++i)
        if ((mask >> i & 1) && (sup[c][i] & ~mask)) closed = false;
      if (closed) filters[c].push_back(mask);
    }
    if (filters[c].empty()) filters[c].push_back(0);  // n == 0 never reaches here
  }

  std::vector<uint64_t> chosen(n, 0);
  std::vector<GrothendieckTopology> out;

  auto axioms_hold = [&]() {
    for (ObjId c = 0; c < n; ++c) {
      const auto& u = universe[c];
      const auto& incoming = cat.arrows_into(c);
      for (size_t i = 0; i < u.size(); ++i) {
        if (!(chosen[c] >> i & 1)) continue;
        for (size_t h = 0; h < incoming.size(); ++h) {
          const ObjId d = cat.dom(incoming[h]);
          if (!(chosen[d] >> pull[c][h][i] & 1)) return false;
        }
        for (size_t r = 0; r < u.size(); ++r) {
          if (chosen[c] >> r & 1) continue;
          bool locally_covering = true;
          for (ArrId f : sieve_members(u[i])) {
            // position of f within arrows_into(c)
            const auto& inc = cat.arrows_into(c);
            const size_t hp = std::find(inc.begin(), inc.end(), f) - inc.begin();
            if (!(chosen[cat.dom(f)] >> pull[c][hp][r] & 1)) {
              locally_covering = false;
              break;
            }
          }
          if (locally_covering) return false;
        }
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, ObjId c) -> void {
    if (c == n) {
      if (!axioms_hold()) return;
      GrothendieckTopology top;
      top.covers.resize(n);
      for (ObjId d = 0; d < n; ++d)
        for (size_t i = 0; i < universe[d].size(); ++i)
          if (chosen[d] >> i & 1) top.covers[d].push_back(universe[d][i]);
      out.push_back(std::move(top));
      return;
    }
    for (uint64_t mask : filters[c]) {
      chosen[c] = mask;
      self(self, c + 1);
    }
  };
  rec(rec, 0);

  std::sort(out.begin(), out.end(), [](const GrothendieckTopology& a, const GrothendieckTopology& b) {
    if (a.total_sieves() != b.total_sieves()) return a.total_sieves() < b.total_sieves();
    for (size_t c = 0; c < a.covers.size(); ++c) {
      if (a.covers[c].size() != b.covers[c].size()) return a.covers[c].size() < b.covers[c].size();
      for (size_t i = 0; i < a.covers[c].size(); ++i)
        if (a.covers[c][i].bits != b.covers[c][i].bits) return a.covers[c][i].bits < b.covers[c][i].bits;
    }
    return false;
  });
  return out;
}

// -------------------------------------------------------------- categories

namespace {

// A hom-cardinality matrix for one object count, canonical under
// simultaneous row/column permutation.
struct Shape {
  int n = 0;
  std::array<std::array<int, 3>, 3> s{};
  std::vector<std::vector<int>> aut;  // object permutations fixing s
  int total() const {
    int t = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t += s[i][j];
    return t;
  }
};

std::vector<std::vector<int>> object_permutations(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<Shape> enumerate_shapes(int n, int max_arrows) {
  std::vector<Shape> out;
  const auto perms = object_permutations(n);
  Shape shape;
  shape.n = n;

  auto canonical = [&]() {
    // Lex-compare s against every simultaneous permutation of it.
    for (const auto& p : perms) {
      int cmp = 0;
      for (int i = 0; i < n && cmp == 0; ++i)
        for (int j = 0; j < n && cmp == 0; ++j)
          cmp = shape.s[p[i]][p[j]] - shape.s[i][j];
      if (cmp < 0) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, int pos, int used) -> void {
    if (pos == n * n) {
      // Composability: a nonempty path needs a nonempty composite hom-set.
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k)
            if (shape.s[k][j] > 0 && shape.s[j][i] > 0 && shape.s[k][i] == 0) return;
      if (!canonical()) return;
      Shape copy = shape;
      for (const auto& p : perms) {
        bool fixes = true;
        for (int i = 0; i < n && fixes; ++i)
          for (int j = 0; j < n && fixes; ++j)
            if (shape.s[p[i]][p[j]] != shape.s[i][j]) fixes = false;
        if (fixes) copy.aut.push_back(p);
      }
      out.push_back(std::move(copy));
      return;
    }
    const int i = pos / n, j = pos % n;
    const int lo = i == j ? 1 : 0;
    for (int v = lo; used + v <= max_arrows; ++v) {
      shape.s[i][j] = v;
      self(self, pos + 1, used + v);
    }
    shape.s[i][j] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

// Orderly search over composition tables of one shape: depth-first over the
// free cells with associativity propagation, rejecting tables that are not
// lexicographically minimal in their relabeling class. The relabeling group
// combines shape automorphisms with within-hom-set permutations of
// non-identity arrows.
class TableSearch {
 public:
  TableSearch(const Shape& shape, const std::function<void(const FiniteCategory&)>& sink)
      : shape_(shape), sink_(sink) {
    build_layout();
    build_cells();
    build_perms();
  }

  int num_choice_cells() const { return static_cast<int>(cells_.size()); }

  // Runs the full search under a fixed prefix of choice-cell values.
  void run(const std::vector<int8_t>& prefix) {
    reset();
    for (size_t i = 0; i < prefix.size(); ++i) {
      if (!node_ok_) return;
      if (!choose(static_cast<int>(i), prefix[i])) return;
    }
    dfs(static_cast<int>(prefix.size()));
  }

  // Enumerates the feasible value prefixes of the first `depth` choice cells.
  std::vector<std::vector<int8_t>> prefixes(int depth) {
    std::vector<std::vector<int8_t>> out;
    std::vector<int8_t> cur;
    collect_prefixes(depth, cur, out);
    return out;
  }

 private:
  const Shape& shape_;
  const std::function<void(const FiniteCategory&)>& sink_;

  int m_ = 0;
  std::vector<int> adom_, acod_;
  std::vector<int> ident_;                  // identity arrow per object
  std::vector<std::vector<int>> hom_;       // arrows per (i,j), identity first
  std::vector<int8_t> table_;               // m*m, -1 unknown
  std::vector<std::pair<int, int>> cells_;  // free (g, f) pairs in lex order
  std::vector<int> cell_of_;                // table index -> cell index or -1
  std::vector<std::vector<int8_t>> values_; // candidate values per cell

  std::vector<std::vector<int8_t>> perms_;  // arrow permutations
  std::vector<std::vector<int8_t>> inv_;
  std::vector<int> pos_;                    // compare position per perm
  std::vector<char> dead_;
  std::vector<int> park_;                   // table cell a perm waits on, or -1
  std::vector<std::vector<int>> parked_;    // per table cell: lazy perm list

  struct TrailEntry {
    enum Kind { assign, advance, kill } kind;
    int a, b;
  };
  std::vector<TrailEntry> trail_;
  bool node_ok_ = true;

  void build_layout() {
    const int n = shape_.n;
    ident_.assign(n, -1);
    hom_.assign(n * n, {});
    m_ = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < shape_.s[i][j]; ++k) {
          if (i == j && k == 0) ident_[i] = m_;
          hom_[i * n + j].push_back(m_);
          adom_.push_back(i);
          acod_.push_back(j);
          ++m_;
        }
  }

  bool is_ident(int a) const { return ident_[adom_[a]] == a && adom_[a] == acod_[a]; }

  void build_cells() {
    table_.assign(m_ * m_, -1);
    for (int f = 0; f < m_; ++f) {
      table_[ident_[acod_[f]] * m_ + f] = static_cast<int8_t>(f);
      table_[f * m_ + ident_[adom_[f]]] = static_cast<int8_t>(f);
    }
    cell_of_.assign(m_ * m_, -1);
    for (int g = 0; g < m_; ++g) {
      if (is_ident(g)) continue;
      for (int f = 0; f < m_; ++f) {
        if (is_ident(f) || acod_[f] != adom_[g]) continue;
        cell_of_[g * m_ + f] = static_cast<int>(cells_.size());
        cells_.push_back({g, f});
        std::vector<int8_t> vals;
        for (int v : hom_[adom_[f] * shape_.n + acod_[g]]) vals.push_back(static_cast<int8_t>(v));
        values_.push_back(std::move(vals));
      }
    }
  }

  void build_perms() {
    const int n = shape_.n;
    for (const auto& sigma : shape_.aut) {
      // Per-block bijections onto the sigma-image block; identities pinned.
      std::vector<int8_t> perm(m_, -1);
      std::vector<std::pair<int, int>> blocks;  // (i, j) with nonidentity arrows
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (i == j && !hom_[i * n + j].empty()) perm[ident_[i]] = static_cast<int8_t>(ident_[sigma[i]]);
          const int k = shape_.s[i][j] - (i == j ? 1 : 0);
          if (k > 0) blocks.push_back({i, j});
        }
      auto rec = [&](auto&& self, size_t bi) -> void {
        if (bi == blocks.size()) {
          perms_.push_back(perm);
          return;
        }
        const auto [i, j] = blocks[bi];
        std::vector<int> src, dst;
        for (int a : hom_[i * n + j])
          if (!is_ident(a)) src.push_back(a);
        for (int a : hom_[sigma[i] * n + sigma[j]])
          if (!is_ident(a)) dst.push_back(a);
        std::sort(dst.begin(), dst.end());
        do {
          for (size_t t = 0; t < src.size(); ++t) perm[src[t]] = static_cast<int8_t>(dst[t]);
          self(self, bi + 1);
        } while (std::next_permutation(dst.begin(), dst.end()));
        for (int a : src) perm[a] = -1;
      };
      rec(rec, 0);
    }
    // Drop the identity permutation; it never decides anything.
    std::erase_if(perms_, [&](const std::vector<int8_t>& p) {
      for (int a = 0; a < m_; ++a)
        if (p[a] != a) return false;
      return true;
    });
    inv_.resize(perms_.size());
    for (size_t pi = 0; pi < perms_.size(); ++pi) {
      inv_[pi].assign(m_, -1);
      for (int a = 0; a < m_; ++a) inv_[pi][perms_[pi][a]] = static_cast<int8_t>(a);
    }
  }

  void reset() {
    std::fill(table_.begin(), table_.end(), int8_t{-1});
    for (int f = 0; f < m_; ++f) {
      table_[ident_[acod_[f]] * m_ + f] = static_cast<int8_t>(f);
      table_[f * m_ + ident_[adom_[f]]] = static_cast<int8_t>(f);
    }
    pos_.assign(perms_.size(), 0);
    dead_.assign(perms_.size(), 0);
    park_.assign(perms_.size(), -1);
    parked_.assign(m_ * m_ + 1, {});
    trail_.clear();
    node_ok_ = true;
    for (size_t pi = 0; pi < perms_.size(); ++pi)
      if (!advance(static_cast<int>(pi))) node_ok_ = false;
  }

  // Lex comparison step for one permutation; false signals that the current
  // partial table is provably non-minimal.
  bool advance(int pi) {
    const auto& perm = perms_[pi];
    while (pos_[pi] < static_cast<int>(cells_.size())) {
      const auto [g, f] = cells_[pos_[pi]];
      const int8_t lhs = table_[g * m_ + f];
      if (lhs < 0) {
        park_[pi] = g * m_ + f;
        parked_[park_[pi]].push_back(pi);
        return true;
      }
      const int mapped = perm[g] * m_ + perm[f];
      const int8_t raw = table_[mapped];
      if (raw < 0) {
        park_[pi] = mapped;
        parked_[mapped].push_back(pi);
        return true;
      }
      const int8_t rhs = inv_[pi][raw];
      if (rhs < lhs) return false;
      if (rhs > lhs) {
        trail_.push_back({TrailEntry::kill, pi, park_[pi]});
        dead_[pi] = 1;
        park_[pi] = -1;
        return true;
      }
      trail_.push_back({TrailEntry::advance, pi, park_[pi]});
      park_[pi] = -1;
      ++pos_[pi];
    }
    park_[pi] = -1;
    return true;
  }

  bool set_cell(int t, int8_t v) {
    if (table_[t] >= 0) return table_[t] == v;
    table_[t] = v;
    trail_.push_back({TrailEntry::assign, t, 0});
    // Associativity consequences around the new entry.
    const int g = t / m_, f = t % m_;
    if (!propagate_around(g, f)) return false;
    // Wake permutations parked on this cell.
    auto& list = parked_[t];
    for (size_t k = 0; k < list.size();) {
      const int pi = list[k];
      if (dead_[pi] || park_[pi] != t) {  // stale entry
        list[k] = list.back();
        list.pop_back();
        continue;
      }
      list[k] = list.back();
      list.pop_back();
      if (!advance(pi)) return false;
    }
    return true;
  }

  bool propagate_around(int g, int f) {
    // (g, f, c): g∘(f∘c) = (g∘f)∘c for non-identity c.
    for (int c = 0; c < m_; ++c) {
      if (is_ident(c) || acod_[c] != adom_[f]) continue;
      if (!check_triple(g, f, c)) return false;
    }
    // (a, g, f): a∘(g∘f) = (a∘g)∘f.
    for (int a = 0; a < m_; ++a) {
      if (is_ident(a) || adom_[a] != acod_[g]) continue;
      if (!check_triple(a, g, f)) return false;
    }
    // Cells whose value equals g or f feed outer products.
    const int8_t val = table_[g * m_ + f];
    for (const auto& [a, b] : cells_) {
      const int8_t ab = table_[a * m_ + b];
      if (ab < 0) continue;
      if (ab == g && adom_[b] == acod_[f] && !check_triple(a, b, f)) return false;
      if (ab == f && acod_[a] == adom_[g] && !check_triple(g, a, b)) return false;
    }
    (void)val;
    return true;
  }

  bool check_triple(int a, int b, int c) {
    const int8_t ab = table_[a * m_ + b];
    const int8_t bc = table_[b * m_ + c];
    if (ab < 0 || bc < 0) return true;
    const int left_cell = ab * m_ + c;
    const int right_cell = a * m_ + bc;
    const int8_t left = table_[left_cell];
    const int8_t right = table_[right_cell];
    if (left >= 0 && right >= 0) return left == right;
    if (left >= 0) return set_cell(right_cell, left);
    if (right >= 0) return set_cell(left_cell, right);
    return true;
  }

  bool choose(int cell, int8_t v) {
    const auto [g, f] = cells_[cell];
    return set_cell(g * m_ + f, v);
  }

  size_t mark() const { return trail_.size(); }

  void rewind(size_t mark) {
    while (trail_.size() > mark) {
      const TrailEntry e = trail_.back();
      trail_.pop_back();
      switch (e.kind) {
        case TrailEntry::assign:
          table_[e.a] = -1;
          break;
        case TrailEntry::advance:
          --pos_[e.a];
          park_[e.a] = e.b;
          if (e.b >= 0) parked_[e.b].push_back(e.a);
          break;
        case TrailEntry::kill:
          dead_[e.a] = 0;
          park_[e.a] = e.b;
          if (e.b >= 0) parked_[e.b].push_back(e.a);
          break;
      }
    }
  }

  void dfs(int from) {
    int cell = from;
    while (cell < static_cast<int>(cells_.size())) {
      const auto [g, f] = cells_[cell];
      if (table_[g * m_ + f] >= 0) {
        ++cell;
        continue;
      }
      for (int8_t v : values_[cell]) {
        const size_t m = mark();
        if (choose(cell, v)) dfs(cell + 1);
        rewind(m);
      }
      return;
    }
    emit();
  }

  void collect_prefixes(int depth, std::vector<int8_t>& cur,
                        std::vector<std::vector<int8_t>>& out) {
    reset();
    if (!node_ok_) return;
    gather(0, depth, cur, out);
  }

  void gather(int cell, int depth, std::vector<int8_t>& cur,
              std::vector<std::vector<int8_t>>& out) {
    if (static_cast<int>(cur.size()) == depth || cell >= static_cast<int>(cells_.size())) {
      if (!cur.empty() || cell >= static_cast<int>(cells_.size())) out.push_back(cur);
      return;
    }
    // Prefixes record values for the first `depth` cells regardless of
    // forcing, so replay stays well-defined.
    const auto [g, f] = cells_[cell];
    const int8_t fixed = table_[g * m_ + f];
    for (int8_t v : values_[cell]) {
      if (fixed >= 0 && v != fixed) continue;
      const size_t m = mark();
      cur.push_back(v);
      if (choose(cell, v)) gather(cell + 1, depth, cur, out);
      cur.pop_back();
      rewind(m);
    }
  }

  void emit() {
    FiniteCategory cat;
    const int n = shape_.n;
    for (int i = 0; i < n; ++i) cat.objects.push_back("o" + std::to_string(i));
    for (int a = 0; a < m_; ++a)
      cat.arrows.push_back({"a" + std::to_string(a), adom_[a], acod_[a]});
    cat.identity.assign(n, -1);
    for (int i = 0; i < n; ++i) cat.identity[i] = ident_[i];
    cat.table.assign(m_ * m_, -1);
    for (int g = 0; g < m_; ++g)
      for (int f = 0; f < m_; ++f)
        if (acod_[f] == adom_[g]) cat.table[g * m_ + f] = table_[g * m_ + f];
    cat.finalize();
    sink_(cat);
  }
};

FiniteCategory empty_category() {
  FiniteCategory cat;
  cat.finalize();
  return cat;
}

}  // namespace

void enumerate_categories(const CategoryBounds& bounds,
                          const std::function<void(const FiniteCategory&)>& sink, bool parallel) {
  if (bounds.max_objects < 0 || bounds.max_arrows < 0 || bounds.max_objects > kHardBounds.max_objects ||
      bounds.max_arrows > kHardBounds.max_arrows)
    throw std::invalid_argument("size bound exceeded");

  sink(empty_category());
  for (int n = 1; n <= bounds.max_objects; ++n) {
    if (n > bounds.max_arrows) break;  // identities alone exceed the budget
    for (const Shape& shape : enumerate_shapes(n, bounds.max_arrows)) {
      TableSearch probe(shape, sink);
      const int split = std::min(2, probe.num_choice_cells());
      const auto prefixes = probe.prefixes(split);
      if (!parallel || prefixes.size() <= 1) {
        for (const auto& prefix : prefixes) probe.run(prefix);
      } else {
#ifdef _OPENMP
#pragma omp parallel
        {
          TableSearch worker(shape, sink);
#pragma omp for schedule(dynamic)
          for (size_t i = 0; i < prefixes.size(); ++i) worker.run(prefixes[i]);
        }
#else
        for (const auto& prefix : prefixes) probe.run(prefix);
#endif
      }
    }
  }
}

std::string category_key(const FiniteCategory& cat) {
  std::string key;
  auto push = [&](int v) { key.push_back(static_cast<char>('0' + v)); };
  push(cat.num_objects());
  push(cat.num_arrows());
  for (const Arrow& a : cat.arrows) {
    push(a.dom);
    push(a.cod);
  }
  for (ObjId c = 0; c < cat.num_objects(); ++c) push(cat.identity[c]);
  for (ArrId g = 0; g < cat.num_arrows(); ++g)
    for (ArrId f = 0; f < cat.num_arrows(); ++f)
      key.push_back(static_cast<char>('A' + cat.compose(g, f) + 1));
  return key;
}

std::vector<FiniteCategory> enumerate_categories_list(const CategoryBounds& bounds, bool parallel) {
  std::vector<FiniteCategory> out;
#ifdef _OPENMP
  omp_lock_t lock;
  omp_init_lock(&lock);
  enumerate_categories(
      bounds,
      [&](const FiniteCategory& cat) {
        omp_set_lock(&lock);
        out.push_back(cat);
        omp_unset_lock(&lock);
      },
      parallel);
  omp_destroy_lock(&lock);
#else
  enumerate_categories(bounds, [&](const FiniteCategory& cat) { out.push_back(cat); }, parallel);
#endif
  std::sort(out.begin(), out.end(), [](const FiniteCategory& a, const FiniteCategory& b) {
    return category_key(a) < category_key(b);
  });
  return out;
}

bool categories_isomorphic(const FiniteCategory& a, const FiniteCategory& b) {
  if (a.num_objects() != b.num_objects() || a.num_arrows() != b.num_arrows()) return false;
  const int n = a.num_objects();
  std::vector<int> sigma(n, -1);
  std::vector<char> used(n, 0);

  // With objects matched, match arrows hom-set by hom-set and check the
  // composition tables agree.
  auto arrows_match = [&]() {
    std::vector<int> pi(a.num_arrows(), -1);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> blocks;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<int> src, dst;
        for (ArrId f : a.hom(i, j))
          if (!a.is_identity(f)) src.push_back(f);
        for (ArrId f : b.hom(sigma[i], sigma[j]))
          if (!b.is_identity(f)) dst.push_back(f);
        if (src.size() != dst.size()) return false;
        if (!src.empty()) blocks.push_back({src, dst});
      }
    for (int i = 0; i < n; ++i) pi[a.identity[i]] = b.identity[sigma[i]];

    auto tables_agree = [&]() {
      for (ArrId g = 0; g < a.num_arrows(); ++g)
        for (ArrId f = 0; f < a.num_arrows(); ++f)
          if (a.composable(g, f) && pi[a.compose(g, f)] != b.compose(pi[g], pi[f])) return false;
      return true;
    };

    auto rec = [&](auto&& self, size_t bi) -> bool {
      if (bi == blocks.size()) return tables_agree();
      auto [src, dst] = blocks[bi];
      std::sort(dst.begin(), dst.end());
      do {
        for (size_t t = 0; t < src.size(); ++t) pi[src[t]] = dst[t];
        if (self(self, bi + 1)) return true;
      } while (std::next_permutation(dst.begin(), dst.end()));
      return false;
    };
    return rec(rec, 0);
  };

  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return arrows_match();
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      bool sizes_ok = true;
      for (int k = 0; k < i && sizes_ok; ++k)
        sizes_ok = a.hom(i, k).size() == b.hom(j, sigma[k]).size() &&
                   a.hom(k, i).size() == b.hom(sigma[k], j).size();
      if (!sizes_ok || a.hom(i, i).size() != b.hom(j, j).size()) continue;
      sigma[i] = j;
      used[j] = 1;
      if (self(self, i + 1)) return true;
      used[j] = 0;
      sigma[i] = -1;
    }
    return false;
  };
  return rec(rec, 0);
}

std::vector<FiniteCategory> naive_enumerate_categories(const CategoryBounds& bounds) {
  if (bounds.max_arrows > 5) throw std::invalid_argument("naive enumeration is exponential; keep bounds tiny");
  std::vector<FiniteCategory> out;
  out.push_back(empty_category());

  for (int n = 1; n <= bounds.max_objects && n <= bounds.max_arrows; ++n) {
    for (int m = n; m <= bounds.max_arrows; ++m) {
      const int extra = m - n;
      // Non-identity arrows with non-decreasing (dom, cod) labels; any
      // labeled category is isomorphic to one of this form.
      std::vector<std::pair<int, int>> slots(extra);
      auto try_tables = [&]() {
        RawCategory raw;
        for (int i = 0; i < n; ++i) raw.objects.push_back("o" + std::to_string(i));
        for (int i = 0; i < n; ++i) {
          raw.arrows.push_back({"i" + std::to_string(i), raw.objects[i], raw.objects[i]});
          raw.identities[raw.objects[i]] = raw.arrows.back().id;
        }
        for (int k = 0; k < extra; ++k)
          raw.arrows.push_back(
              {"x" + std::to_string(k), raw.objects[slots[k].first], raw.objects[slots[k].second]});

        // All composable non-identity pairs.
        std::vector<std::pair<int, int>> cells;
        for (int g = 0; g < extra; ++g)
          for (int f = 0; f < extra; ++f)
            if (slots[f].second == slots[g].first) cells.push_back({g, f});
        std::vector<int> choice(cells.size(), 0);

        auto candidates = [&](int cell) {
          std::vector<std::string> ids;
          const int i = slots[cells[cell].second].first;
          const int j = slots[cells[cell].first].second;
          if (i == j) ids.push_back("i" + std::to_string(i));
          for (int k = 0; k < extra; ++k)
            if (slots[k] == std::make_pair(i, j)) ids.push_back("x" + std::to_string(k));
          return ids;
        };

        auto rec = [&](auto&& self, size_t cell) -> void {
          if (cell == cells.size()) {
            RawCategory attempt = raw;
            for (size_t t = 0; t < cells.size(); ++t)
              attempt.compose.push_back({"x" + std::to_string(cells[t].first),
                                         "x" + std::to_string(cells[t].second),
                                         candidates(static_cast<int>(t))[choice[t]]});
            CategoryValidation v = validate_category(attempt);
            if (!v.ok()) return;
            for (const FiniteCategory& seen : out)
              if (categories_isomorphic(seen, *v.category)) return;
            out.push_back(std::move(*v.category));
            return;
          }
          const auto ids = candidates(static_cast<int>(cell));
          for (size_t k = 0; k < ids.size(); ++k) {
            choice[cell] = static_cast<int>(k);
            self(self, cell + 1);
          }
        };
        rec(rec, 0);
      };

      auto fill_slots = [&](auto&& self, int k, int from) -> void {
        if (k == extra) {
          try_tables();
          return;
        }
        for (int code = from; code < n * n; ++code) {
          slots[k] = {code / n, code % n};
          self(self, k + 1, code);
        }
      };
      fill_slots(fill_slots, 0, 0);
    }
  }
  std::sort(out.begin(), out.end(), [](const FiniteCategory& a, const FiniteCategory& b) {
    return category_key(a) < category_key(b);
  });
  return out;
}

}  // namespace toposcan
