#include "ea/iso.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ea/structure.hpp"

namespace ea {

std::vector<std::array<int, 5>> element_invariants(const EffectAlgebra& e,
                                                   const DerivedStructure& d) {
  std::uint64_t sharp = sharp_set(e, d);
  std::uint64_t at = atoms(e, d);

  // longest chain from zero, by increasing down-set size
  std::vector<int> order(e.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return mask_size(d.below[a]) < mask_size(d.below[b]);
  });
  std::vector<int> height(e.n, 0);
  for (int x : order)
    for_bits(d.below[x] & ~bit(x),
             [&](int y) { height[x] = std::max(height[x], height[y] + 1); });

  std::vector<std::array<int, 5>> inv(e.n);
  for (int x = 0; x < e.n; ++x) {
    int defined = 0;
    for (int y = 0; y < e.n; ++y)
      if (e.defined(x, y)) ++defined;
    int ord = x == e.zero ? 0 : ord_of(e, x);
    inv[x] = {ord, defined, has_bit(at, x) ? 1 : 0, has_bit(sharp, x) ? 1 : 0,
              height[x]};
  }
  return inv;
}

Fingerprint fingerprint(const EffectAlgebra& e, const DerivedStructure& d) {
  Fingerprint fp;
  fp.sorted_invariants = element_invariants(e, d);
  std::sort(fp.sorted_invariants.begin(), fp.sorted_invariants.end());
  auto c = classify(e, d);
  fp.lattice = c.lattice;
  fp.orthoalgebra = c.orthoalgebra;
  return fp;
}

namespace {

bool verify_morphism(const EffectAlgebra& a, const EffectAlgebra& b,
                     const std::vector<int>& f) {
  if (f[a.zero] != b.zero || f[a.unit] != b.unit) return false;
  for (int x = 0; x < a.n; ++x)
    for (int y = 0; y < a.n; ++y) {
      int z = a.at(x, y);
      int w = b.at(f[x], f[y]);
      if ((z == kUndef) != (w == kUndef)) return false;
      if (z != kUndef && f[z] != w) return false;
    }
  return true;
}

struct IsoSearch {
  const EffectAlgebra& a;
  const EffectAlgebra& b;
  std::vector<int> f;       // a -> b, kUndef when unassigned
  std::vector<bool> used;   // over b
  std::vector<int> order;   // assignment order over a

  bool consistent(int x) const {
    for (int y = 0; y < a.n; ++y) {
      if (f[y] == kUndef) continue;
      for (auto [p, q] : {std::pair{x, y}, std::pair{y, x}}) {
        int z = a.at(p, q);
        int w = b.at(f[p], f[q]);
        if ((z == kUndef) != (w == kUndef)) return false;
        if (z != kUndef && f[z] != kUndef && f[z] != w) return false;
      }
    }
    return true;
  }

  bool extend(std::size_t k, const std::vector<std::vector<int>>& candidates) {
    if (k == order.size()) return true;
    int x = order[k];
    if (f[x] != kUndef) return extend(k + 1, candidates);
    for (int u : candidates[x]) {
      if (used[u]) continue;
      f[x] = u;
      used[u] = true;
      if (consistent(x) && extend(k + 1, candidates)) return true;
      f[x] = kUndef;
      used[u] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const EffectAlgebra& a,
                                                 const EffectAlgebra& b) {
  if (a.n != b.n) return std::nullopt;
  auto da = derive(a);
  auto db = derive(b);
  if (!(fingerprint(a, da) == fingerprint(b, db))) return std::nullopt;

  auto ia = element_invariants(a, da);
  auto ib = element_invariants(b, db);

  std::vector<std::vector<int>> candidates(a.n);
  std::map<std::array<int, 5>, int> class_size;
  for (int u = 0; u < b.n; ++u) ++class_size[ib[u]];
  for (int x = 0; x < a.n; ++x)
    for (int u = 0; u < b.n; ++u)
      if (ia[x] == ib[u]) candidates[x].push_back(u);

  IsoSearch search{a, b, std::vector<int>(a.n, kUndef),
                   std::vector<bool>(b.n, false), {}};
  search.f[a.zero] = b.zero;
  search.used[b.zero] = true;
  search.f[a.unit] = b.unit;
  search.used[b.unit] = true;

  for (int x = 0; x < a.n; ++x)
    if (x != a.zero && x != a.unit) search.order.push_back(x);
  std::sort(search.order.begin(), search.order.end(), [&](int x, int y) {
    return class_size[ia[x]] < class_size[ia[y]];
  });

  if (!search.extend(0, candidates)) return std::nullopt;
  internal_check(verify_morphism(a, b, search.f),
                 "returned bijection is a verified morphism");
  std::vector<int> inverse(b.n, kUndef);
  for (int x = 0; x < a.n; ++x) inverse[search.f[x]] = x;
  internal_check(verify_morphism(b, a, inverse), "inverse is a morphism too");
  return search.f;
}

namespace {

// Table entries of the permuted copy in row-major order, with holes ranked
// past every index so denser prefixes compare smaller.
std::vector<int> permuted_cells(const EffectAlgebra& e, const std::vector<int>& pos) {
  std::vector<int> inv(e.n);
  for (int x = 0; x < e.n; ++x) inv[pos[x]] = x;
  std::vector<int> cells;
  cells.reserve(static_cast<std::size_t>(e.n) * e.n);
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j) {
      int z = e.at(inv[i], inv[j]);
      cells.push_back(z == kUndef ? e.n : pos[z]);
    }
  return cells;
}

void arrange(const std::vector<std::vector<int>>& groups, std::size_t g,
             std::vector<int>& pos, std::vector<int>& slot,
             const EffectAlgebra& e, std::vector<int>& best) {
  if (g == groups.size()) {
    auto cells = permuted_cells(e, pos);
    if (best.empty() || cells < best) best = std::move(cells);
    return;
  }
  std::vector<int> members = groups[g];
  std::sort(members.begin(), members.end());
  do {
    for (std::size_t i = 0; i < members.size(); ++i)
      pos[members[i]] = slot[g] + static_cast<int>(i);
    arrange(groups, g + 1, pos, slot, e, best);
  } while (std::next_permutation(members.begin(), members.end()));
}

}  // namespace

EffectAlgebra canonical_form(const EffectAlgebra& e) {
  auto d = derive(e);
  auto inv = element_invariants(e, d);

  // interior elements grouped by invariant class, classes in invariant order
  std::map<std::array<int, 5>, std::vector<int>> by_class;
  for (int x = 0; x < e.n; ++x)
    if (x != e.zero && x != e.unit) by_class[inv[x]].push_back(x);

  std::vector<std::vector<int>> groups;
  std::vector<int> slot;
  int next = 1;
  double perms = 1;
  for (auto& [key, members] : by_class) {
    slot.push_back(next);
    next += static_cast<int>(members.size());
    for (std::size_t i = 2; i <= members.size(); ++i) perms *= static_cast<double>(i);
    groups.push_back(members);
  }
  if (perms > 2e6)
    throw std::runtime_error("canonical_form: too many label permutations");

  std::vector<int> pos(e.n, 0);
  pos[e.zero] = 0;
  pos[e.unit] = e.n - 1;
  std::vector<int> best;
  arrange(groups, 0, pos, slot, e, best);

  std::vector<std::vector<int>> rows(e.n, std::vector<int>(e.n, kUndef));
  for (int i = 0; i < e.n; ++i)
    for (int j = 0; j < e.n; ++j) {
      int v = best[static_cast<std::size_t>(i) * e.n + j];
      rows[i][j] = v == e.n ? kUndef : v;
    }
  return make_effect_algebra(e.n, 0, e.n - 1, rows);
}

}  // namespace ea
