#include "ea/structure.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>

namespace ea {

int ord_of(const EffectAlgebra& e, int x) {
  if (x == e.zero) throw std::invalid_argument("ord_of: undefined for zero");
  int k = 1;
  int acc = x;
  while (e.at(acc, x) != kUndef) {
    acc = e.at(acc, x);
    ++k;
    internal_check(k <= e.n, "partial sums of a nonzero element strictly increase");
  }
  return k;
}

std::uint64_t atoms(const EffectAlgebra& e, const DerivedStructure& d) {
  std::uint64_t out = 0;
  for (int x = 0; x < e.n; ++x) {
    if (x == e.zero) continue;
    if ((d.below[x] & ~bit(x) & ~bit(e.zero)) == 0) out |= bit(x);
  }
  return out;
}

std::uint64_t sharp_set(const EffectAlgebra& e, const DerivedStructure& d) {
  std::uint64_t out = 0;
  for (int x = 0; x < e.n; ++x) {
    std::uint64_t lb = d.lower_bounds(x, d.complement[x]);
    bool only_zero = lb == bit(e.zero);
    auto meet = bound(d, x, d.complement[x], BoundKind::kMeet);
    internal_check(only_zero == (meet && *meet == e.zero),
                   "the two sharpness formulations agree");
    if (only_zero) out |= bit(x);
  }
  return out;
}

bool is_principal(const EffectAlgebra& e, const DerivedStructure& d, int x) {
  bool ok = true;
  for_bits(d.below[x], [&](int y) {
    for_bits(d.below[x], [&](int z) {
      int s = e.at(y, z);
      if (s != kUndef && !d.leq(s, x)) ok = false;
    });
  });
  return ok;
}

namespace {

bool splits_across(const EffectAlgebra& e, const DerivedStructure& d, int x, int y) {
  bool found = false;
  for_bits(d.below[x], [&](int y1) {
    for_bits(d.below[d.complement[x]], [&](int y2) {
      if (e.at(y1, y2) == y) found = true;
    });
  });
  return found;
}

// Meet restricted to a sub-poset q: greatest element of the common lower
// bounds that lie in q.
std::optional<int> meet_in(const DerivedStructure& d, std::uint64_t q, int x, int y) {
  std::uint64_t set = d.lower_bounds(x, y) & q;
  std::optional<int> found;
  for_bits(set, [&](int z) {
    if ((set & ~d.below[z]) == 0) found = z;
  });
  return found;
}

std::optional<int> join_in(const DerivedStructure& d, std::uint64_t q, int x, int y) {
  std::uint64_t set = d.upper_bounds(x, y) & q;
  std::optional<int> found;
  for_bits(set, [&](int z) {
    if ((set & ~d.above[z]) == 0) found = z;
  });
  return found;
}

void check_center_laws(const EffectAlgebra& e, const DerivedStructure& d,
                       std::uint64_t c) {
  internal_check(is_sub_effect_algebra(e, c), "center is a sub-effect algebra");

  // Boolean order on the center: lattice, distributive, complemented.
  // Meets and joins of central pairs computed in the full algebra must exist,
  // stay central, and agree with the meets inside the center sub-poset.
  for_bits(c, [&](int x) {
    internal_check(has_bit(c, d.complement[x]), "center closed under complement");
    for_bits(c, [&](int y) {
      auto m = bound(d, x, y, BoundKind::kMeet);
      auto j = bound(d, x, y, BoundKind::kJoin);
      internal_check(m && j, "central pairs have meet and join");
      internal_check(has_bit(c, *m) && has_bit(c, *j), "central meet/join central");
      auto mc = meet_in(d, c, x, y);
      auto jc = join_in(d, c, x, y);
      internal_check(mc && *mc == *m && jc && *jc == *j,
                     "center meets agree with ambient meets");
      if (e.at(x, y) != kUndef) {
        internal_check(*j == e.at(x, y) && *m == e.zero,
                       "orthogonal central pair: join is the sum, meet is zero");
      }
    });
    auto m = bound(d, x, d.complement[x], BoundKind::kMeet);
    auto j = bound(d, x, d.complement[x], BoundKind::kJoin);
    internal_check(m && *m == e.zero && j && *j == e.unit,
                   "center complemented within itself");
  });
  for_bits(c, [&](int x) {
    for_bits(c, [&](int y) {
      for_bits(c, [&](int z) {
        int yz = *join_in(d, c, y, z);
        int lhs = *meet_in(d, c, x, yz);
        int rhs = *join_in(d, c, *meet_in(d, c, x, y), *meet_in(d, c, x, z));
        internal_check(lhs == rhs, "center is distributive");
      });
    });
  });

  // Splitting identity: y = (y meet x) + (y meet x') for every y and central x.
  for_bits(c, [&](int x) {
    for (int y = 0; y < e.n; ++y) {
      auto m1 = bound(d, y, x, BoundKind::kMeet);
      auto m2 = bound(d, y, d.complement[x], BoundKind::kMeet);
      internal_check(m1 && m2, "meets with central elements exist");
      internal_check(e.at(*m1, *m2) == y, "every element splits across a central one");
    }
  });
}

}  // namespace

std::uint64_t center(const EffectAlgebra& e, const DerivedStructure& d) {
  std::uint64_t out = 0;
  for (int x = 0; x < e.n; ++x) {
    if (!is_principal(e, d, x) || !is_principal(e, d, d.complement[x])) continue;
    bool ok = true;
    for (int y = 0; y < e.n && ok; ++y)
      if (!splits_across(e, d, x, y)) ok = false;
    if (ok) out |= bit(x);
  }
  internal_check(has_bit(out, e.zero) && has_bit(out, e.unit),
                 "zero and unit are central");
  check_center_laws(e, d, out);
  return out;
}

bool is_sub_effect_algebra(const EffectAlgebra& e, std::uint64_t q) {
  if (!has_bit(q, e.unit)) return false;
  for (int x = 0; x < e.n; ++x)
    for (int y = x; y < e.n; ++y) {
      int z = e.at(x, y);
      if (z == kUndef) continue;
      int inside = (has_bit(q, x) ? 1 : 0) + (has_bit(q, y) ? 1 : 0) +
                   (has_bit(q, z) ? 1 : 0);
      if (inside >= 2 && !(has_bit(q, x) && has_bit(q, y) && has_bit(q, z)))
        return false;
    }
  return true;
}

SubAlgebra induced_sub_ea(const EffectAlgebra& e, std::uint64_t members) {
  internal_check(is_sub_effect_algebra(e, members),
                 "induced algebra needs a closed carrier");
  SubAlgebra sub;
  std::vector<int> from(e.n, kUndef);
  for_bits(members, [&](int x) {
    from[x] = static_cast<int>(sub.to_parent.size());
    sub.to_parent.push_back(x);
  });
  int m = static_cast<int>(sub.to_parent.size());
  std::vector<std::vector<int>> rows(m, std::vector<int>(m, kUndef));
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back(e.label(sub.to_parent[i]));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int z = e.at(sub.to_parent[i], sub.to_parent[j]);
      if (z == kUndef) continue;
      internal_check(from[z] != kUndef, "closed carrier keeps sums inside");
      rows[i][j] = from[z];
    }
  sub.algebra = make_effect_algebra(m, from[e.zero], from[e.unit], rows, labels);
  return sub;
}

MeagerPart meager_gea(const EffectAlgebra& e, const DerivedStructure& d) {
  std::uint64_t sharp = sharp_set(e, d);
  MeagerPart part;
  part.from_parent.assign(e.n, kUndef);
  for (int x = 0; x < e.n; ++x) {
    if ((d.below[x] & sharp & ~bit(e.zero)) != 0) continue;
    part.from_parent[x] = static_cast<int>(part.to_parent.size());
    part.to_parent.push_back(x);
    part.members |= bit(x);
  }
  int m = static_cast<int>(part.to_parent.size());
  std::vector<std::vector<int>> rows(m, std::vector<int>(m, kUndef));
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) labels.push_back(e.label(part.to_parent[i]));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int z = e.at(part.to_parent[i], part.to_parent[j]);
      if (z != kUndef && part.from_parent[z] != kUndef)
        rows[i][j] = part.from_parent[z];
    }
  part.gea = make_gea(m, part.from_parent[e.zero], rows, labels);

  internal_check(validate_gea(part.gea).valid,
                 "the meager part is a generalized effect algebra");
  for_bits(part.members, [&](int x) {
    internal_check((d.below[x] & ~part.members) == 0, "meager part downward closed");
    for_bits(d.below[x], [&](int y) {
      internal_check(has_bit(part.members, d.ominus(x, y)),
                     "differences of meager elements are meager");
    });
  });
  return part;
}

TildeHat tilde_hat(const EffectAlgebra& e, const DerivedStructure& d, int x) {
  std::uint64_t sharp = sharp_set(e, d);
  TildeHat th;
  std::uint64_t ups = d.above[x] & sharp;
  for_bits(ups, [&](int s) {
    if ((ups & ~d.above[s]) == 0) th.hat = s;
  });
  std::uint64_t downs = d.below[x] & sharp;
  for_bits(downs, [&](int s) {
    if ((downs & ~d.below[s]) == 0) th.tilde = s;
  });
  return th;
}

bool is_sharply_dominating(const EffectAlgebra& e, const DerivedStructure& d,
                           std::vector<int>* witness) {
  bool all_hat = true, all_tilde = true;
  int bad = kUndef;
  for (int x = 0; x < e.n; ++x) {
    auto th = tilde_hat(e, d, x);
    if (!th.hat) {
      all_hat = false;
      if (bad == kUndef) bad = x;
    }
    if (!th.tilde) all_tilde = false;
  }
  internal_check(all_hat == all_tilde,
                 "least sharp covers exist iff greatest sharp lower bounds do");
  if (!all_hat && witness) *witness = {bad};
  return all_hat;
}

Decomposition decompose(const EffectAlgebra& e, const DerivedStructure& d, int x) {
  if (!is_sharply_dominating(e, d))
    throw std::invalid_argument("decompose: algebra is not sharply dominating");
  auto th = tilde_hat(e, d, x);
  int xs = *th.tilde;
  int xm = d.ominus(x, xs);

  std::uint64_t sharp = sharp_set(e, d);
  std::uint64_t meager = meager_gea(e, d).members;
  int count = 0;
  for_bits(sharp, [&](int s) {
    for_bits(meager, [&](int m) {
      if (e.at(s, m) == x) ++count;
    });
  });
  internal_check(count == 1 && has_bit(meager, xm),
                 "sharp/meager decomposition is unique");
  auto meet = bound(d, xs, xm, BoundKind::kMeet);
  internal_check(meet && *meet == e.zero, "decomposition parts meet in zero");
  if (classify(e, d).lattice) {
    auto join = bound(d, xs, xm, BoundKind::kJoin);
    internal_check(join && *join == x, "decomposition parts join to x in a lattice");
  }
  return {xs, xm};
}

namespace {

// Reachability over states (running sum, set of subsum values, least index
// allowed next). Family members are added in non-decreasing index order; any
// orthogonal family can be reordered that way, so nothing is missed. Depth is
// bounded because partial sums of nonzero elements strictly increase.
struct FamilySearch {
  const EffectAlgebra& e;
  std::uint64_t pool;
  std::set<std::array<std::uint64_t, 2>> visited;

  bool seen(int sum, std::uint64_t subs, int min_next) {
    std::array<std::uint64_t, 2> key{
        subs, (static_cast<std::uint64_t>(sum) << 32) | static_cast<std::uint32_t>(min_next)};
    return !visited.insert(key).second;
  }

  std::uint64_t extend(std::uint64_t subs, int x) const {
    std::uint64_t out = subs;
    for_bits(subs, [&](int t) {
      int u = e.at(t, x);
      internal_check(u != kUndef, "subsums of an orthogonal family stay summable");
      out |= bit(u);
    });
    return out;
  }
};

bool covers(const EffectAlgebra& e, FamilySearch& fs, int sum, std::uint64_t subs,
            int min_next, std::uint64_t targets) {
  if ((targets & ~subs) == 0) return true;
  if (fs.seen(sum, subs, min_next)) return false;
  for (int x = min_next; x < e.n; ++x) {
    if (!has_bit(fs.pool, x)) continue;
    int next = e.at(sum, x);
    if (next == kUndef) continue;
    if (covers(e, fs, next, fs.extend(subs, x), x, targets)) return true;
  }
  return false;
}

void unity_subsets(const EffectAlgebra& e, FamilySearch& fs, int sum,
                   std::uint64_t subs, int min_next,
                   std::set<std::uint64_t>& out) {
  if (sum == e.unit) {
    out.insert(subs);
    return;
  }
  if (fs.seen(sum, subs, min_next)) return;
  for (int x = min_next; x < e.n; ++x) {
    if (!has_bit(fs.pool, x)) continue;
    int next = e.at(sum, x);
    if (next == kUndef) continue;
    unity_subsets(e, fs, next, fs.extend(subs, x), x, out);
  }
}

}  // namespace

bool compatible(const EffectAlgebra& e, const DerivedStructure&,
                std::uint64_t members, bool internal) {
  std::uint64_t pool = (internal ? members : full_mask(e.n)) & ~bit(e.zero);
  FamilySearch fs{e, pool, {}};
  return covers(e, fs, e.zero, bit(e.zero), 0, members);
}

namespace {

std::vector<std::uint64_t> maximal_sets(std::set<std::uint64_t> sets) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : sets) {
    bool dominated = false;
    for (std::uint64_t t : sets)
      if (t != s && (s & ~t) == 0) dominated = true;
    if (!dominated) out.push_back(s);
  }
  return out;
}

std::vector<std::uint64_t> blocks_by_compatibility(const EffectAlgebra& e) {
  FamilySearch fs{e, full_mask(e.n) & ~bit(e.zero), {}};
  std::set<std::uint64_t> subsum_sets;
  unity_subsets(e, fs, e.zero, bit(e.zero), 0, subsum_sets);
  return maximal_sets(std::move(subsum_sets));
}

bool rdp_inside(const EffectAlgebra& e, const DerivedStructure& d, std::uint64_t q) {
  bool ok = true;
  for_bits(q, [&](int v1) {
    for_bits(q, [&](int v2) {
      int z = e.at(v1, v2);
      if (z == kUndef) return;
      for_bits(d.below[z] & q, [&](int u) {
        bool split = false;
        for_bits(d.below[v1] & q, [&](int u1) {
          for_bits(d.below[v2] & q, [&](int u2) {
            if (e.at(u1, u2) == u) split = true;
          });
        });
        if (!split) ok = false;
      });
    });
  });
  return ok;
}

std::vector<std::uint64_t> blocks_by_rdp(const EffectAlgebra& e,
                                         const DerivedStructure& d) {
  if (e.n > 24)
    throw std::runtime_error("blocks: carrier too large for the exhaustive route");
  std::vector<std::array<int, 3>> sums;
  for (int x = 0; x < e.n; ++x)
    for (int y = x; y < e.n; ++y)
      if (e.at(x, y) != kUndef) sums.push_back({x, y, e.at(x, y)});

  std::set<std::uint64_t> found;
  std::uint64_t need = bit(e.zero) | bit(e.unit);
  for (std::uint64_t q = 0; q <= full_mask(e.n); ++q) {
    if ((q & need) != need) continue;
    bool closed = true;
    for (const auto& s : sums) {
      int inside = (has_bit(q, s[0]) ? 1 : 0) + (has_bit(q, s[1]) ? 1 : 0) +
                   (has_bit(q, s[2]) ? 1 : 0);
      if (inside >= 2 && inside < 3 &&
          !(has_bit(q, s[0]) && has_bit(q, s[1]) && has_bit(q, s[2]))) {
        closed = false;
        break;
      }
    }
    if (!closed) continue;
    if (rdp_inside(e, d, q)) found.insert(q);
  }
  return maximal_sets(std::move(found));
}

std::vector<Block> sort_blocks(std::vector<std::uint64_t> masks) {
  std::sort(masks.begin(), masks.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = mask_size(a), pb = mask_size(b);
    if (pa != pb) return pa < pb;
    return a < b;  // masks compare like sorted index lists of equal length
  });
  std::vector<Block> out;
  for (std::uint64_t m : masks) out.push_back({m, true});
  return out;
}

}  // namespace

BlocksResult blocks(const EffectAlgebra& e, const DerivedStructure& d) {
  BlocksResult result;
  result.homogeneous = is_homogeneous(e, d);
  auto by_compat = blocks_by_compatibility(e);
  std::sort(by_compat.begin(), by_compat.end());

  if (result.homogeneous) {
    auto by_rdp = blocks_by_rdp(e, d);
    std::sort(by_rdp.begin(), by_rdp.end());
    internal_check(by_compat == by_rdp,
                   "the two block constructions agree on homogeneous input");

    std::uint64_t covered = 0;
    for (std::uint64_t b : by_compat) covered |= b;
    internal_check(covered == full_mask(e.n), "blocks cover the carrier");

    std::uint64_t sharp = sharp_set(e, d);
    for (std::uint64_t b : by_compat) {
      auto sub = induced_sub_ea(e, b);
      auto sub_d = derive(sub.algebra);
      std::uint64_t c = center(sub.algebra, sub_d);
      std::uint64_t c_in_e = 0;
      for_bits(c, [&](int i) { c_in_e |= bit(sub.to_parent[i]); });
      internal_check(c_in_e == (sharp & b),
                     "block center equals the sharp elements of the block");
      for_bits(b, [&](int x) {
        internal_check((d.lower_bounds(x, d.complement[x]) & ~b) == 0,
                       "common lower bounds of x and x' stay in the block");
      });
    }
  }
  result.blocks = sort_blocks(std::move(by_compat));
  return result;
}

bool is_homogeneous(const EffectAlgebra& e, const DerivedStructure& d,
                    std::vector<int>* witness) {
  for (int v1 = 0; v1 < e.n; ++v1)
    for (int v2 = v1; v2 < e.n; ++v2) {
      int z = e.at(v1, v2);
      if (z == kUndef) continue;
      for (int u = 0; u < e.n; ++u) {
        if (!d.leq(u, z) || !d.leq(z, d.complement[u])) continue;
        bool split = false;
        for_bits(d.below[v1], [&](int u1) {
          for_bits(d.below[v2], [&](int u2) {
            if (e.at(u1, u2) == u) split = true;
          });
        });
        if (!split) {
          if (witness) *witness = {u, v1, v2};
          return false;
        }
      }
    }
  return true;
}

namespace {

bool orthoalgebra_flag(const EffectAlgebra& e) {
  for (int x = 0; x < e.n; ++x)
    if (x != e.zero && e.defined(x, x)) return false;
  return true;
}

bool lattice_flag(const DerivedStructure& d) {
  for (int x = 0; x < d.n; ++x)
    for (int y = 0; y < d.n; ++y)
      if (!bound(d, x, y, BoundKind::kMeet) || !bound(d, x, y, BoundKind::kJoin))
        return false;
  return true;
}

}  // namespace

bool has_rdp(const EffectAlgebra& e, const DerivedStructure& d,
             std::vector<int>* witness) {
  bool direct = true;
  std::vector<int> w;
  for (int v1 = 0; v1 < e.n && direct; ++v1)
    for (int v2 = v1; v2 < e.n && direct; ++v2) {
      int z = e.at(v1, v2);
      if (z == kUndef) continue;
      for_bits(d.below[z], [&](int u) {
        bool split = false;
        for_bits(d.below[v1], [&](int u1) {
          for_bits(d.below[v2], [&](int u2) {
            if (e.at(u1, u2) == u) split = true;
          });
        });
        if (!split && direct) {
          direct = false;
          w = {u, v1, v2};
        }
      });
    }

  bool homog = is_homogeneous(e, d);
  bool compat_whole = compatible(e, d, full_mask(e.n), false);
  internal_check(direct == (homog && compat_whole),
                 "Riesz splitting equals homogeneity plus whole-carrier compatibility");
  internal_check(!orthoalgebra_flag(e) || homog, "orthoalgebras are homogeneous");
  internal_check(!lattice_flag(d) || homog, "lattice effect algebras are homogeneous");
  if (!direct && witness) *witness = w;
  return direct;
}

Classification classify(const EffectAlgebra& e, const DerivedStructure& d) {
  Classification c;
  c.orthoalgebra = orthoalgebra_flag(e);
  c.lattice = lattice_flag(d);
  c.mv = c.lattice && has_rdp(e, d);
  return c;
}

namespace {

bool supremum_is(const DerivedStructure& d, std::uint64_t set, int expected) {
  std::uint64_t ub = ~std::uint64_t{0};
  for_bits(set, [&](int t) { ub &= d.above[t]; });
  ub &= full_mask(d.n);
  std::optional<int> least;
  for_bits(ub, [&](int z) {
    if ((ub & ~d.above[z]) == 0) least = z;
  });
  return least && *least == expected;
}

bool orthosum_states_ok(const EffectAlgebra& e, const DerivedStructure& d,
                        FamilySearch& fs, int sum, std::uint64_t subs, int min_next) {
  if (!supremum_is(d, subs, sum)) return false;
  if (fs.seen(sum, subs, min_next)) return true;
  for (int x = min_next; x < e.n; ++x) {
    if (!has_bit(fs.pool, x)) continue;
    int next = e.at(sum, x);
    if (next == kUndef) continue;
    if (!orthosum_states_ok(e, d, fs, next, fs.extend(subs, x), x)) return false;
  }
  return true;
}

}  // namespace

bool is_orthocomplete(const EffectAlgebra& e, const DerivedStructure& d) {
  FamilySearch fs{e, full_mask(e.n) & ~bit(e.zero), {}};
  return orthosum_states_ok(e, d, fs, e.zero, bit(e.zero), 0);
}

bool has_maximality_property(const EffectAlgebra& e, const DerivedStructure& d) {
  for (int u = 0; u < e.n; ++u)
    for (int v = 0; v < e.n; ++v) {
      std::uint64_t lb = d.lower_bounds(u, v);
      bool has_maximal = false;
      for_bits(lb, [&](int w) {
        if ((lb & d.above[w] & ~bit(w)) == 0) has_maximal = true;
      });
      if (!has_maximal) return false;
    }
  return true;
}

}  // namespace ea
