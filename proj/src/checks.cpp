#include "ea/checks.hpp"

#include <sstream>

namespace ea {

namespace {

CheckResult fail(const EffectAlgebra& e, const std::string& what,
                 std::vector<int> witness) {
  return {false, what + " at " + label_tuple(e, witness)};
}

}  // namespace

CheckResult check_order_laws(const EffectAlgebra& e, const DerivedStructure& d) {
  for (int x = 0; x < e.n; ++x) {
    if (!d.leq(x, x)) return fail(e, "order not reflexive", {x});
    if (!d.leq(e.zero, x) || !d.leq(x, e.unit))
      return fail(e, "zero/unit not bottom/top", {x});
    if (d.complement[d.complement[x]] != x)
      return fail(e, "complement not an involution", {x});
  }
  for (int x = 0; x < e.n; ++x)
    for (int y = 0; y < e.n; ++y) {
      if (d.leq(x, y) && d.leq(y, x) && x != y)
        return fail(e, "order not antisymmetric", {x, y});
      if (d.leq(x, y) != d.leq(d.complement[y], d.complement[x]))
        return fail(e, "complement not order reversing", {x, y});
      bool def = e.defined(x, y);
      if (def != d.leq(x, d.complement[y]))
        return fail(e, "defined iff below the complement fails", {x, y});
      if (def && !d.leq(x, e.at(x, y)))
        return fail(e, "summands not below the sum", {x, y});
      if (def && e.at(x, y) != e.at(y, x))
        return fail(e, "sum not symmetric", {x, y});
      for (int z = 0; z < e.n; ++z)
        if (d.leq(x, y) && d.leq(y, z) && !d.leq(x, z))
          return fail(e, "order not transitive", {x, y, z});
      auto m = bound(d, x, e.zero, BoundKind::kMeet);
      auto j = bound(d, x, e.unit, BoundKind::kJoin);
      if (!m || *m != e.zero || !j || *j != e.unit)
        return fail(e, "bottom/top bound laws fail", {x});
    }
  return {};
}

CheckResult check_center_laws_report(const EffectAlgebra& e,
                                     const DerivedStructure& d) {
  try {
    center(e, d);  // throws std::logic_error when a center law fails
  } catch (const std::logic_error& ex) {
    return {false, ex.what()};
  }
  return {};
}

CheckResult check_central_distributivity(const EffectAlgebra& e,
                                         const DerivedStructure& d) {
  std::uint64_t c = center(e, d);
  for (int x = 0; x < e.n; ++x)
    for (int y = 0; y < e.n; ++y) {
      int z = e.at(x, y);
      if (z == kUndef) continue;
      bool bad = false;
      int bad_c = 0;
      for_bits(c, [&](int cc) {
        auto whole = bound(d, cc, z, BoundKind::kMeet);
        auto mx = bound(d, cc, x, BoundKind::kMeet);
        auto my = bound(d, cc, y, BoundKind::kMeet);
        if (!whole || !mx || !my || e.at(*mx, *my) != *whole) {
          bad = true;
          bad_c = cc;
        }
      });
      if (bad) return fail(e, "meet does not distribute over the sum", {bad_c, x, y});
    }
  for (int x = 0; x < e.n; ++x) {
    bool bad = false;
    int bc = 0, bd = 0;
    for_bits(c, [&](int cc) {
      for_bits(c, [&](int dd) {
        int sum = e.at(cc, dd);
        if (sum == kUndef) return;
        auto whole = bound(d, x, sum, BoundKind::kMeet);
        auto m1 = bound(d, x, cc, BoundKind::kMeet);
        auto m2 = bound(d, x, dd, BoundKind::kMeet);
        if (!whole || !m1 || !m2 || e.at(*m1, *m2) != *whole) {
          bad = true;
          bc = cc;
          bd = dd;
        }
      });
    });
    if (bad) return fail(e, "meet does not distribute over a central sum", {x, bc, bd});
  }
  return {};
}

CheckResult check_homogeneity_links(const EffectAlgebra& e,
                                    const DerivedStructure& d) {
  bool homog = is_homogeneous(e, d);
  auto cls = classify(e, d);
  if (cls.orthoalgebra && !homog) return {false, "orthoalgebra not homogeneous"};
  if (cls.lattice && !homog) return {false, "lattice not homogeneous"};
  bool riesz = has_rdp(e, d);
  bool compat = compatible(e, d, full_mask(e.n), false);
  if (riesz != (homog && compat))
    return {false, "Riesz splitting does not match homogeneity + compatibility"};
  std::uint64_t sharp = sharp_set(e, d);
  if (homog && !is_sub_effect_algebra(e, sharp))
    return {false, "sharp elements not closed in a homogeneous algebra"};
  if (is_sharply_dominating(e, d) && !is_sub_effect_algebra(e, sharp))
    return {false, "sharp elements not closed in a sharply dominating algebra"};
  return {};
}

CheckResult check_block_laws(const EffectAlgebra& e, const DerivedStructure& d) {
  if (!is_homogeneous(e, d)) return {};
  BlocksResult bl;
  try {
    bl = blocks(e, d);  // runs the two-route comparison and the cover laws
  } catch (const std::logic_error& ex) {
    return {false, ex.what()};
  }
  if (e.n <= 8) {
    // every compatible subset lies inside some block
    for (std::uint64_t s = 0; s <= full_mask(e.n); ++s) {
      if (!compatible(e, d, s, false)) continue;
      bool inside = false;
      for (const auto& b : bl.blocks)
        if ((s & ~b.members) == 0) inside = true;
      if (!inside)
        return {false, "compatible subset " + label_set(e, s) + " not inside a block"};
    }
  }
  return {};
}

CheckResult check_meager_cover_laws(const EffectAlgebra& e,
                                    const DerivedStructure& d) {
  std::uint64_t sharp = sharp_set(e, d);
  if (!is_sub_effect_algebra(e, sharp)) return {};
  std::uint64_t meager = meager_gea(e, d).members;

  for (int x = 0; x < e.n; ++x) {
    if (!has_bit(meager, x)) continue;
    auto th = tilde_hat(e, d, x);
    if (th.hat && !has_bit(meager, d.ominus(*th.hat, x)))
      return fail(e, "cover minus meager element not meager", {x});
    for (int y = 0; y < e.n; ++y) {
      if (!has_bit(meager, y)) continue;
      int z = e.at(x, y);
      if (z == kUndef || !has_bit(sharp, z)) continue;
      if (!th.hat || *th.hat != z)
        return fail(e, "sharp sum of meager elements is not the cover", {x, y});
    }
  }
  return {};
}

CheckResult check_unique_decomposition(const EffectAlgebra& e,
                                       const DerivedStructure& d) {
  std::uint64_t sharp = sharp_set(e, d);
  if (!is_sub_effect_algebra(e, sharp)) return {};
  std::uint64_t meager = meager_gea(e, d).members;
  bool lattice = classify(e, d).lattice;

  for (int x = 0; x < e.n; ++x) {
    auto th = tilde_hat(e, d, x);
    if (!th.tilde) continue;
    int xs = *th.tilde;
    int xm = d.ominus(x, xs);
    if (!has_bit(meager, xm))
      return fail(e, "element minus its sharp floor not meager", {x});
    int count = 0;
    for_bits(sharp, [&](int s) {
      for_bits(meager, [&](int m) {
        if (e.at(s, m) == x) ++count;
      });
    });
    if (count != 1) return fail(e, "sharp/meager splitting not unique", {x});
    auto meet = bound(d, xs, xm, BoundKind::kMeet);
    if (!meet || *meet != e.zero)
      return fail(e, "splitting parts do not meet in zero", {x});
    if (lattice) {
      auto join = bound(d, xs, xm, BoundKind::kJoin);
      if (!join || *join != x)
        return fail(e, "splitting parts do not join back", {x});
    }
  }
  return {};
}

CheckResult check_sum_reconstruction(const EffectAlgebra& e,
                                     const DerivedStructure& d) {
  auto ext = extract_triple(e, d);
  TripleCalc calc(ext.triple);
  std::uint64_t sharp = sharp_set(e, d);

  std::vector<int> meager_idx(e.n, kUndef);
  for (std::size_t i = 0; i < ext.meager_to_e.size(); ++i)
    meager_idx[ext.meager_to_e[i]] = static_cast<int>(i);

  int m = ext.triple.meager.n;
  for (int xi = 0; xi < m; ++xi)
    for (int yi = 0; yi < m; ++yi) {
      int x = ext.meager_to_e[xi];
      int y = ext.meager_to_e[yi];

      // both S-set descriptions, element by element
      std::uint64_t source_side = 0;
      for_bits(sharp, [&](int z) {
        auto mx = bound(d, z, x, BoundKind::kMeet);
        auto my = bound(d, z, y, BoundKind::kMeet);
        if (mx && my && e.at(*mx, *my) == z) source_side |= bit(z);
      });
      std::uint64_t triple_side = 0;
      for_bits(calc.s_candidates(xi, yi),
               [&](int si) { triple_side |= bit(ext.sharp_to_e[si]); });
      if (source_side != triple_side)
        return fail(e, "S-set descriptions differ", {x, y});

      auto rebuilt = oplus_via_triple(ext.triple, xi, yi);
      int direct = e.at(x, y);
      if ((direct == kUndef) != !rebuilt)
        return fail(e, "sum existence differs between source and triple", {x, y});
      if (direct != kUndef) {
        int s_e = ext.sharp_to_e[rebuilt->first];
        int m_e = ext.meager_to_e[rebuilt->second];
        if (e.at(s_e, m_e) != direct)
          return fail(e, "recomposed sum differs", {x, y});
      }
    }
  return {};
}

}  // namespace ea
