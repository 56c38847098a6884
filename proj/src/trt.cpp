#include "ea/trt.hpp"

#include <algorithm>
#include <set>

#include "ea/iso.hpp"

namespace ea {

namespace {

// Shared source-side data for the meager-element conditions.
struct Scratch {
  std::uint64_t sharp = 0;
  MeagerPart mp;
  GeaOrder mo;
  std::vector<int> hat;  // per element of e, kUndef when no least sharp cover

  int mea_idx(int x) const { return mp.from_parent[x]; }
};

Scratch make_scratch(const EffectAlgebra& e, const DerivedStructure& d) {
  Scratch s;
  s.sharp = sharp_set(e, d);
  s.mp = meager_gea(e, d);
  s.mo = derive_gea(s.mp.gea);
  s.hat.assign(e.n, kUndef);
  for (int x = 0; x < e.n; ++x) {
    auto th = tilde_hat(e, d, x);
    if (th.hat) s.hat[x] = *th.hat;
  }
  return s;
}

// Meet of two meager elements. Lower bounds of meager elements are meager,
// so the meet in the full order and the meet in the meager order must agree;
// both are computed.
std::optional<int> meager_pair_meet(const DerivedStructure& d,
                                    const Scratch& s, int x, int y) {
  auto in_e = bound(d, x, y, BoundKind::kMeet);
  std::uint64_t lb = s.mo.lower_bounds(s.mea_idx(x), s.mea_idx(y));
  std::optional<int> in_m;
  for_bits(lb, [&](int z) {
    if ((lb & ~s.mo.below[z]) == 0) in_m = s.mp.to_parent[z];
  });
  internal_check(in_e == in_m, "meager meets agree with ambient meets");
  return in_e;
}

// Conditions (i)-(iii) on a candidate counterpart y for meager x, evaluated
// in the source algebra. h(hat(x)) is the meager down-set of hat(x).
bool counterpart_conditions(const EffectAlgebra& e, const DerivedStructure& d,
                            const Scratch& s, int x, int y) {
  int hx = s.hat[x];
  if (!has_bit(s.mp.members, y)) return false;
  if (s.hat[y] != hx) return false;

  auto m = meager_pair_meet(d, s, x, y);
  if (!m) return false;
  int t = d.ominus(y, *m);
  int u = e.at(x, t);
  if (u == kUndef || !has_bit(s.mp.members, u) || !d.leq(u, hx)) return false;

  bool ok = true;
  for_bits(s.mp.members & d.below[hx], [&](int z) {
    int w = e.at(z, x);
    bool lhs = w != kUndef && has_bit(s.mp.members, w) && d.leq(w, hx);
    bool rhs = false;
    if (d.leq(z, y)) {
      int yz = d.ominus(y, z);
      rhs = s.hat[yz] == hx;
    }
    if (lhs != rhs) ok = false;
  });
  return ok;
}

}  // namespace

TrtReport trt_check(const EffectAlgebra& e, const DerivedStructure& d) {
  TrtReport rep;
  rep.homogeneous = is_homogeneous(e, d, &rep.homogeneous_witness);
  rep.sharply_dominating = is_sharply_dominating(e, d, &rep.sharply_dominating_witness);

  Scratch s = make_scratch(e, d);

  rep.block_interval = true;
  auto bl = blocks(e, d);
  for (const auto& b : bl.blocks) {
    if (!rep.block_interval) break;
    for_bits(b.members, [&](int x) {
      if (!rep.block_interval) return;
      auto th = tilde_hat(e, d, x);
      if (!th.tilde) {
        rep.block_interval = false;
        rep.block_interval_witness = {x};
        return;
      }
      std::uint64_t interval = d.above[*th.tilde] & d.below[x];
      std::uint64_t outside = interval & ~b.members;
      if (outside) {
        rep.block_interval = false;
        rep.block_interval_witness = {x, std::countr_zero(outside)};
      }
    });
  }

  rep.unique_y = true;
  for_bits(s.mp.members, [&](int x) {
    if (!rep.unique_y) return;
    if (s.hat[x] == kUndef) {
      rep.unique_y = false;
      rep.unique_y_witness = {x};
      return;
    }
    int y0 = d.ominus(s.hat[x], x);
    std::vector<int> satisfiers;
    for_bits(s.mp.members, [&](int y) {
      if (counterpart_conditions(e, d, s, x, y)) satisfiers.push_back(y);
    });
    if (satisfiers.size() != 1 || satisfiers.front() != y0) {
      rep.unique_y = false;
      rep.unique_y_witness = satisfiers.empty() ? std::vector<int>{x}
                                                : std::vector<int>{x, satisfiers.front()};
    }
  });
  return rep;
}

MMaps m_maps(const EffectAlgebra& e, const DerivedStructure& d) {
  Scratch s = make_scratch(e, d);
  MMaps maps;
  maps.hat.assign(e.n, kUndef);
  maps.r.assign(e.n, kUndef);
  for_bits(s.mp.members, [&](int x) {
    if (s.hat[x] == kUndef)
      throw DataError("m_maps: no least sharp cover for " + e.label(x));
    maps.hat[x] = s.hat[x];
    int r = d.ominus(s.hat[x], x);
    if (!has_bit(s.mp.members, r))
      throw DataError("m_maps: counterpart of " + e.label(x) + " is not meager");
    maps.r[x] = r;
  });
  for_bits(s.mp.members, [&](int x) {
    int r = maps.r[x];
    if (maps.hat[r] != maps.hat[x])
      throw DataError("m_maps: counterpart of " + e.label(x) +
                      " changes the least sharp cover; not a TRT algebra");
    internal_check(maps.r[r] == x, "counterpart is an involution under equal covers");
  });
  return maps;
}

std::optional<int> pi_map(const EffectAlgebra&, const DerivedStructure& d,
                          int s, int x) {
  return bound(d, s, x, BoundKind::kMeet);
}

ValidationReport validate_triple(const Triple& t) {
  ValidationReport rep = validate_ea(t.sharp);
  auto grep = validate_gea(t.meager);
  rep.valid = rep.valid && grep.valid;
  for (auto& v : grep.violations) rep.violations.push_back(std::move(v));
  if (!rep.valid) return rep;

  auto add = [&](const char* what, std::vector<int> witness) {
    rep.valid = false;
    rep.violations.push_back({what, std::move(witness)});
  };
  auto sharp_d = derive(t.sharp);
  auto mo = derive_gea(t.meager);

  if (t.h.size() != static_cast<std::size_t>(t.sharp.n)) {
    add("h-size", {});
    return rep;
  }
  if (t.h[t.sharp.zero] != bit(t.meager.zero)) add("h-zero", {t.sharp.zero});
  for (int s = 0; s < t.sharp.n; ++s) {
    if (!has_bit(t.h[s], t.meager.zero)) add("h-bottom", {s});
    for (int u = 0; u < t.sharp.n; ++u)
      if (sharp_d.leq(s, u) && (t.h[s] & ~t.h[u])) add("h-monotone", {s, u});
    for_bits(t.h[s], [&](int m) {
      if (mo.below[m] & ~t.h[s]) add("h-down-closed", {s, m});
    });
  }
  return rep;
}

ExtractedTriple extract_triple(const EffectAlgebra& e, const DerivedStructure& d) {
  auto rep = trt_check(e, d);
  if (!rep.is_trt()) {
    std::string why = !rep.homogeneous ? "not homogeneous"
                      : !rep.sharply_dominating ? "not sharply dominating"
                      : !rep.block_interval ? "a block misses an interval"
                                            : "no unique meager counterpart";
    throw DataError("extract_triple: not a TRT effect algebra (" + why + ")");
  }

  std::uint64_t sharp = sharp_set(e, d);
  auto sub = induced_sub_ea(e, sharp);
  internal_check(validate_ea(sub.algebra).valid,
                 "sharp elements form an effect algebra");
  auto mp = meager_gea(e, d);

  ExtractedTriple ext;
  ext.triple.sharp = sub.algebra;
  ext.triple.meager = mp.gea;
  ext.sharp_to_e = sub.to_parent;
  ext.meager_to_e = mp.to_parent;
  ext.triple.h.assign(sub.to_parent.size(), 0);
  for (std::size_t si = 0; si < sub.to_parent.size(); ++si)
    for (std::size_t mi = 0; mi < mp.to_parent.size(); ++mi)
      if (d.leq(mp.to_parent[mi], sub.to_parent[si]))
        ext.triple.h[si] |= bit(static_cast<int>(mi));

  auto trep = validate_triple(ext.triple);
  internal_check(trep.valid, "extracted triples satisfy the triple invariants");
  return ext;
}

TripleCalc::TripleCalc(const Triple& t)
    : t_(&t), sharp_d_(derive(t.sharp)), mea_(derive_gea(t.meager)) {
  int m = t.meager.n;
  hat_of_.assign(m, kUndef);
  for (int x = 0; x < m; ++x) {
    std::uint64_t covers = 0;
    for (int s = 0; s < t.sharp.n; ++s)
      if (has_bit(t.h[s], x)) covers |= bit(s);
    for_bits(covers, [&](int s) {
      if ((covers & ~sharp_d_.above[s]) == 0) hat_of_[x] = s;
    });
    if (hat_of_[x] == kUndef)
      throw DataError("triple: no least sharp cover for meager element " +
                      t.meager.label(x));
  }

  r_of_.assign(m, kUndef);
  for (int x = 0; x < m; ++x) {
    std::vector<int> satisfiers;
    for (int y = 0; y < m; ++y) {
      if (hat_of_[y] != hat_of_[x]) continue;
      auto mm = meager_meet(x, y);
      if (!mm) continue;
      int tt = mea_.ominus(y, *mm);
      int ss = t.meager.at(x, tt);
      if (ss == kUndef || !has_bit(t.h[hat_of_[x]], ss)) continue;
      bool ok = true;
      for_bits(t.h[hat_of_[x]], [&](int z) {
        int w = t.meager.at(z, x);
        bool lhs = w != kUndef && has_bit(t.h[hat_of_[x]], w);
        bool rhs = mea_.leq(z, y) && hat_of_[mea_.ominus(y, z)] == hat_of_[x];
        if (lhs != rhs) ok = false;
      });
      if (ok) satisfiers.push_back(y);
    }
    if (satisfiers.size() != 1)
      throw DataError("triple: meager element " + t.meager.label(x) + " has " +
                      std::to_string(satisfiers.size()) +
                      " counterpart candidates; not a TRT triple");
    r_of_[x] = satisfiers.front();
  }
}

std::optional<int> TripleCalc::pi(int s, int x) const {
  std::uint64_t set = t_->h[s] & mea_.below[x];
  std::optional<int> found;
  for_bits(set, [&](int m) {
    if ((set & ~mea_.below[m]) == 0) found = m;
  });
  return found;
}

std::optional<int> TripleCalc::meager_meet(int x, int y) const {
  std::uint64_t set = mea_.lower_bounds(x, y);
  std::optional<int> found;
  for_bits(set, [&](int m) {
    if ((set & ~mea_.below[m]) == 0) found = m;
  });
  return found;
}

std::uint64_t TripleCalc::s_candidates(int x, int y) const {
  std::uint64_t out = 0;
  for (int s = 0; s < t_->sharp.n; ++s) {
    auto px = pi(s, x);
    auto py = pi(s, y);
    if (!px || !py) continue;
    if (hat_of_[*px] == s && r_of_[*px] == *py) out |= bit(s);
  }
  return out;
}

std::optional<int> TripleCalc::s_top(int x, int y) const {
  std::uint64_t set = s_candidates(x, y);
  std::optional<int> top;
  for_bits(set, [&](int s) {
    if ((set & ~sharp_d_.below[s]) == 0) top = s;
  });
  return top;
}

int hat_from_triple(const Triple& t, int x) { return TripleCalc(t).hat(x); }
int r_from_triple(const Triple& t, int x) { return TripleCalc(t).r(x); }
std::optional<int> pi_from_triple(const Triple& t, int s, int x) {
  return TripleCalc(t).pi(s, x);
}

namespace {

std::optional<std::pair<int, int>> oplus_calc(const TripleCalc& c, int x, int y) {
  const Triple& t = c.triple();
  auto S = c.s_top(x, y);
  if (!S) return std::nullopt;
  auto px = c.pi(*S, x);
  auto py = c.pi(*S, y);
  internal_check(px && py, "the top of the S-set meets both arguments");
  int rx = c.meager_order().ominus(x, *px);
  int ry = c.meager_order().ominus(y, *py);
  int resid = t.meager.at(rx, ry);
  if (resid == kUndef) return std::nullopt;
  int comp = c.sharp_order().complement[*S];
  if (!has_bit(t.h[comp], resid)) return std::nullopt;
  return std::make_pair(*S, resid);
}

}  // namespace

std::optional<std::pair<int, int>> oplus_via_triple(const Triple& t, int x, int y) {
  return oplus_calc(TripleCalc(t), x, y);
}

namespace {

std::vector<std::string> pair_labels(const Triple& t,
                                     const std::vector<std::pair<int, int>>& pairs) {
  std::vector<std::string> labels;
  std::set<std::string> seen;
  bool collision = false;
  for (auto [s, m] : pairs) {
    std::string l = "(" + t.sharp.label(s) + "," + t.meager.label(m) + ")";
    if (!seen.insert(l).second) collision = true;
    labels.push_back(l);
  }
  if (!collision) return labels;
  labels.clear();
  for (auto [s, m] : pairs)
    labels.push_back("(s" + std::to_string(s) + ",m" + std::to_string(m) + ")");
  return labels;
}

}  // namespace

TeaAlgebra reconstruct_tea(const Triple& t) {
  auto rep = validate_triple(t);
  if (!rep.valid)
    throw DataError("reconstruct: triple invariant '" +
                    rep.violations.front().axiom + "' fails");
  TripleCalc calc(t);
  const auto& sharp_d = calc.sharp_order();

  TeaAlgebra tea;
  for (int s = 0; s < t.sharp.n; ++s)
    for_bits(t.h[sharp_d.complement[s]],
             [&](int m) { tea.pairs.push_back({s, m}); });

  int n = static_cast<int>(tea.pairs.size());
  if (n > kMaxElements)
    throw DataError("reconstruct: pair carrier exceeds the supported size");
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, kUndef));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      auto [xs, xm] = tea.pairs[p];
      auto [ys, ym] = tea.pairs[q];
      auto S = calc.s_top(xm, ym);
      if (!S) continue;
      int partial = t.sharp.at(xs, ys);
      if (partial == kUndef) continue;
      int zs = t.sharp.at(partial, *S);
      if (zs == kUndef) continue;
      auto px = calc.pi(*S, xm);
      auto py = calc.pi(*S, ym);
      internal_check(px && py, "the top of the S-set meets both arguments");
      int zm = t.meager.at(calc.meager_order().ominus(xm, *px),
                           calc.meager_order().ominus(ym, *py));
      if (zm == kUndef) continue;
      if (!has_bit(t.h[sharp_d.complement[zs]], zm)) continue;
      int target = tea.pair_index(zs, zm);
      internal_check(target != kUndef, "sums land inside the pair carrier");
      rows[p][q] = target;
    }

  int zero = tea.pair_index(t.sharp.zero, t.meager.zero);
  int unit = tea.pair_index(t.sharp.unit, t.meager.zero);
  internal_check(zero != kUndef && unit != kUndef,
                 "pair carrier contains its zero and unit");
  tea.algebra =
      make_effect_algebra(n, zero, unit, rows, pair_labels(t, tea.pairs));
  auto vr = validate_ea(tea.algebra);
  if (!vr.valid)
    throw DataError("reconstruct: pair table violates " +
                    vr.violations.front().axiom);
  return tea;
}

TheoremCertificate verify_triple_theorem(const EffectAlgebra& e,
                                         const DerivedStructure& d) {
  TheoremCertificate cert;
  auto ext = extract_triple(e, d);
  cert.tea = reconstruct_tea(ext.triple);

  auto fail = [&](std::string what, std::vector<int> witness) {
    cert.ok = false;
    cert.failure = std::move(what);
    cert.witness = std::move(witness);
    return cert;
  };

  if (static_cast<int>(cert.tea.pairs.size()) != e.n)
    return fail("pair carrier size differs from the source", {});

  std::vector<int> sharp_idx(e.n, kUndef), meager_idx(e.n, kUndef);
  for (std::size_t i = 0; i < ext.sharp_to_e.size(); ++i)
    sharp_idx[ext.sharp_to_e[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < ext.meager_to_e.size(); ++i)
    meager_idx[ext.meager_to_e[i]] = static_cast<int>(i);

  cert.phi.assign(e.n, kUndef);
  std::vector<bool> hit(e.n, false);
  for (int x = 0; x < e.n; ++x) {
    auto th = tilde_hat(e, d, x);
    int xs = *th.tilde;
    int xm = d.ominus(x, xs);
    int p = cert.tea.pair_index(sharp_idx[xs], meager_idx[xm]);
    if (p == kUndef) return fail("image pair missing from the carrier", {x});
    if (hit[p]) return fail("map is not injective", {x});
    hit[p] = true;
    cert.phi[x] = p;
  }
  if (cert.phi[e.zero] != cert.tea.algebra.zero ||
      cert.phi[e.unit] != cert.tea.algebra.unit)
    return fail("map does not fix zero and unit", {});

  for (int x = 0; x < e.n; ++x)
    for (int y = 0; y < e.n; ++y) {
      int z = e.at(x, y);
      int w = cert.tea.algebra.at(cert.phi[x], cert.phi[y]);
      if ((z == kUndef) != (w == kUndef))
        return fail("sum defined on one side only", {x, y});
      if (z != kUndef && cert.phi[z] != w)
        return fail("map does not preserve sums", {x, y});
    }

  if (!find_isomorphism(e, cert.tea.algebra))
    return fail("independent isomorphism search failed", {});

  cert.ok = true;
  return cert;
}

std::optional<int> s_map(const EffectAlgebra& e, const DerivedStructure& d,
                         int x, int y) {
  Scratch s = make_scratch(e, d);
  internal_check(has_bit(s.mp.members, x) && has_bit(s.mp.members, y),
                 "s_map takes meager arguments");

  std::uint64_t source_side = 0;
  for_bits(s.sharp, [&](int z) {
    auto mx = bound(d, z, x, BoundKind::kMeet);
    auto my = bound(d, z, y, BoundKind::kMeet);
    if (mx && my && e.at(*mx, *my) == z) source_side |= bit(z);
  });

  auto ext = extract_triple(e, d);
  TripleCalc calc(ext.triple);
  std::vector<int> meager_idx(e.n, kUndef);
  for (std::size_t i = 0; i < ext.meager_to_e.size(); ++i)
    meager_idx[ext.meager_to_e[i]] = static_cast<int>(i);
  std::uint64_t triple_side = 0;
  for_bits(calc.s_candidates(meager_idx[x], meager_idx[y]),
           [&](int si) { triple_side |= bit(ext.sharp_to_e[si]); });
  internal_check(source_side == triple_side,
                 "both descriptions of the S-set coincide");

  std::optional<int> top;
  for_bits(source_side, [&](int z) {
    if ((source_side & ~d.below[z]) == 0) top = z;
  });
  return top;
}

}  // namespace ea
