#pragma once

#include "ea/structure.hpp"
#include "ea/trt_types.hpp"

namespace ea {

/// Decides the four conditions: homogeneity, sharp domination, the block
/// interval law (x in a block B keeps [tilde(x), x] inside B), and the unique
/// characterization of hat(x) minus x among meager elements by conditions
/// (i)-(iii). Witnesses are carried for every failed condition.
TrtReport trt_check(const EffectAlgebra& e, const DerivedStructure& d);

struct MMaps {
  std::vector<int> hat;  // per element, kUndef unless meager
  std::vector<int> r;    // hat(x) minus x, per meager element
};

/// The source-side maps on the meager part. Requires a TRT algebra.
MMaps m_maps(const EffectAlgebra& e, const DerivedStructure& d);

/// Meet of a sharp element with a meager one, in the source algebra.
std::optional<int> pi_map(const EffectAlgebra& e, const DerivedStructure& d,
                          int s, int x);

/// Top element of {z sharp | z = (z meet x) + (z meet y)} when that set
/// contains its own maximum. The set is computed both from the source algebra
/// and from the extracted triple; the two must agree.
std::optional<int> s_map(const EffectAlgebra& e, const DerivedStructure& d,
                         int x, int y);

/// Structural triple invariants: both components validate, h(0) = {0},
/// h monotone along the sharp order, every h(s) downward closed with 0 in it.
ValidationReport validate_triple(const Triple& t);

/// Restriction of the sum to the sharp elements, the meager part, and
/// h(s) = meager elements below s. Requires a TRT algebra.
ExtractedTriple extract_triple(const EffectAlgebra& e, const DerivedStructure& d);

/// All triple-side computations read nothing but the triple's tables and h.
class TripleCalc {
 public:
  explicit TripleCalc(const Triple& t);

  const Triple& triple() const { return *t_; }
  const DerivedStructure& sharp_order() const { return sharp_d_; }
  const GeaOrder& meager_order() const { return mea_; }

  int hat(int x) const { return hat_of_[x]; }
  int r(int x) const { return r_of_[x]; }
  std::optional<int> pi(int s, int x) const;
  std::optional<int> meager_meet(int x, int y) const;
  std::uint64_t s_candidates(int x, int y) const;
  std::optional<int> s_top(int x, int y) const;

 private:
  const Triple* t_;
  DerivedStructure sharp_d_;
  GeaOrder mea_;
  std::vector<int> hat_of_;
  std::vector<int> r_of_;
};

int hat_from_triple(const Triple& t, int x);
int r_from_triple(const Triple& t, int x);
std::optional<int> pi_from_triple(const Triple& t, int s, int x);

/// Sum decision for two meager elements from the triple alone: the pair
/// (S(x,y), residual) when the sum exists, nullopt otherwise.
std::optional<std::pair<int, int>> oplus_via_triple(const Triple& t, int x, int y);

/// Effect algebra on the pairs (z_S, z_M) with z_M in h(z_S'), built from a
/// triple alone; throws DataError when the data cannot come from a TRT
/// algebra (no unique counterpart, axiom failure of the rebuilt table).
TeaAlgebra reconstruct_tea(const Triple& t);

struct TheoremCertificate {
  bool ok = false;
  std::string failure;
  std::vector<int> witness;
  std::vector<int> phi;  // element of e -> element of tea
  TeaAlgebra tea;
};

/// Extracts the triple, rebuilds the pair algebra, checks that
/// x -> (tilde(x), x minus tilde(x)) is an isomorphism, and independently
/// finds an isomorphism by backtracking search.
TheoremCertificate verify_triple_theorem(const EffectAlgebra& e,
                                         const DerivedStructure& d);

}  // namespace ea
