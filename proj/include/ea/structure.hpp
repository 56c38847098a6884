#pragma once

#include "ea/core.hpp"

namespace ea {

/// Largest k such that the k-fold sum of x with itself is defined.
/// Always finite on a finite carrier; rejects x == zero.
int ord_of(const EffectAlgebra& e, int x);

/// Minimal nonzero elements.
std::uint64_t atoms(const EffectAlgebra& e, const DerivedStructure& d);

/// Elements whose only common lower bound with their complement is zero.
std::uint64_t sharp_set(const EffectAlgebra& e, const DerivedStructure& d);

/// Sums of elements below x stay below x.
bool is_principal(const EffectAlgebra& e, const DerivedStructure& d, int x);

/// Central elements: x and x' principal and every y splits across x and x'.
/// Runs the structural self-checks (sub-effect algebra, Boolean order,
/// splitting identity) before returning.
std::uint64_t center(const EffectAlgebra& e, const DerivedStructure& d);

/// 1 in q, and whenever x+y = z has two of x,y,z in q, all three are in q.
bool is_sub_effect_algebra(const EffectAlgebra& e, std::uint64_t q);

/// Effect algebra induced on a sub-effect-algebra carrier, with the position
/// map back into e.
struct SubAlgebra {
  EffectAlgebra algebra;
  std::vector<int> to_parent;
};
SubAlgebra induced_sub_ea(const EffectAlgebra& e, std::uint64_t members);

struct MeagerPart {
  GeneralizedEffectAlgebra gea;
  std::vector<int> to_parent;    // meager index -> element of e
  std::vector<int> from_parent;  // element of e -> meager index or kUndef
  std::uint64_t members = 0;     // as a mask over e
};

/// Elements with no nonzero sharp element below them, with the restriction of
/// the sum: x+y defined here iff defined in e with a meager result.
MeagerPart meager_gea(const EffectAlgebra& e, const DerivedStructure& d);

struct TildeHat {
  std::optional<int> tilde;  // greatest sharp element below x
  std::optional<int> hat;    // least sharp element above x
};
TildeHat tilde_hat(const EffectAlgebra& e, const DerivedStructure& d, int x);

/// Every element has a least sharp cover (equivalently a greatest sharp lower
/// bound; both are computed and compared). A witness element lacking a cover
/// is reported through `witness` when given.
bool is_sharply_dominating(const EffectAlgebra& e, const DerivedStructure& d,
                           std::vector<int>* witness = nullptr);

struct Decomposition {
  int sharp_part;
  int meager_part;
};

/// Unique splitting x = x_S + x_M with x_S sharp and x_M meager; requires a
/// sharply dominating algebra. Uniqueness and meet(x_S, x_M) = 0 are verified
/// by scanning all sharp/meager pairs.
Decomposition decompose(const EffectAlgebra& e, const DerivedStructure& d, int x);

/// A set is compatible when one finite orthogonal family, drawn from the set
/// itself (internal) or from the whole algebra, has every member as a subsum.
bool compatible(const EffectAlgebra& e, const DerivedStructure& d,
                std::uint64_t members, bool internal);

struct Block {
  std::uint64_t members = 0;
  bool contains_unit = true;
};

struct BlocksResult {
  std::vector<Block> blocks;
  bool homogeneous = true;  // cross-checks skipped when false
};

/// Maximal internally compatible subsets containing the unit. On homogeneous
/// input this must coincide with the maximal sub-effect algebras having the
/// Riesz decomposition property; both routes are computed and compared, along
/// with the block-cover and block-center laws.
BlocksResult blocks(const EffectAlgebra& e, const DerivedStructure& d);

bool is_homogeneous(const EffectAlgebra& e, const DerivedStructure& d,
                    std::vector<int>* witness = nullptr);

/// Riesz decomposition property, checked directly and cross-checked against
/// homogeneity + compatibility of the whole carrier.
bool has_rdp(const EffectAlgebra& e, const DerivedStructure& d,
             std::vector<int>* witness = nullptr);

/// Every orthogonal multiset has an orthosum equal to the supremum of its
/// partial sums. Automatic on finite carriers; verified by exhaustive scan.
bool is_orthocomplete(const EffectAlgebra& e, const DerivedStructure& d);

/// Every pair has a maximal lower bound. Automatic on finite carriers.
bool has_maximality_property(const EffectAlgebra& e, const DerivedStructure& d);

}  // namespace ea
