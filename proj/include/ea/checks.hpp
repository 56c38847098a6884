#pragma once

#include "ea/structure.hpp"
#include "ea/trt.hpp"

namespace ea {

struct CheckResult {
  bool ok = true;
  std::string detail;
};

/// Order laws of a validated table: partial order with bottom/top, complement
/// reversal, involution, x+y defined iff x <= y', x <= x+y, bound basics.
CheckResult check_order_laws(const EffectAlgebra& e, const DerivedStructure& d);

/// Center laws: sub-effect algebra, Boolean order, splitting identity
/// y = (y meet x) + (y meet x'), orthogonal central pairs join to their sum.
CheckResult check_center_laws_report(const EffectAlgebra& e,
                                     const DerivedStructure& d);

/// c meet (x+y) = (c meet x) + (c meet y) for central c, and dually
/// x meet (c+d) = (x meet c) + (x meet d) for central c, d.
CheckResult check_central_distributivity(const EffectAlgebra& e,
                                         const DerivedStructure& d);

/// Orthoalgebras and lattices are homogeneous; Riesz splitting holds iff the
/// algebra is homogeneous and the whole carrier is compatible.
CheckResult check_homogeneity_links(const EffectAlgebra& e,
                                    const DerivedStructure& d);

/// On homogeneous input: both block constructions agree, blocks cover the
/// carrier, block centers are the sharp members, local down-sets stay inside,
/// and (small carriers) every compatible subset lies in some block.
CheckResult check_block_laws(const EffectAlgebra& e, const DerivedStructure& d);

/// When the sharp elements form a sub-effect algebra: for meager x with a
/// least sharp cover, cover minus x is meager; a sharp sum of two meager
/// elements equals the cover of each.
CheckResult check_meager_cover_laws(const EffectAlgebra& e,
                                    const DerivedStructure& d);

/// When the sharp elements form a sub-effect algebra: every element with a
/// greatest sharp lower bound splits uniquely into sharp + meager, the parts
/// meet in zero, and join back in a lattice.
CheckResult check_unique_decomposition(const EffectAlgebra& e,
                                       const DerivedStructure& d);

/// For a TRT algebra: sums of meager pairs exist in the source iff the
/// triple-side reconstruction yields a value, the recomposed value matches,
/// and both descriptions of the S-set coincide on every pair.
CheckResult check_sum_reconstruction(const EffectAlgebra& e,
                                     const DerivedStructure& d);

}  // namespace ea
