#pragma once

#include <array>

#include "ea/core.hpp"

namespace ea {

/// Per-element invariants (ord, defined sums, atom, sharp, height) as a
/// sorted multiset plus global flags. Isomorphic algebras have equal
/// fingerprints; unequal fingerprints are a cheap non-isomorphism proof.
struct Fingerprint {
  std::vector<std::array<int, 5>> sorted_invariants;
  bool lattice = false;
  bool orthoalgebra = false;

  bool operator==(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const EffectAlgebra& e, const DerivedStructure& d);

std::vector<std::array<int, 5>> element_invariants(const EffectAlgebra& e,
                                                   const DerivedStructure& d);

/// Complete backtracking search for a zero/unit-preserving bijection with
/// x+y defined iff f(x)+f(y) defined and f(x+y) = f(x)+f(y). The returned
/// map has been verified exhaustively in both directions.
std::optional<std::vector<int>> find_isomorphism(const EffectAlgebra& a,
                                                 const EffectAlgebra& b);

/// Relabeled copy such that isomorphic inputs serialize identically: zero at
/// index 0, unit at index n-1, interior order chosen as the lexicographic
/// minimum over invariant-respecting permutations, labels reset to defaults.
EffectAlgebra canonical_form(const EffectAlgebra& e);

}  // namespace ea
