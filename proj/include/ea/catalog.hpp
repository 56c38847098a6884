#pragma once

#include "ea/core.hpp"

namespace ea {

struct GeneratorSpec {
  enum class Kind { kChain, kBoolean, kMo, kProduct, kHsum, kDiamond };
  Kind kind = Kind::kChain;
  int param = 0;
  std::vector<GeneratorSpec> children;

  std::string name() const;
};

GeneratorSpec chain_spec(int steps);
GeneratorSpec boolean_spec(int atoms);
GeneratorSpec mo_spec(int atom_pairs);
GeneratorSpec product_spec(GeneratorSpec a, GeneratorSpec b);
GeneratorSpec hsum_spec(GeneratorSpec a, GeneratorSpec b);
GeneratorSpec diamond_spec();

/// Prefix grammar over tokens, e.g. "product chain 2 chain 1".
GeneratorSpec parse_generator(const std::vector<std::string>& tokens);

/// chain n: 0 < a < 2a < ... < na = 1. boolean k: subsets of k atoms under
/// disjoint union. mo k: 0, 1 and k complement pairs of atoms. product:
/// coordinatewise sums. hsum: carriers glued at 0 and 1, cross sums
/// undefined. diamond: hsum of two 2-step chains. Every output validates.
EffectAlgebra generate(const GeneratorSpec& spec);

/// All effect algebras with 2 <= carrier size <= max_n, one canonical-form
/// representative per isomorphism class, ordered by (size, serialization).
std::vector<EffectAlgebra> enumerate_all(int max_n);

}  // namespace ea
