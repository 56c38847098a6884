#pragma once

#include "ea/core.hpp"

namespace ea {

/// The representation data of an effect algebra: its sharp part as an effect
/// algebra of its own, its meager part as a generalized effect algebra, and
/// the map h sending each sharp element to the meager elements below it.
struct Triple {
  EffectAlgebra sharp;
  GeneralizedEffectAlgebra meager;
  std::vector<std::uint64_t> h;  // h[sharp index] = mask of meager indices
};

/// Triple together with the embeddings back into the source algebra.
struct ExtractedTriple {
  Triple triple;
  std::vector<int> sharp_to_e;
  std::vector<int> meager_to_e;
};

/// Effect algebra on pairs (z_S, z_M) with z_M in h(z_S'), rebuilt from a
/// triple alone.
struct TeaAlgebra {
  EffectAlgebra algebra;
  std::vector<std::pair<int, int>> pairs;  // element index -> (sharp, meager)

  int pair_index(int s, int m) const {
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (pairs[i].first == s && pairs[i].second == m) return static_cast<int>(i);
    return kUndef;
  }
};

struct TrtReport {
  bool homogeneous = false;
  bool sharply_dominating = false;
  bool block_interval = false;
  bool unique_y = false;
  std::vector<int> homogeneous_witness;
  std::vector<int> sharply_dominating_witness;
  std::vector<int> block_interval_witness;
  std::vector<int> unique_y_witness;

  bool is_trt() const {
    return homogeneous && sharply_dominating && block_interval && unique_y;
  }
};

}  // namespace ea
