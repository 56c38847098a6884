#pragma once

#include "ea/structure.hpp"
#include "ea/trt_types.hpp"

namespace ea {

struct PropertyFlag {
  bool value = false;
  std::vector<int> witness;  // counterexample elements when value is false
};

/// Decided structural properties, one flag per notion. Field order matches
/// the serialized (alphabetical) key order.
struct PropertyReport {
  PropertyFlag archimedean;
  PropertyFlag atomic;
  PropertyFlag compatible_whole;
  PropertyFlag homogeneous;
  PropertyFlag lattice;
  PropertyFlag maximality_property;
  PropertyFlag mv;
  PropertyFlag orthoalgebra;
  PropertyFlag orthocomplete;
  PropertyFlag rdp;
  PropertyFlag sharply_dominating;
  PropertyFlag trt;

  std::vector<std::pair<std::string, const PropertyFlag*>> items() const;
};

PropertyReport build_property_report(const EffectAlgebra& e,
                                     const DerivedStructure& d);

/// Fixed-key JSON document: {algebra, flags, n, witnesses}, keys sorted,
/// witnesses as label lists for the false flags only.
std::string property_report_json(const std::string& name, const EffectAlgebra& e,
                                 const PropertyReport& report);

std::string property_report_text(const EffectAlgebra& e,
                                 const PropertyReport& report);

}  // namespace ea
