#include "ea/report.hpp"

#include <sstream>

#include <json.hpp>

#include "ea/trt.hpp"

namespace ea {

std::vector<std::pair<std::string, const PropertyFlag*>> PropertyReport::items() const {
  return {{"archimedean", &archimedean},
          {"atomic", &atomic},
          {"compatibleWhole", &compatible_whole},
          {"homogeneous", &homogeneous},
          {"lattice", &lattice},
          {"maximalityProperty", &maximality_property},
          {"mv", &mv},
          {"orthoalgebra", &orthoalgebra},
          {"orthocomplete", &orthocomplete},
          {"rdp", &rdp},
          {"sharplyDominating", &sharply_dominating},
          {"trt", &trt}};
}

PropertyReport build_property_report(const EffectAlgebra& e,
                                     const DerivedStructure& d) {
  PropertyReport r;

  r.archimedean.value = true;
  for (int x = 0; x < e.n; ++x)
    if (x != e.zero) ord_of(e, x);  // throws only on divergence, which cannot occur

  std::uint64_t at = atoms(e, d);
  r.atomic.value = true;
  for (int x = 0; x < e.n; ++x) {
    if (x == e.zero) continue;
    if ((d.below[x] & at) == 0) {
      r.atomic.value = false;
      r.atomic.witness = {x};
    }
  }

  auto cls = classify(e, d);
  r.orthoalgebra.value = cls.orthoalgebra;
  if (!cls.orthoalgebra)
    for (int x = 0; x < e.n; ++x)
      if (x != e.zero && e.defined(x, x) && r.orthoalgebra.witness.empty())
        r.orthoalgebra.witness = {x};
  r.lattice.value = cls.lattice;
  if (!cls.lattice)
    for (int x = 0; x < e.n && r.lattice.witness.empty(); ++x)
      for (int y = 0; y < e.n && r.lattice.witness.empty(); ++y)
        if (!bound(d, x, y, BoundKind::kMeet) || !bound(d, x, y, BoundKind::kJoin))
          r.lattice.witness = {x, y};
  r.mv.value = cls.mv;
  if (!cls.mv) r.mv.witness = r.lattice.witness;

  r.rdp.value = has_rdp(e, d, &r.rdp.witness);
  if (!cls.mv && cls.lattice) r.mv.witness = r.rdp.witness;
  r.homogeneous.value = is_homogeneous(e, d, &r.homogeneous.witness);

  r.compatible_whole.value = compatible(e, d, full_mask(e.n), false);
  if (!r.compatible_whole.value)
    for (int x = 0; x < e.n && r.compatible_whole.witness.empty(); ++x)
      for (int y = x + 1; y < e.n && r.compatible_whole.witness.empty(); ++y)
        if (!compatible(e, d, bit(x) | bit(y), false))
          r.compatible_whole.witness = {x, y};

  r.sharply_dominating.value =
      is_sharply_dominating(e, d, &r.sharply_dominating.witness);
  r.orthocomplete.value = is_orthocomplete(e, d);
  r.maximality_property.value = has_maximality_property(e, d);

  auto tr = trt_check(e, d);
  r.trt.value = tr.is_trt();
  if (!tr.homogeneous) r.trt.witness = tr.homogeneous_witness;
  else if (!tr.sharply_dominating) r.trt.witness = tr.sharply_dominating_witness;
  else if (!tr.block_interval) r.trt.witness = tr.block_interval_witness;
  else if (!tr.unique_y) r.trt.witness = tr.unique_y_witness;
  return r;
}

std::string property_report_json(const std::string& name, const EffectAlgebra& e,
                                 const PropertyReport& report) {
  nlohmann::ordered_json doc;
  doc["algebra"] = name;
  nlohmann::ordered_json flags;
  for (const auto& [key, flag] : report.items()) flags[key] = flag->value;
  doc["flags"] = std::move(flags);
  doc["n"] = e.n;
  nlohmann::ordered_json witnesses;
  for (const auto& [key, flag] : report.items()) {
    if (flag->value) continue;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (int x : flag->witness) list.push_back(e.label(x));
    witnesses[key] = std::move(list);
  }
  doc["witnesses"] = std::move(witnesses);
  return doc.dump(2) + "\n";
}

std::string property_report_text(const EffectAlgebra& e,
                                 const PropertyReport& report) {
  std::ostringstream out;
  for (const auto& [key, flag] : report.items()) {
    out << key << ": " << (flag->value ? "true" : "false");
    if (!flag->value && !flag->witness.empty())
      out << "  witness " << label_tuple(e, flag->witness);
    out << '\n';
  }
  return out.str();
}

}  // namespace ea
