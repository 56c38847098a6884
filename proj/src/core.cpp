#include "ea/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace ea {

void internal_check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("internal check failed: " + what);
}

std::vector<std::string> default_labels(int n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

namespace {

void check_structure(int n, int zero, const std::vector<std::vector<int>>& rows,
                     const std::vector<std::string>& labels, bool with_unit,
                     int unit) {
  if (n < (with_unit ? 2 : 1) || n > kMaxElements)
    throw std::invalid_argument("carrier size out of range");
  if (zero < 0 || zero >= n) throw std::invalid_argument("zero index out of range");
  if (with_unit) {
    if (unit < 0 || unit >= n) throw std::invalid_argument("unit index out of range");
    if (unit == zero) throw std::invalid_argument("zero and unit must differ");
  }
  if (static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("table must have n rows");
  for (const auto& row : rows)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("table rows must have n entries");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v = rows[i][j];
      if (v != kUndef && (v < 0 || v >= n))
        throw std::invalid_argument("table entry out of range");
      if (rows[i][j] != rows[j][i])
        throw std::invalid_argument("table must be symmetric");
    }
  if (static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("label count must equal n");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != n)
    throw std::invalid_argument("labels must be distinct");
}

std::vector<int> flatten(int n, const std::vector<std::vector<int>>& rows) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

}  // namespace

EffectAlgebra make_effect_algebra(int n, int zero, int unit,
                                  const std::vector<std::vector<int>>& rows,
                                  std::vector<std::string> labels) {
  if (labels.empty()) labels = default_labels(n);
  check_structure(n, zero, rows, labels, true, unit);
  return EffectAlgebra{n, std::move(labels), zero, unit, flatten(n, rows)};
}

GeneralizedEffectAlgebra make_gea(int n, int zero,
                                  const std::vector<std::vector<int>>& rows,
                                  std::vector<std::string> labels) {
  if (labels.empty()) labels = default_labels(n);
  check_structure(n, zero, rows, labels, false, 0);
  return GeneralizedEffectAlgebra{n, std::move(labels), zero, flatten(n, rows)};
}

ValidationReport validate_ea(const EffectAlgebra& e) {
  internal_check(e.n >= 2 && e.zero != e.unit, "validate_ea needs a structural table");
  ValidationReport rep;
  auto add = [&](const char* axiom, std::vector<int> witness) {
    rep.valid = false;
    rep.violations.push_back({axiom, std::move(witness)});
  };

  for (int i = 0; i < e.n; ++i)
    for (int j = i; j < e.n; ++j)
      if (e.at(i, j) != e.at(j, i)) add("Ei", {i, j});

  for (int x = 0; x < e.n; ++x)
    for (int y = 0; y < e.n; ++y)
      for (int z = 0; z < e.n; ++z) {
        int xy = e.at(x, y);
        int left = xy == kUndef ? kUndef : e.at(xy, z);
        int yz = e.at(y, z);
        int right = yz == kUndef ? kUndef : e.at(x, yz);
        bool ld = xy != kUndef && left != kUndef;
        bool rd = yz != kUndef && right != kUndef;
        if (ld != rd || (ld && left != right)) add("Eii", {x, y, z});
      }

  for (int x = 0; x < e.n; ++x) {
    std::vector<int> complements;
    for (int y = 0; y < e.n; ++y)
      if (e.at(x, y) == e.unit) complements.push_back(y);
    if (complements.empty())
      add("Eiii", {x});
    else if (complements.size() > 1)
      add("Eiii", {x, complements[0], complements[1]});
  }

  for (int x = 0; x < e.n; ++x)
    if (e.defined(e.unit, x) && x != e.zero) add("Eiv", {x});

  return rep;
}

ValidationReport validate_gea(const GeneralizedEffectAlgebra& g) {
  ValidationReport rep;
  auto add = [&](const char* axiom, std::vector<int> witness) {
    rep.valid = false;
    rep.violations.push_back({axiom, std::move(witness)});
  };

  for (int i = 0; i < g.n; ++i)
    for (int j = i; j < g.n; ++j)
      if (g.at(i, j) != g.at(j, i)) add("GE1", {i, j});

  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      for (int z = 0; z < g.n; ++z) {
        int xy = g.at(x, y);
        int left = xy == kUndef ? kUndef : g.at(xy, z);
        int yz = g.at(y, z);
        int right = yz == kUndef ? kUndef : g.at(x, yz);
        bool ld = xy != kUndef && left != kUndef;
        bool rd = yz != kUndef && right != kUndef;
        if (ld != rd || (ld && left != right)) add("GE2", {x, y, z});
      }

  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      for (int z = y + 1; z < g.n; ++z)
        if (g.at(x, y) != kUndef && g.at(x, y) == g.at(x, z)) add("GE3", {x, y, z});

  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      if (g.at(x, y) == g.zero && !(x == g.zero && y == g.zero)) add("GE4", {x, y});

  for (int x = 0; x < g.n; ++x)
    if (g.at(x, g.zero) != x) add("GE5", {x});

  return rep;
}

DerivedStructure derive(const EffectAlgebra& e) {
  auto rep = validate_ea(e);
  if (!rep.valid)
    throw std::invalid_argument("derive: table violates " + rep.violations.front().axiom);

  DerivedStructure d;
  d.n = e.n;
  d.below.assign(e.n, 0);
  d.above.assign(e.n, 0);
  d.complement.assign(e.n, kUndef);
  d.ominus_table.assign(static_cast<std::size_t>(e.n) * e.n, kUndef);

  for (int x = 0; x < e.n; ++x)
    for (int z = 0; z < e.n; ++z) {
      int y = e.at(x, z);
      if (y == kUndef) continue;
      int& slot = d.ominus_table[static_cast<std::size_t>(y) * e.n + x];
      if (slot != kUndef)
        internal_check(slot == z, "difference unique on validated tables");
      slot = z;
      d.below[y] |= bit(x);
      d.above[x] |= bit(y);
      if (y == e.unit) d.complement[x] = z;
    }

  for (int x = 0; x < e.n; ++x) {
    internal_check(d.complement[x] != kUndef, "every element has a complement");
    internal_check(d.complement[d.complement[x]] == x, "complement is an involution");
  }
  internal_check(d.complement[e.zero] == e.unit, "zero and unit are complements");
  return d;
}

GeaOrder derive_gea(const GeneralizedEffectAlgebra& g) {
  auto rep = validate_gea(g);
  if (!rep.valid)
    throw std::invalid_argument("derive_gea: table violates " + rep.violations.front().axiom);

  GeaOrder d;
  d.n = g.n;
  d.below.assign(g.n, 0);
  d.above.assign(g.n, 0);
  d.ominus_table.assign(static_cast<std::size_t>(g.n) * g.n, kUndef);
  for (int x = 0; x < g.n; ++x)
    for (int z = 0; z < g.n; ++z) {
      int y = g.at(x, z);
      if (y == kUndef) continue;
      int& slot = d.ominus_table[static_cast<std::size_t>(y) * g.n + x];
      if (slot != kUndef)
        internal_check(slot == z, "difference unique on validated tables");
      slot = z;
      d.below[y] |= bit(x);
      d.above[x] |= bit(y);
    }
  return d;
}

std::optional<int> bound(const DerivedStructure& d, int x, int y, BoundKind kind) {
  std::uint64_t set =
      kind == BoundKind::kMeet ? d.lower_bounds(x, y) : d.upper_bounds(x, y);
  std::optional<int> found;
  for_bits(set, [&](int z) {
    std::uint64_t dominated = kind == BoundKind::kMeet ? d.below[z] : d.above[z];
    if ((set & ~dominated) == 0) found = z;
  });
  return found;
}

std::string label_set(const EffectAlgebra& e, std::uint64_t mask) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for_bits(mask, [&](int i) {
    if (!first) out << ", ";
    first = false;
    out << e.label(i);
  });
  out << '}';
  return out.str();
}

std::string label_tuple(const EffectAlgebra& e, const std::vector<int>& xs) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ", ";
    out << e.label(xs[i]);
  }
  out << ')';
  return out.str();
}

}  // namespace ea
