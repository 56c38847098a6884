#include "ea/catalog.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ea/io.hpp"
#include "ea/iso.hpp"

namespace ea {

GeneratorSpec chain_spec(int steps) { return {GeneratorSpec::Kind::kChain, steps, {}}; }
GeneratorSpec boolean_spec(int atoms) { return {GeneratorSpec::Kind::kBoolean, atoms, {}}; }
GeneratorSpec mo_spec(int atom_pairs) { return {GeneratorSpec::Kind::kMo, atom_pairs, {}}; }
GeneratorSpec product_spec(GeneratorSpec a, GeneratorSpec b) {
  return {GeneratorSpec::Kind::kProduct, 0, {std::move(a), std::move(b)}};
}
GeneratorSpec hsum_spec(GeneratorSpec a, GeneratorSpec b) {
  return {GeneratorSpec::Kind::kHsum, 0, {std::move(a), std::move(b)}};
}
GeneratorSpec diamond_spec() { return {GeneratorSpec::Kind::kDiamond, 0, {}}; }

std::string GeneratorSpec::name() const {
  switch (kind) {
    case Kind::kChain: return "chain " + std::to_string(param);
    case Kind::kBoolean: return "boolean " + std::to_string(param);
    case Kind::kMo: return "mo " + std::to_string(param);
    case Kind::kProduct:
      return "product(" + children[0].name() + ", " + children[1].name() + ")";
    case Kind::kHsum:
      return "hsum(" + children[0].name() + ", " + children[1].name() + ")";
    case Kind::kDiamond: return "diamond";
  }
  return "?";
}

namespace {

GeneratorSpec parse_tokens(const std::vector<std::string>& tokens, std::size_t& pos) {
  auto need = [&](const char* what) -> const std::string& {
    if (pos >= tokens.size())
      throw std::invalid_argument(std::string("generator spec: missing ") + what);
    return tokens[pos++];
  };
  const std::string& kind = need("kind");
  auto number = [&]() {
    const std::string& tok = need("parameter");
    try {
      return std::stoi(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("generator spec: bad number '" + tok + "'");
    }
  };
  if (kind == "chain") return chain_spec(number());
  if (kind == "boolean") return boolean_spec(number());
  if (kind == "mo") return mo_spec(number());
  if (kind == "diamond") return diamond_spec();
  if (kind == "product" || kind == "hsum") {
    GeneratorSpec a = parse_tokens(tokens, pos);
    GeneratorSpec b = parse_tokens(tokens, pos);
    return kind == "product" ? product_spec(std::move(a), std::move(b))
                             : hsum_spec(std::move(a), std::move(b));
  }
  throw std::invalid_argument("generator spec: unknown kind '" + kind + "'");
}

EffectAlgebra gen_chain(int steps) {
  if (steps < 1 || steps >= kMaxElements)
    throw std::invalid_argument("chain needs between 1 and 63 steps");
  int n = steps + 1;
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, kUndef));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j <= steps) rows[i][j] = i + j;
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    if (i == 0) labels.push_back("0");
    else if (i == steps) labels.push_back("1");
    else if (i == 1) labels.push_back("a");
    else labels.push_back(std::to_string(i) + "a");
  }
  return make_effect_algebra(n, 0, steps, rows, labels);
}

EffectAlgebra gen_boolean(int atoms) {
  if (atoms < 1 || atoms > 6)
    throw std::invalid_argument("boolean needs between 1 and 6 atoms");
  int n = 1 << atoms;
  // subsets ordered by (size, numeric value); atoms come right after zero
  std::vector<int> subsets(n);
  for (int i = 0; i < n; ++i) subsets[i] = i;
  std::sort(subsets.begin(), subsets.end(), [](int a, int b) {
    int pa = std::popcount(static_cast<unsigned>(a));
    int pb = std::popcount(static_cast<unsigned>(b));
    if (pa != pb) return pa < pb;
    return a < b;
  });
  std::vector<int> index_of(n);
  for (int i = 0; i < n; ++i) index_of[subsets[i]] = i;

  std::vector<std::vector<int>> rows(n, std::vector<int>(n, kUndef));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = subsets[i], b = subsets[j];
      if ((a & b) == 0) rows[i][j] = index_of[a | b];
    }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) {
    int s = subsets[i];
    if (s == 0) labels.push_back("0");
    else if (s == n - 1) labels.push_back("1");
    else {
      std::string l;
      for (int k = 0; k < atoms; ++k)
        if (s >> k & 1) l += static_cast<char>('a' + k);
      labels.push_back(l);
    }
  }
  return make_effect_algebra(n, 0, n - 1, rows, labels);
}

EffectAlgebra gen_mo(int atom_pairs) {
  if (atom_pairs < 1 || atom_pairs > 31)
    throw std::invalid_argument("mo needs between 1 and 31 atom pairs");
  int n = 2 * atom_pairs + 2;
  int unit = n - 1;
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, kUndef));
  for (int i = 0; i < n; ++i) {
    rows[0][i] = i;
    rows[i][0] = i;
  }
  for (int k = 0; k < atom_pairs; ++k) {
    int a = 1 + 2 * k, b = 2 + 2 * k;
    rows[a][b] = unit;
    rows[b][a] = unit;
  }
  std::vector<std::string> labels{"0"};
  for (int k = 1; k <= atom_pairs; ++k) {
    labels.push_back("a" + std::to_string(k));
    labels.push_back("a" + std::to_string(k) + "'");
  }
  labels.push_back("1");
  return make_effect_algebra(n, 0, unit, rows, labels);
}

EffectAlgebra gen_product(const EffectAlgebra& a, const EffectAlgebra& b) {
  if (a.n * b.n > kMaxElements)
    throw std::invalid_argument("product carrier exceeds " +
                                std::to_string(kMaxElements) + " elements");
  int n = a.n * b.n;
  auto idx = [&](int i, int j) { return i * b.n + j; };
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, kUndef));
  for (int i1 = 0; i1 < a.n; ++i1)
    for (int j1 = 0; j1 < b.n; ++j1)
      for (int i2 = 0; i2 < a.n; ++i2)
        for (int j2 = 0; j2 < b.n; ++j2) {
          int s1 = a.at(i1, i2), s2 = b.at(j1, j2);
          if (s1 != kUndef && s2 != kUndef)
            rows[idx(i1, j1)][idx(i2, j2)] = idx(s1, s2);
        }
  std::vector<std::string> labels;
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < b.n; ++j)
      labels.push_back("(" + a.label(i) + "," + b.label(j) + ")");
  return make_effect_algebra(n, idx(a.zero, b.zero), idx(a.unit, b.unit), rows,
                             labels);
}

EffectAlgebra gen_hsum(const EffectAlgebra& a, const EffectAlgebra& b) {
  int n = a.n + b.n - 2;
  if (n > kMaxElements)
    throw std::invalid_argument("hsum carrier exceeds " +
                                std::to_string(kMaxElements) + " elements");
  int unit = n - 1;

  // glued indices: 0, interior of a, interior of b, 1
  std::vector<int> map_a(a.n), map_b(b.n);
  int next = 1;
  for (int i = 0; i < a.n; ++i)
    map_a[i] = i == a.zero ? 0 : (i == a.unit ? unit : next++);
  for (int j = 0; j < b.n; ++j)
    map_b[j] = j == b.zero ? 0 : (j == b.unit ? unit : next++);

  std::vector<std::vector<int>> rows(n, std::vector<int>(n, kUndef));
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j)
      if (a.at(i, j) != kUndef) rows[map_a[i]][map_a[j]] = map_a[a.at(i, j)];
  for (int i = 0; i < b.n; ++i)
    for (int j = 0; j < b.n; ++j)
      if (b.at(i, j) != kUndef) rows[map_b[i]][map_b[j]] = map_b[b.at(i, j)];

  std::vector<std::string> labels(n);
  labels[0] = "0";
  labels[unit] = "1";
  std::set<std::string> taken{"0", "1"};
  auto place = [&](int glued, const std::string& l) {
    std::string candidate = l;
    while (taken.count(candidate)) candidate += "*";
    taken.insert(candidate);
    labels[glued] = candidate;
  };
  for (int i = 0; i < a.n; ++i)
    if (i != a.zero && i != a.unit) place(map_a[i], a.label(i));
  for (int j = 0; j < b.n; ++j)
    if (j != b.zero && j != b.unit) place(map_b[j], b.label(j));
  return make_effect_algebra(n, 0, unit, rows, labels);
}

EffectAlgebra gen_diamond() {
  std::vector<std::vector<int>> rows{
      {0, 1, 2, 3}, {1, 3, kUndef, kUndef}, {2, kUndef, 3, kUndef},
      {3, kUndef, kUndef, kUndef}};
  return make_effect_algebra(4, 0, 3, rows, {"0", "a", "b", "1"});
}

}  // namespace

GeneratorSpec parse_generator(const std::vector<std::string>& tokens) {
  std::size_t pos = 0;
  GeneratorSpec spec = parse_tokens(tokens, pos);
  if (pos != tokens.size())
    throw std::invalid_argument("generator spec: trailing tokens");
  return spec;
}

EffectAlgebra generate(const GeneratorSpec& spec) {
  EffectAlgebra out;
  switch (spec.kind) {
    case GeneratorSpec::Kind::kChain: out = gen_chain(spec.param); break;
    case GeneratorSpec::Kind::kBoolean: out = gen_boolean(spec.param); break;
    case GeneratorSpec::Kind::kMo: out = gen_mo(spec.param); break;
    case GeneratorSpec::Kind::kProduct:
      out = gen_product(generate(spec.children[0]), generate(spec.children[1]));
      break;
    case GeneratorSpec::Kind::kHsum:
      out = gen_hsum(generate(spec.children[0]), generate(spec.children[1]));
      break;
    case GeneratorSpec::Kind::kDiamond: out = gen_diamond(); break;
  }
  internal_check(validate_ea(out).valid, "generated algebras satisfy the axioms");
  return out;
}

namespace {

// Fills the open cells (i,j), 1 <= i <= j <= n-2, in row-major order. The
// zero row and the unit row are forced by the axioms, as is the exclusion of
// zero-valued sums of nonzero elements, so fixing them loses no tables.
// Partial associativity is judged only on triples whose cells are decided;
// the completed table still goes through the full validator.
struct Enumerator {
  int n;
  EffectAlgebra table;
  std::vector<std::pair<int, int>> cells;
  std::vector<std::vector<int>> cell_pos;  // position in `cells` or -1 = forced
  std::map<std::string, EffectAlgebra> found;  // canonical serialization -> rep

  explicit Enumerator(int n_) : n(n_) {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n, kUndef));
    for (int i = 0; i < n; ++i) {
      rows[0][i] = i;
      rows[i][0] = i;
    }
    table = make_effect_algebra(n, 0, n - 1, rows);
    cell_pos.assign(n, std::vector<int>(n, -1));
    for (int i = 1; i <= n - 2; ++i)
      for (int j = i; j <= n - 2; ++j) {
        cell_pos[i][j] = cell_pos[j][i] = static_cast<int>(cells.size());
        cells.push_back({i, j});
      }
  }

  bool decided(int i, int j, std::size_t placed) const {
    int p = cell_pos[i][j];
    return p < 0 || p < static_cast<int>(placed);
  }

  bool row_ok(int row, int v, std::size_t placed) const {
    for (int k = 0; k < n; ++k)
      if (decided(row, k, placed) && table.at(row, k) == v) return false;
    return true;
  }

  bool assoc_ok(std::size_t placed) const {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          // tri-state per side: kUndef = undefined, -2 = unknown
          int left = -2, right = -2;
          if (decided(x, y, placed)) {
            int xy = table.at(x, y);
            if (xy == kUndef) left = kUndef;
            else if (decided(xy, z, placed)) left = table.at(xy, z);
          }
          if (decided(y, z, placed)) {
            int yz = table.at(y, z);
            if (yz == kUndef) right = kUndef;
            else if (decided(x, yz, placed)) right = table.at(x, yz);
          }
          if (left == -2 || right == -2) continue;
          if (left != right) return false;
        }
    return true;
  }

  bool row_has_complement(int row) const {
    for (int k = 0; k < n; ++k)
      if (table.at(row, k) == n - 1) return true;
    return false;
  }

  void fill(std::size_t idx) {
    if (idx == cells.size()) {
      if (!validate_ea(table).valid) return;
      auto canon = canonical_form(table);
      found.emplace(serialize_ea(canon), canon);
      return;
    }
    auto [i, j] = cells[idx];
    for (int v = kUndef; v < n; v == kUndef ? v = 1 : ++v) {
      if (v == 0) continue;
      table.at(i, j) = v;
      table.at(j, i) = v;
      bool ok = true;
      if (v != kUndef) {
        ok = row_ok(i, v, idx) && (i == j || row_ok(j, v, idx));
        // at most one complement per row
        if (ok && v == n - 1) {
          int count_i = 0, count_j = 0;
          for (int k = 0; k < n; ++k) {
            if (decided(i, k, idx) && table.at(i, k) == n - 1) ++count_i;
            if (decided(j, k, idx) && table.at(j, k) == n - 1) ++count_j;
          }
          ok = count_i == 0 && (i == j || count_j == 0);
        }
      }
      if (ok && !assoc_ok(idx + 1)) ok = false;
      // once a row is fully decided its complement must exist
      if (ok && j == n - 2 && !row_has_complement(i)) ok = false;
      if (ok) fill(idx + 1);
    }
    table.at(i, j) = kUndef;
    table.at(j, i) = kUndef;
  }
};

}  // namespace

std::vector<EffectAlgebra> enumerate_all(int max_n) {
  if (max_n < 2 || max_n > 8)
    throw std::invalid_argument("enumerate_all supports sizes 2 through 8");
  std::vector<EffectAlgebra> out;
  for (int n = 2; n <= max_n; ++n) {
    Enumerator en(n);
    en.fill(0);
    for (auto& [key, alg] : en.found) out.push_back(alg);
  }
  return out;
}

}  // namespace ea
