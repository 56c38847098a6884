#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ea {

inline constexpr int kUndef = -1;

// Carriers are indexed into 64-bit masks.
inline constexpr int kMaxElements = 64;

inline std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

inline std::uint64_t full_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : bit(n) - 1;
}

inline bool has_bit(std::uint64_t mask, int i) { return (mask >> i) & 1u; }

template <class F>
void for_bits(std::uint64_t mask, F&& fn) {
  while (mask) {
    fn(std::countr_zero(mask));
    mask &= mask - 1;
  }
}

inline int mask_size(std::uint64_t mask) { return std::popcount(mask); }

// Failure of a condition that holds on every input satisfying the documented
// preconditions. Throws std::logic_error.
void internal_check(bool ok, const std::string& what);

// Raised when structurally sound input data is mathematically unusable
// (e.g. a triple file that does not describe any effect algebra).
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Finite effect algebra: carrier 0..n-1 with a partial symmetric sum table,
/// a designated zero and a designated unit. Structural invariants (symmetry,
/// index ranges, distinct labels) are enforced at construction; the algebraic
/// axioms are checked separately by validate_ea.
struct EffectAlgebra {
  int n = 0;
  std::vector<std::string> labels;
  int zero = 0;
  int unit = 0;
  std::vector<int> sum;  // row-major n*n, kUndef for holes

  int at(int i, int j) const { return sum[static_cast<std::size_t>(i) * n + j]; }
  int& at(int i, int j) { return sum[static_cast<std::size_t>(i) * n + j]; }
  bool defined(int i, int j) const { return at(i, j) != kUndef; }
  const std::string& label(int i) const { return labels[i]; }
};

/// Unit-free variant: partial symmetric sum with a neutral zero.
struct GeneralizedEffectAlgebra {
  int n = 0;
  std::vector<std::string> labels;
  int zero = 0;
  std::vector<int> sum;

  int at(int i, int j) const { return sum[static_cast<std::size_t>(i) * n + j]; }
  int& at(int i, int j) { return sum[static_cast<std::size_t>(i) * n + j]; }
  bool defined(int i, int j) const { return at(i, j) != kUndef; }
  const std::string& label(int i) const { return labels[i]; }
};

std::vector<std::string> default_labels(int n);

// Builders check structure (ranges, symmetry, label uniqueness) and throw
// std::invalid_argument on bad input. Empty label vector selects e0..e{n-1}.
EffectAlgebra make_effect_algebra(int n, int zero, int unit,
                                  const std::vector<std::vector<int>>& rows,
                                  std::vector<std::string> labels = {});
GeneralizedEffectAlgebra make_gea(int n, int zero,
                                  const std::vector<std::vector<int>>& rows,
                                  std::vector<std::string> labels = {});

struct Violation {
  std::string axiom;  // Ei, Eii, Eiii, Eiv resp. GE1..GE5
  std::vector<int> witness;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Exhaustive check of the four effect-algebra axioms. Associativity is
/// checked in both directions: whenever either grouping of x,y,z is defined,
/// the other must be defined and equal.
ValidationReport validate_ea(const EffectAlgebra& e);

/// Exhaustive check of the five generalized-effect-algebra axioms.
ValidationReport validate_gea(const GeneralizedEffectAlgebra& g);

/// Order data derived from a validated table: x <= y iff x+z = y for some z,
/// in which case y ominus x is that (unique) z.
struct DerivedStructure {
  int n = 0;
  std::vector<std::uint64_t> below;  // below[y] = {x | x <= y}
  std::vector<std::uint64_t> above;  // above[x] = {y | x <= y}
  std::vector<int> complement;       // x -> x'
  std::vector<int> ominus_table;     // [y*n+x] = y ominus x, kUndef unless x <= y

  bool leq(int x, int y) const { return has_bit(below[y], x); }
  int ominus(int y, int x) const {
    return ominus_table[static_cast<std::size_t>(y) * n + x];
  }
  std::uint64_t lower_bounds(int x, int y) const { return below[x] & below[y]; }
  std::uint64_t upper_bounds(int x, int y) const { return above[x] & above[y]; }
};

/// Rejects tables that fail validate_ea (std::invalid_argument).
DerivedStructure derive(const EffectAlgebra& e);

/// Order data of a validated generalized effect algebra.
struct GeaOrder {
  int n = 0;
  std::vector<std::uint64_t> below;
  std::vector<std::uint64_t> above;
  std::vector<int> ominus_table;

  bool leq(int x, int y) const { return has_bit(below[y], x); }
  int ominus(int y, int x) const {
    return ominus_table[static_cast<std::size_t>(y) * n + x];
  }
  std::uint64_t lower_bounds(int x, int y) const { return below[x] & below[y]; }
};

GeaOrder derive_gea(const GeneralizedEffectAlgebra& g);

enum class BoundKind { kMeet, kJoin };

/// Greatest element of the common-lower-bound set (meet) resp. least element
/// of the common-upper-bound set (join); nullopt when the bound set has no
/// such element, e.g. two incomparable maximal lower bounds.
std::optional<int> bound(const DerivedStructure& d, int x, int y, BoundKind kind);

struct Classification {
  bool orthoalgebra = false;
  bool lattice = false;
  bool mv = false;
};

Classification classify(const EffectAlgebra& e, const DerivedStructure& d);

inline std::optional<int> sum_of(const EffectAlgebra& e, int x, int y) {
  int v = e.at(x, y);
  if (v == kUndef) return std::nullopt;
  return v;
}

std::string label_set(const EffectAlgebra& e, std::uint64_t mask);
std::string label_tuple(const EffectAlgebra& e, const std::vector<int>& xs);

}  // namespace ea
