#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wc {

using RootIndex = int;

struct CartanType {
  char family = 'A';
  int rank = 1;

  // Parses "A4", "d4", "E6" ...; throws InputError on bad syntax or rank.
  static CartanType parse(std::string_view text);
  std::string name() const;
  bool operator==(const CartanType&) const = default;
};

// Throws InputError if the rank is not admissible for the family.
void validate(const CartanType& type);

struct DiagramAutomorphism {
  std::vector<int> simple_perm; // simple index -> simple index
  std::vector<RootIndex> root_perm;
  int order = 1;

  bool is_identity() const { return order == 1; }
};

// A finite crystallographic root system with exact coordinates.
//
// Ambient coordinates are stored as integers scaled by a per-type common
// denominator (1 or 2), so the stored dot product is the true pairing times
// denominator^2. Every quantity used downstream (Cartan integers, signs of
// pairings, kernels) is invariant under that scaling.
//
// Indexing: roots[0 .. N-1] are the positive roots sorted by height and
// then by descending simple-root coefficients, so the simple roots come
// first in label order; roots[N + i] = -roots[i].
class RootSystem {
public:
  explicit RootSystem(CartanType type);

  const CartanType& cartan_type() const { return type_; }
  int rank() const { return type_.rank; }
  int ambient_dim() const { return ambient_dim_; }
  int denominator() const { return denominator_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  int positive_count() const { return positive_count_; }

  bool is_positive(RootIndex r) const { return r < positive_count_; }
  RootIndex negate(RootIndex r) const {
    return r < positive_count_ ? r + positive_count_ : r - positive_count_;
  }
  // simple root i (0-based label) has root index i.
  RootIndex simple(int i) const { return i; }

  std::span<const int> coefficients(RootIndex r) const { return coeffs_[r]; }
  std::span<const int> scaled_coordinates(RootIndex r) const { return coords_[r]; }
  int height(RootIndex r) const;
  // Simple labels with nonzero coefficient.
  std::vector<int> support(RootIndex r) const;

  std::optional<RootIndex> find(std::span<const int> coefficients) const;
  std::optional<RootIndex> sum(RootIndex i, RootIndex j) const {
    const int s = sum_table_[static_cast<std::size_t>(i) * size() + j];
    return s < 0 ? std::nullopt : std::optional<RootIndex>(s);
  }

  // Scaled inner product of two roots.
  std::int64_t pairing(RootIndex i, RootIndex j) const;
  // <alpha_i, alpha_j^vee> on simple labels.
  int cartan(int i, int j) const { return cartan_[i][j]; }
  // Scaled Gram matrix of the simple roots.
  const std::vector<std::vector<std::int64_t>>& gram() const { return gram_; }

  // Permutation of root indices induced by the simple reflection s_i.
  const std::vector<RootIndex>& reflection(int i) const { return reflections_[i]; }

  // Ambient scaled coordinates of a vector given in simple-root coefficients.
  std::vector<std::int64_t> to_ambient(std::span<const std::int64_t> coeffs) const;

private:
  CartanType type_;
  int ambient_dim_ = 0;
  int denominator_ = 1;
  int positive_count_ = 0;
  std::vector<std::vector<int>> coeffs_;
  std::vector<std::vector<int>> coords_;
  std::vector<std::vector<int>> cartan_;
  std::vector<std::vector<std::int64_t>> gram_;
  std::vector<int> sum_table_;
  std::vector<std::vector<RootIndex>> reflections_;
};

RootSystem build_root_system(const CartanType& type);

std::optional<RootIndex> root_sum(const RootSystem& rs, RootIndex i, RootIndex j);

// Throws InputError if R meets -R.
bool is_closed(const RootSystem& rs, std::span<const RootIndex> roots);

// All Cartan-matrix-preserving permutations of the simple roots, identity
// first, then ordered lexicographically by simple_perm.
std::vector<DiagramAutomorphism> diagram_automorphisms(const RootSystem& rs);

DiagramAutomorphism identity_automorphism(const RootSystem& rs);

// Parse a 1-indexed comma separated list of simple labels into a
// permutation, e.g. "3,2,1" for the A3 flip. Throws InputError if the
// permutation is not a diagram automorphism.
DiagramAutomorphism parse_automorphism(const RootSystem& rs, std::string_view text);

// Human-readable root name in simple-root coefficients, e.g. "a1+a2", "-2a1-a2".
std::string root_name(const RootSystem& rs, RootIndex r);

} // namespace wc
