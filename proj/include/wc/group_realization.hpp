#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "wc/errors.hpp"
#include "wc/execution.hpp"
#include "wc/field.hpp"
#include "wc/linalg.hpp"
#include "wc/weyl.hpp"

namespace wc {

// Raised by sigma when a matrix does not factor through the cell.
class NotInCell : public InputError {
public:
  using InputError::InputError;
};

enum class MatrixGroup { GL, SL };
std::string to_string(MatrixGroup g);

// Entry (row, col) of the root alpha_{row,col} = e_row - e_col, 0-based.
struct Position {
  int row = 0, col = 0;
  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

// One-line permutation pi with x(e_j) = e_{pi[j]}, 0-based.
using IndexPerm = std::vector<int>;

// Type A_{n-1}, untwisted.
IndexPerm index_permutation(const TwistedElement& x);
TwistedElement element_from_permutation(const GroupPtr& group, const IndexPerm& pi);
// "(1,6,4,5,2,3)" or "(1,2)(3,4)": 1-based cycles, i -> next entry.
IndexPerm parse_cycles(std::string_view text, int n);
Position root_position(const RootSystem& rs, RootIndex r);
RootIndex position_root(const RootSystem& rs, Position p);

// Combinatorics of S_x = x L_x U_{Phi_{x,1}^+} for a type A element.
class CrossSectionData {
public:
  // Throws InputError for a twisted element, a non-type-A group, or when
  // Phi(x) is not a standard parabolic subsystem.
  CrossSectionData(const TwistedElement& x, MatrixGroup group);

  const TwistedElement& element() const { return x_; }
  MatrixGroup group() const { return group_; }
  int n() const { return n_; }
  const IndexPerm& perm() const { return perm_; }
  bool quasi_convex() const { return quasi_convex_; }
  const std::vector<int>& parabolic_J() const { return J_; }

  // J-blocks as [begin, end) index ranges; every index lies in exactly one.
  const std::vector<std::pair<int, int>>& blocks() const { return blocks_; }
  int block_of(int i) const { return block_of_[i]; }
  // Orbit id of each block under the induced permutation.
  const std::vector<int>& block_orbits() const { return block_orbit_; }
  const std::vector<std::vector<int>>& cycles() const { return cycles_; }

  // Level n_x of the root at (i, j), i < j; 0 on Phi^+(x).
  int level(Position p) const { return level_[p.row * n_ + p.col]; }
  int max_level() const { return max_level_; }
  // Positions of Phi^+ \ Phi(x), by height then row.
  const std::vector<Position>& radical() const { return radical_; }
  // Positions of level i (index 0 unused).
  const std::vector<Position>& level_positions(int i) const { return level_pos_.at(i); }
  const std::vector<Position>& phi_plus() const { return phi_plus_; }
  const std::vector<Position>& phi_minus() const { return phi_minus_; }

  std::size_t cell_dimension() const;

private:
  TwistedElement x_;
  MatrixGroup group_;
  int n_ = 0;
  IndexPerm perm_;
  bool quasi_convex_ = false;
  std::vector<int> J_;
  std::vector<std::pair<int, int>> blocks_;
  std::vector<int> block_of_, block_orbit_;
  std::vector<std::vector<int>> cycles_;
  std::vector<int> level_;
  int max_level_ = 0;
  std::vector<Position> radical_, phi_plus_, phi_minus_;
  std::vector<std::vector<Position>> level_pos_;
};

template <class F> using MatrixOver = Matrix<typename F::value_type>;

// An element u D v of L_x: u in U_{Phi^+(x)}, D in T(x), v in U_{Phi^-(x)}.
template <class K> struct LxElement {
  Matrix<K> upper;
  std::vector<K> diag;
  Matrix<K> lower;
  friend bool operator==(const LxElement&, const LxElement&) = default;
};

// (y, x ell u) in U_{Phi^+ \ Phi(x)} x x L_x U_{Phi_{x,1}^+}.
template <class K> struct CellPoint {
  Matrix<K> y;
  LxElement<K> ell;
  Matrix<K> u;
  friend bool operator==(const CellPoint&, const CellPoint&) = default;
};

// I + t E_{ij}.
template <class F> MatrixOver<F> root_element(const F& field, int n, Position p, const typename F::value_type& t);
// Permutation matrix of x; in SL_n one column is negated when the sign is odd.
template <class F> MatrixOver<F> lift(const F& field, const CrossSectionData& data);
template <class F> MatrixOver<F> lift(const F& field, const IndexPerm& pi, MatrixGroup group);

// t with v = prod_{gamma in order} u_gamma(t_gamma). Throws InputError if v
// is not unipotent upper triangular with support in the span of `order`.
template <class F>
std::vector<typename F::value_type> unipotent_coordinates(const F& field, const MatrixOver<F>& v,
                                                          const std::vector<Position>& order);
template <class F>
MatrixOver<F> ordered_product(const F& field, int n, const std::vector<Position>& order,
                              const std::vector<typename F::value_type>& coords);

// Membership in T(x): block determinants constant along block orbits (and det 1 in SL_n).
template <class F> bool in_torus(const F& field, const CrossSectionData& data, const std::vector<typename F::value_type>& d);
template <class F> MatrixOver<F> lx_matrix(const F& field, const LxElement<typename F::value_type>& ell);
// Throws NotInCell unless m is block diagonal, factors as u D v and D lies in T(x).
template <class F> LxElement<typename F::value_type> lx_decompose(const F& field, const CrossSectionData& data, const MatrixOver<F>& m);

template <class F>
bool well_formed(const F& field, const CrossSectionData& data, const CellPoint<typename F::value_type>& p);
template <class F>
MatrixOver<F> xi(const F& field, const CrossSectionData& data, const CellPoint<typename F::value_type>& p);
// Inverse of xi on its image. Throws InputError unless x is quasi-convex,
// NotInCell when g does not factor, InconsistencyError on broken level bookkeeping.
template <class F>
CellPoint<typename F::value_type> sigma(const F& field, const CrossSectionData& data, const MatrixOver<F>& g);

template <class F>
std::vector<typename F::value_type> random_torus(const F& field, const CrossSectionData& data, std::mt19937_64& rng);
template <class F>
CellPoint<typename F::value_type> random_cell_point(const F& field, const CrossSectionData& data, std::mt19937_64& rng);

// Every element of T(x) over a finite field.
std::vector<std::vector<Fp>> enumerate_torus(const PrimeField& field, const CrossSectionData& data);

struct TransversalityResult {
  std::size_t rank = 0;
  std::size_t expected = 0; // n^2 (gl_n) or n^2 - 1 (sl_n)
  bool full() const { return rank == expected; }
};

// Rank of (Ad(g^{-1}) - 1)(g) + l + n_{Phi_{x,1}^+} computed inside gl_n, or
// inside sl_n when `traceless`.
TransversalityResult transversality_check(const CrossSectionData& data, const Matrix<mpq_class>& g, bool traceless = false);

struct CollisionWitness {
  std::uint32_t prime = 0;
  CellPoint<Fp> first, second;
  Matrix<Fp> image;
};

struct CollisionSearch {
  std::optional<CollisionWitness> witness;
  std::vector<std::uint32_t> primes_tried;
  std::uint64_t points = 0; // domain points evaluated in total
  bool exhaustive = false;  // the last field was enumerated rather than sampled
};

// Hash join on xi images over F_p: the domain is enumerated in index order
// when its size is at most `budget`, otherwise `budget` seeded samples are
// drawn. Stops at the first repeat; primes are tried in order until one
// yields a collision. Same answer in either execution mode.
CollisionSearch collision_search(const CrossSectionData& data, std::uint64_t budget, std::uint64_t seed,
                                 const std::vector<std::uint32_t>& primes = {2, 3},
                                 Execution exec = Execution::parallel);

struct InjectivityCheck {
  std::uint64_t points = 0;
  bool injective = false;
  bool roundtrip = false; // sigma(xi(p)) == p everywhere (quasi-convex only)
  std::optional<CollisionWitness> witness;
};

// Full enumeration of the domain of xi over F_p. Throws BudgetExceeded past `budget` points.
InjectivityCheck exhaustive_injectivity(const CrossSectionData& data, std::uint32_t prime,
                                        std::uint64_t budget = 1u << 22);

} // namespace wc
