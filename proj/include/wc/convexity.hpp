#pragma once

#include <compare>
#include <optional>
#include <vector>

#include "wc/weyl.hpp"

namespace wc {

// n_x(gamma): a positive integer, or infinity exactly on Phi(x).
class Level {
public:
  static Level infinite() { return Level(); }
  explicit Level(int v) : value_(v) {}

  bool is_infinite() const { return !value_.has_value(); }
  // Throws InputError on infinity.
  int value() const;

  friend bool operator==(const Level&, const Level&) = default;
  friend std::strong_ordering operator<=>(const Level& a, const Level& b) {
    if (a.is_infinite() || b.is_infinite()) return a.is_infinite() <=> b.is_infinite();
    return *a.value_ <=> *b.value_;
  }

private:
  Level() = default;
  std::optional<int> value_;
};

struct Violation {
  RootIndex alpha, beta, sum;
  Level n_alpha, n_beta, n_sum;
};

struct QuasiConvexity {
  bool condition1_ok = false;
  bool condition2_ok = false;
  std::vector<Violation> violations; // height-lexicographic in (alpha, beta)

  bool quasi_convex() const { return condition1_ok && condition2_ok; }
};

struct ConvexityReport {
  std::vector<RootIndex> phi_x;
  std::optional<std::vector<int>> parabolic_J; // set when condition (1) holds
  std::vector<Level> n_table;                  // indexed by root
  int max_level = 0;
  // positive_levels[i] = Phi_{x,i}^+ for i = 1..max_level (index 0 unused), same for negatives.
  std::vector<std::vector<RootIndex>> positive_levels, negative_levels;
  QuasiConvexity forward; // x
  QuasiConvexity inverse; // x^{-1}
  bool convex = false;
  bool phi_equals_fixed = false; // Phi(x) = Phi^x

  bool quasi_convex() const { return forward.quasi_convex(); }
  bool inverse_quasi_convex() const { return inverse.quasi_convex(); }
};

struct ConvexityOptions {
  // Also flag triples with alpha+beta in Phi(x) (normally skipped).
  bool strict = false;
};

std::vector<RootIndex> phi_of(const TwistedElement& x);
// Level of every root.
std::vector<Level> levels(const TwistedElement& x);
// Throws InputError if gamma lies in Phi(x).
int n_of(const TwistedElement& x, RootIndex gamma);

// Condition (1): Phi(x) = Phi cap ZJ for J = Delta cap Phi(x). Returns J on success.
std::optional<std::vector<int>> standard_parabolic_J(const RootSystem& rs, const std::vector<RootIndex>& roots);
// Roots whose support lies in J.
std::vector<RootIndex> parabolic_subsystem(const RootSystem& rs, const std::vector<int>& J);

// Condition (2) through the reduced form (2'): alpha ranges over level-1 roots only.
std::vector<Violation> condition2_reduced(const TwistedElement& x, const std::vector<Level>& n,
                                          ConvexityOptions opt = {});
// Condition (2) over all pairs of positive roots; the independent check of the reduced form.
std::vector<Violation> condition2_full(const TwistedElement& x, const std::vector<Level>& n,
                                       ConvexityOptions opt = {});

QuasiConvexity quasi_convexity(const TwistedElement& x, ConvexityOptions opt = {});
ConvexityReport analyze(const TwistedElement& x, ConvexityOptions opt = {});
bool is_convex(const TwistedElement& x);

// Phi_{x,<=1}^+ c Phi_{x,<=2}^+ c ... ; throws InputError if x is not quasi-convex.
std::vector<std::vector<RootIndex>> level_filtration(const TwistedElement& x);

} // namespace wc
