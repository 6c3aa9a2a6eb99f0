#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wc/convexity.hpp"
#include "wc/weyl.hpp"

namespace wc {

struct CoxeterElement {
  Word word; // c, one simple reflection per delta-orbit
  TwistedElement element; // c delta
};

// delta-orbits on the simple labels, each sorted, ordered by smallest label.
std::vector<std::vector<int>> twist_orbits(const TwistedGroup& g);

// All c delta, c a product of one simple reflection per orbit in any order,
// deduplicated as group elements and sorted by word.
std::vector<CoxeterElement> coxeter_elements(const GroupPtr& group);

// Order of c delta; throws InconsistencyError if it depends on c.
int coxeter_number(const GroupPtr& group);

// h even and (c delta)^{h/2} = w0 delta^{h/2}.
bool check_w0_condition(const TwistedElement& c_delta);

struct ReflectionOrdering {
  std::vector<RootIndex> ordered_roots; // smallest first
  Word source_word;
};

// Ordering beta_N < ... < beta_1 with beta_i = s_N ... s_{i+1} alpha_i for
// w0 = s_1 ... s_N. Throws InputError unless the word is a reduced word of w0.
ReflectionOrdering reflection_ordering(const RootSystem& rs, const Word& w0_word);

// First violating triple (alpha, beta, alpha+beta) of the betweenness
// property, if any. Throws InputError unless `order` lists every positive root once.
std::optional<std::array<RootIndex, 3>> betweenness_violation(const RootSystem& rs,
                                                             const std::vector<RootIndex>& order);

struct CoxeterLevels {
  std::vector<int> forward; // level of each positive root for c delta, from the blocks
  std::vector<int> inverse; // same for (c delta)^{-1}
  // Blocks delta^{h/2} y^m {beta_n, ..., beta_1} for m = 0, ..., h/2-1, smallest first.
  std::vector<RootIndex> chain;
};

// With y = (c delta)^{-1} and beta_j = delta^{-1} s_n ... s_{j+1} alpha_j over
// the letters of c: level i of c delta is y^{i-1} {beta_n, ..., beta_1} and
// level i of y is y^{h/2-i} {beta_n, ..., beta_1}. Roots act on the left, so
// the roles of c delta and its inverse are exchanged relative to the
// right-action form of the same identity. Throws InputError unless the w0
// condition holds; InconsistencyError if the blocks do not partition the
// positive roots.
CoxeterLevels coxeter_levels(const CoxeterElement& c);

struct CoxeterElementReport {
  Word word;
  int length = 0;
  bool elliptic = false;
  bool phi_empty = false;
  bool quasi_convex = false;
  bool inverse_quasi_convex = false;
  bool convex = false;
  bool w0_condition = false;
  // Only meaningful when the w0 condition holds.
  bool levels_match = false;
  bool chain_is_reflection_ordering = false;
  bool chain_matches_w0_word = false;
};

struct CoxeterReport {
  std::string type;
  std::vector<int> twist; // simple_perm of delta
  int h = 0;
  std::vector<CoxeterElementReport> elements;
  // pass: every element convex and covered by the w0 condition;
  // partial: every element convex, some outside the condition;
  // fail: a verified non-convex element.
  std::string status;
  int in_scope = 0;
  int counterexamples = 0;
};

// Runs every delta-Coxeter element through the convexity check. A failure
// under the w0 condition throws InconsistencyError; other failures are
// re-verified with the full condition and reported.
CoxeterReport verify_conjecture(const GroupPtr& group);

} // namespace wc
