#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wc/construction.hpp"
#include "wc/execution.hpp"
#include "wc/group_realization.hpp"

namespace wc {

// Independent per-item seed derived from a run seed.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

struct ClassRow {
  int class_id = 0;
  std::size_t size = 0;
  int min_length = 0;
  Word class_word; // minimal-length representative of the class
  RepresentativeResult result;

  // Representative convex with Phi(y) = Phi^y, re-checked from scratch.
  bool verified() const;
};

// One row per conjugacy class of W delta^k, in class order.
std::vector<ClassRow> class_table(const GroupPtr& group, int twist_power, Execution exec = Execution::parallel,
                                  std::uint64_t budget = kDefaultEnumerationBudget, std::uint64_t seed = 1);

struct RoundtripStats {
  std::size_t trials = 0;
  std::size_t passed = 0;      // sigma(xi(p)) == p and xi(sigma(g)) == g
  std::size_t not_in_cell = 0; // sigma refused a point of the image
  std::vector<std::size_t> failed; // trial indices, ascending

  bool all_passed() const { return passed == trials; }
};

// Trial t draws its cell point from trial_seed(seed, t).
template <class F>
RoundtripStats roundtrip_trials(const F& field, const CrossSectionData& data, std::size_t trials, std::uint64_t seed,
                                Execution exec = Execution::parallel);

struct TransversalityStats {
  std::size_t trials = 0;
  std::size_t full = 0;
  std::size_t expected = 0;
  std::vector<std::size_t> ranks; // per trial

  bool all_full() const { return full == trials; }
};

// Random rational points z = x ell u of the cell, checked in gl_n (or sl_n when `traceless`).
TransversalityStats transversality_trials(const CrossSectionData& data, std::size_t trials, std::uint64_t seed,
                                          bool traceless = false, Execution exec = Execution::parallel);

struct GoodPositionRecord {
  Word word;
  std::vector<Angle> sequence;
  int length = 0;     // l(x)
  int gp_length = 0;  // good_position_length of the certificate
  bool convex = false;
  bool phi_equals_fixed = false;

  bool consistent() const { return convex && phi_equals_fixed && gp_length == length; }
};

// Every (element of W delta^k, admissible sequence) pair in good position.
std::vector<GoodPositionRecord> good_position_scan(const GroupPtr& group, int twist_power,
                                                   Execution exec = Execution::parallel,
                                                   std::uint64_t budget = kDefaultEnumerationBudget);

} // namespace wc
