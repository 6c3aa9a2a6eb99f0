#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wc/root_system.hpp"

namespace wc {

using Word = std::vector<int>; // 0-based simple labels
using Perm = std::vector<RootIndex>;

// W x <delta> for a fixed root system and diagram automorphism.
class TwistedGroup {
public:
  TwistedGroup(std::shared_ptr<const RootSystem> rs, DiagramAutomorphism delta);

  const RootSystem& roots() const { return *rs_; }
  const std::shared_ptr<const RootSystem>& roots_ptr() const { return rs_; }
  const DiagramAutomorphism& twist() const { return delta_; }
  int twist_order() const { return delta_.order; }
  // Root permutation of delta^k, k taken modulo the order.
  const Perm& twist_power(int k) const;

private:
  std::shared_ptr<const RootSystem> rs_;
  DiagramAutomorphism delta_;
  std::vector<Perm> twist_powers_;
};

using GroupPtr = std::shared_ptr<const TwistedGroup>;

GroupPtr make_group(const CartanType& type);
GroupPtr make_group(std::shared_ptr<const RootSystem> rs, DiagramAutomorphism delta);

struct WeylElement {
  Perm root_perm;
  Word word; // lexicographically least reduced word

  int length() const { return static_cast<int>(word.size()); }
};

// x = w delta^k, stored by its action on root indices.
class TwistedElement {
public:
  TwistedElement(GroupPtr group, Perm action, int twist_power);

  const TwistedGroup& group() const { return *group_; }
  const GroupPtr& group_ptr() const { return group_; }
  const RootSystem& roots() const { return group_->roots(); }
  const Perm& action() const { return action_; }
  RootIndex operator()(RootIndex r) const { return action_[r]; }
  int twist_power() const { return twist_power_; }

  // l(x) := l(w) = #{positive roots sent negative}.
  int length() const { return length_; }
  // Order of x as a permutation of the roots (= order as an isometry of V).
  int order() const;

  TwistedElement inverse() const;
  TwistedElement conjugate_by_simple(int i) const;
  // Action of the W-part w = x delta^{-k}.
  Perm weyl_perm() const;

  friend bool operator==(const TwistedElement& a, const TwistedElement& b) {
    return a.twist_power_ == b.twist_power_ && a.action_ == b.action_;
  }

private:
  GroupPtr group_;
  Perm action_;
  int twist_power_ = 0;
  int length_ = 0;
};

Word parse_word(std::string_view text); // "2,3,4" -> {1,2,3}; throws InputError
std::string format_word(const Word& word); // {1,2,3} -> "s2s3s4", "1" for empty
std::string format_word_csv(const Word& word); // {1,2,3} -> "2,3,4"

TwistedElement identity_element(const GroupPtr& group);
TwistedElement from_word(const GroupPtr& group, const Word& word, int twist_power = 0);
TwistedElement multiply(const TwistedElement& a, const TwistedElement& b);
TwistedElement power(const TwistedElement& x, int k);

RootIndex act(const TwistedElement& x, RootIndex r, int power);

WeylElement weyl_part(const TwistedElement& x);
Word reduced_word(const TwistedElement& x);
// Lexicographically least reduced word for a W-element given by its root permutation.
Word reduced_word(const RootSystem& rs, const Perm& weyl_perm);

WeylElement longest_element(const RootSystem& rs);

// Matrix of x on V in the simple-root basis: column j holds the
// coefficients of x(alpha_j).
std::vector<std::vector<std::int64_t>> simple_basis_matrix(const TwistedElement& x);

bool is_elliptic(const TwistedElement& x);
std::vector<RootIndex> fixed_roots(const TwistedElement& x);

// |W| for the type (saturates at UINT64_MAX).
std::uint64_t weyl_group_order(const CartanType& type);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 60000;

// All elements of W as root permutations, in breadth-first order from the
// identity. Throws BudgetExceeded if |W| > budget.
std::vector<Perm> enumerate_weyl_group(const RootSystem& rs, std::uint64_t budget = kDefaultEnumerationBudget);

struct ConjugacyClass {
  TwistedElement representative;
  Word representative_word;
  std::vector<TwistedElement> elements; // sorted by (length, action)
  int min_length = 0;

  std::size_t size() const { return elements.size(); }
};

// W-conjugacy classes of the coset W delta^k, sorted by (min length,
// representative word). Throws BudgetExceeded if |W| > budget.
std::vector<ConjugacyClass> conjugacy_classes(const GroupPtr& group, int twist_power,
                                              std::uint64_t budget = kDefaultEnumerationBudget);

// Elements reachable from x by length-nonincreasing simple conjugations.
std::vector<TwistedElement> cyclic_shift_closure(const TwistedElement& x);
bool cyclic_shift_reachable(const TwistedElement& x, const TwistedElement& y);
bool cyclic_shift_equivalent(const TwistedElement& x, const TwistedElement& y);
std::vector<TwistedElement> min_length_set(const ConjugacyClass& cls);

} // namespace wc
