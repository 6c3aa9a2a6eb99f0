#include "wc/weyl.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "wc/errors.hpp"
#include "wc/field.hpp"
#include "wc/linalg.hpp"

namespace wc {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1)) * 1099511628211ull;
    return h;
  }
};

using KeyMap = std::unordered_map<std::vector<int>, std::size_t, KeyHash>;

// A linear map is determined by the images of the simple roots.
std::vector<int> key_of(const Perm& action, int rank) { return {action.begin(), action.begin() + rank}; }

Perm compose(const Perm& outer, const Perm& inner) {
  Perm out(inner.size());
  for (std::size_t r = 0; r < inner.size(); ++r) out[r] = outer[inner[r]];
  return out;
}

Perm invert_perm(const Perm& p) {
  Perm inv(p.size());
  for (std::size_t r = 0; r < p.size(); ++r) inv[p[r]] = static_cast<RootIndex>(r);
  return inv;
}

int mod(int a, int m) { return ((a % m) + m) % m; }

} // namespace

TwistedGroup::TwistedGroup(std::shared_ptr<const RootSystem> rs, DiagramAutomorphism delta)
    : rs_(std::move(rs)), delta_(std::move(delta)) {
  Perm p(rs_->size());
  std::iota(p.begin(), p.end(), 0);
  for (int k = 0; k < delta_.order; ++k) {
    twist_powers_.push_back(p);
    p = compose(delta_.root_perm, p);
  }
}

const Perm& TwistedGroup::twist_power(int k) const { return twist_powers_[mod(k, delta_.order)]; }

GroupPtr make_group(const CartanType& type) {
  auto rs = std::make_shared<const RootSystem>(type);
  auto id = identity_automorphism(*rs);
  return std::make_shared<const TwistedGroup>(rs, std::move(id));
}

GroupPtr make_group(std::shared_ptr<const RootSystem> rs, DiagramAutomorphism delta) {
  return std::make_shared<const TwistedGroup>(std::move(rs), std::move(delta));
}

TwistedElement::TwistedElement(GroupPtr group, Perm action, int twist_power)
    : group_(std::move(group)), action_(std::move(action)) {
  twist_power_ = mod(twist_power, group_->twist_order());
  const int n = group_->roots().positive_count();
  for (int r = 0; r < n; ++r) length_ += action_[r] >= n;
}

int TwistedElement::order() const {
  std::vector<char> seen(action_.size(), 0);
  std::int64_t l = 1;
  for (std::size_t r = 0; r < action_.size(); ++r) {
    if (seen[r]) continue;
    std::int64_t len = 0;
    for (auto s = r; !seen[s]; s = static_cast<std::size_t>(action_[s])) {
      seen[s] = 1;
      ++len;
    }
    l = std::lcm(l, len);
  }
  return static_cast<int>(l);
}

TwistedElement TwistedElement::inverse() const { return {group_, invert_perm(action_), -twist_power_}; }

TwistedElement TwistedElement::conjugate_by_simple(int i) const {
  const Perm& s = roots().reflection(i);
  Perm out(action_.size());
  for (std::size_t r = 0; r < action_.size(); ++r) out[r] = s[action_[s[r]]];
  return {group_, std::move(out), twist_power_};
}

Perm TwistedElement::weyl_perm() const { return compose(action_, group_->twist_power(-twist_power_)); }

Word parse_word(std::string_view text) {
  Word w;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
    if (item.empty()) {
      if (text.empty()) break;
      throw InputError("empty entry in word '" + std::string(text) + "'");
    }
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad word entry '" + item + "'");
    }
    if (used != item.size() || v < 1) throw InputError("bad word entry '" + item + "'");
    w.push_back(v - 1);
  }
  return w;
}

std::string format_word(const Word& word) {
  if (word.empty()) return "1";
  std::string s;
  for (int i : word) s += "s" + std::to_string(i + 1);
  return s;
}

std::string format_word_csv(const Word& word) {
  std::string s;
  for (std::size_t k = 0; k < word.size(); ++k) s += (k ? "," : "") + std::to_string(word[k] + 1);
  return s;
}

TwistedElement identity_element(const GroupPtr& group) {
  Perm p(group->roots().size());
  std::iota(p.begin(), p.end(), 0);
  return {group, std::move(p), 0};
}

TwistedElement from_word(const GroupPtr& group, const Word& word, int twist_power) {
  const RootSystem& rs = group->roots();
  Perm a = group->twist_power(twist_power);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it < 0 || *it >= rs.rank())
      throw InputError("simple label " + std::to_string(*it + 1) + " out of range for " + rs.cartan_type().name());
    a = compose(rs.reflection(*it), a);
  }
  return {group, std::move(a), twist_power};
}

TwistedElement multiply(const TwistedElement& a, const TwistedElement& b) {
  assert(a.group_ptr() == b.group_ptr());
  return {a.group_ptr(), compose(a.action(), b.action()), a.twist_power() + b.twist_power()};
}

TwistedElement power(const TwistedElement& x, int k) {
  TwistedElement base = k < 0 ? x.inverse() : x;
  TwistedElement acc = identity_element(x.group_ptr());
  for (int e = std::abs(k); e > 0; e >>= 1) {
    if (e & 1) acc = multiply(acc, base);
    base = multiply(base, base);
  }
  return acc;
}

RootIndex act(const TwistedElement& x, RootIndex r, int p) {
  if (p >= 0) {
    for (int i = 0; i < p; ++i) r = x(r);
    return r;
  }
  const Perm inv = invert_perm(x.action());
  for (int i = 0; i < -p; ++i) r = inv[r];
  return r;
}

Word reduced_word(const RootSystem& rs, const Perm& weyl_perm) {
  // Greedy smallest left descent gives the lexicographically least reduced word.
  Perm winv = invert_perm(weyl_perm);
  const int n = rs.positive_count();
  Word word;
  for (;;) {
    int i = 0;
    while (i < rs.rank() && winv[i] < n) ++i;
    if (i == rs.rank()) break;
    word.push_back(i);
    const Perm& s = rs.reflection(i);
    Perm next(winv.size());
    for (std::size_t r = 0; r < winv.size(); ++r) next[r] = winv[s[r]];
    winv = std::move(next);
  }
  return word;
}

Word reduced_word(const TwistedElement& x) { return reduced_word(x.roots(), x.weyl_perm()); }

WeylElement weyl_part(const TwistedElement& x) {
  WeylElement w;
  w.root_perm = x.weyl_perm();
  w.word = reduced_word(x.roots(), w.root_perm);
  return w;
}

WeylElement longest_element(const RootSystem& rs) {
  Perm w(rs.size());
  std::iota(w.begin(), w.end(), 0);
  const int n = rs.positive_count();
  for (;;) {
    int i = 0;
    while (i < rs.rank() && w[i] >= n) ++i;
    if (i == rs.rank()) break;
    w = compose(w, rs.reflection(i));
  }
  WeylElement out;
  out.word = reduced_word(rs, w);
  out.root_perm = std::move(w);
  return out;
}

std::vector<std::vector<std::int64_t>> simple_basis_matrix(const TwistedElement& x) {
  const RootSystem& rs = x.roots();
  const int n = rs.rank();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n));
  for (int j = 0; j < n; ++j) {
    auto c = rs.coefficients(x(j));
    for (int i = 0; i < n; ++i) m[i][j] = c[i];
  }
  return m;
}

bool is_elliptic(const TwistedElement& x) {
  const auto m = simple_basis_matrix(x);
  const int n = x.roots().rank();
  RationalField q;
  Matrix<mpq_class> a(n, n, q.zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = mpq_class(static_cast<long>(m[i][j] - (i == j)));
  return rank(q, a) == static_cast<std::size_t>(n);
}

std::vector<RootIndex> fixed_roots(const TwistedElement& x) {
  std::vector<RootIndex> out;
  for (RootIndex r = 0; r < x.roots().size(); ++r)
    if (x(r) == r) out.push_back(r);
  return out;
}

std::uint64_t weyl_group_order(const CartanType& t) {
  auto sat_mul = [](std::uint64_t a, std::uint64_t b) {
    return (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b) ? std::numeric_limits<std::uint64_t>::max()
                                                                         : a * b;
  };
  auto fact = [&](int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f = sat_mul(f, static_cast<std::uint64_t>(k));
    return f;
  };
  auto pow2 = [&](int n) {
    std::uint64_t f = 1;
    for (int k = 0; k < n; ++k) f = sat_mul(f, 2);
    return f;
  };
  switch (t.family) {
  case 'A': return fact(t.rank + 1);
  case 'B':
  case 'C': return sat_mul(pow2(t.rank), fact(t.rank));
  case 'D': return sat_mul(pow2(t.rank - 1), fact(t.rank));
  case 'E': return t.rank == 6 ? 51840ull : t.rank == 7 ? 2903040ull : 696729600ull;
  case 'F': return 1152;
  case 'G': return 12;
  default: return 0;
  }
}

namespace {

void check_budget(const RootSystem& rs, std::uint64_t budget) {
  const auto order = weyl_group_order(rs.cartan_type());
  if (order > budget)
    throw BudgetExceeded("|W(" + rs.cartan_type().name() + ")| = " + std::to_string(order) +
                         " exceeds the enumeration budget of " + std::to_string(budget) +
                         " elements (raise it with --allow-large)");
}

} // namespace

std::vector<Perm> enumerate_weyl_group(const RootSystem& rs, std::uint64_t budget) {
  check_budget(rs, budget);
  Perm id(rs.size());
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  KeyMap index;
  index.emplace(key_of(id, rs.rank()), 0);
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (int i = 0; i < rs.rank(); ++i) {
      Perm next = compose(rs.reflection(i), elems[head]);
      if (index.emplace(key_of(next, rs.rank()), elems.size()).second) elems.push_back(std::move(next));
    }
  return elems;
}

std::vector<ConjugacyClass> conjugacy_classes(const GroupPtr& group, int twist_power, std::uint64_t budget) {
  const RootSystem& rs = group->roots();
  const int rank = rs.rank();
  const auto weyl = enumerate_weyl_group(rs, budget);
  const Perm& twist = group->twist_power(twist_power);

  std::vector<Perm> coset;
  coset.reserve(weyl.size());
  KeyMap index;
  for (const auto& w : weyl) {
    coset.push_back(compose(w, twist));
    index.emplace(key_of(coset.back(), rank), coset.size() - 1);
  }

  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> class_of(coset.size(), kUnset);
  std::vector<std::vector<std::size_t>> members;
  std::vector<int> key(rank);
  for (std::size_t start = 0; start < coset.size(); ++start) {
    if (class_of[start] != kUnset) continue;
    const std::size_t id = members.size();
    members.emplace_back();
    std::deque<std::size_t> queue{start};
    class_of[start] = id;
    while (!queue.empty()) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      members[id].push_back(cur);
      for (int i = 0; i < rank; ++i) {
        const Perm& s = rs.reflection(i);
        for (int j = 0; j < rank; ++j) key[j] = s[coset[cur][s[j]]];
        const std::size_t nb = index.at(key);
        if (class_of[nb] == kUnset) {
          class_of[nb] = id;
          queue.push_back(nb);
        }
      }
    }
  }

  std::vector<ConjugacyClass> classes;
  classes.reserve(members.size());
  for (auto& ids : members) {
    std::vector<TwistedElement> elems;
    elems.reserve(ids.size());
    for (auto id : ids) elems.emplace_back(group, coset[id], twist_power);
    std::sort(elems.begin(), elems.end(), [](const TwistedElement& a, const TwistedElement& b) {
      if (a.length() != b.length()) return a.length() < b.length();
      return a.action() < b.action();
    });
    const int min_len = elems.front().length();
    std::size_t best = 0;
    Word best_word = reduced_word(elems.front());
    for (std::size_t k = 1; k < elems.size() && elems[k].length() == min_len; ++k) {
      Word w = reduced_word(elems[k]);
      if (w < best_word) {
        best_word = std::move(w);
        best = k;
      }
    }
    classes.push_back(ConjugacyClass{elems[best], std::move(best_word), std::move(elems), min_len});
  }
  std::sort(classes.begin(), classes.end(), [](const ConjugacyClass& a, const ConjugacyClass& b) {
    if (a.min_length != b.min_length) return a.min_length < b.min_length;
    return a.representative_word < b.representative_word;
  });
  return classes;
}

std::vector<TwistedElement> cyclic_shift_closure(const TwistedElement& x) {
  const int rank = x.roots().rank();
  std::vector<TwistedElement> seen{x};
  KeyMap index;
  index.emplace(key_of(x.action(), rank), 0);
  for (std::size_t head = 0; head < seen.size(); ++head)
    for (int i = 0; i < rank; ++i) {
      TwistedElement y = seen[head].conjugate_by_simple(i);
      if (y.length() > seen[head].length()) continue;
      if (index.emplace(key_of(y.action(), rank), seen.size()).second) seen.push_back(std::move(y));
    }
  return seen;
}

bool cyclic_shift_reachable(const TwistedElement& x, const TwistedElement& y) {
  if (x.twist_power() != y.twist_power()) return false;
  for (const auto& z : cyclic_shift_closure(x))
    if (z == y) return true;
  return false;
}

bool cyclic_shift_equivalent(const TwistedElement& x, const TwistedElement& y) {
  return cyclic_shift_reachable(x, y) && cyclic_shift_reachable(y, x);
}

std::vector<TwistedElement> min_length_set(const ConjugacyClass& cls) {
  std::vector<TwistedElement> out;
  for (const auto& e : cls.elements)
    if (e.length() == cls.min_length) out.push_back(e);
  return out;
}

} // namespace wc
