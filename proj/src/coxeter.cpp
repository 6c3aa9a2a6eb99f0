#include "wc/coxeter.hpp"

#include <algorithm>
#include <numeric>

#include "wc/errors.hpp"

namespace wc {

std::vector<std::vector<int>> twist_orbits(const TwistedGroup& g) {
  const auto& perm = g.twist().simple_perm;
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::vector<int> orbit;
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      orbit.push_back(j);
    }
    std::sort(orbit.begin(), orbit.end());
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<CoxeterElement> coxeter_elements(const GroupPtr& group) {
  const auto orbits = twist_orbits(*group);
  std::vector<CoxeterElement> out;
  std::vector<std::size_t> choice(orbits.size(), 0);
  for (;;) {
    Word letters;
    for (std::size_t o = 0; o < orbits.size(); ++o) letters.push_back(orbits[o][choice[o]]);
    std::sort(letters.begin(), letters.end());
    do {
      auto x = from_word(group, letters, 1);
      bool dup = false;
      for (const auto& c : out) dup = dup || c.element == x;
      if (!dup) out.push_back({letters, x});
    } while (std::next_permutation(letters.begin(), letters.end()));
    std::size_t o = 0;
    while (o < orbits.size() && ++choice[o] == orbits[o].size()) choice[o++] = 0;
    if (o == orbits.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const CoxeterElement& a, const CoxeterElement& b) { return a.word < b.word; });
  return out;
}

int coxeter_number(const GroupPtr& group) {
  int h = 0;
  for (const auto& c : coxeter_elements(group)) {
    const int o = c.element.order();
    if (h == 0) h = o;
    if (o != h) throw InconsistencyError("order of c delta depends on the choice of c");
  }
  return h;
}

bool check_w0_condition(const TwistedElement& c_delta) {
  const int h = c_delta.order();
  if (h % 2) return false;
  const auto& g = c_delta.group_ptr();
  const TwistedElement w0(g, longest_element(g->roots()).root_perm, 0);
  const TwistedElement d(g, g->twist_power(h / 2), h / 2);
  return power(c_delta, h / 2) == multiply(w0, d);
}

ReflectionOrdering reflection_ordering(const RootSystem& rs, const Word& w0_word) {
  const int n = rs.positive_count();
  if (static_cast<int>(w0_word.size()) != n) throw InputError("word does not have length l(w0)");
  for (int l : w0_word)
    if (l < 0 || l >= rs.rank()) throw InputError("simple label out of range");
  Perm acc(rs.size());
  std::iota(acc.begin(), acc.end(), 0);
  for (auto it = w0_word.rbegin(); it != w0_word.rend(); ++it) {
    const auto& s = rs.reflection(*it);
    for (auto& r : acc) r = s[r];
  }
  if (acc != longest_element(rs).root_perm) throw InputError("word is not a reduced word of the longest element");

  ReflectionOrdering out;
  out.source_word = w0_word;
  // beta_i = s_N ... s_{i+1} alpha_i, listed from i = N down to 1.
  for (int i = n - 1; i >= 0; --i) {
    RootIndex r = rs.simple(w0_word[i]);
    for (int j = i + 1; j < n; ++j) r = rs.reflection(w0_word[j])[r];
    if (!rs.is_positive(r)) throw InconsistencyError("reflection ordering produced a negative root");
    out.ordered_roots.push_back(r);
  }
  if (betweenness_violation(rs, out.ordered_roots))
    throw InconsistencyError("constructed ordering violates betweenness");
  return out;
}

std::optional<std::array<RootIndex, 3>> betweenness_violation(const RootSystem& rs,
                                                             const std::vector<RootIndex>& order) {
  const int n = rs.positive_count();
  if (static_cast<int>(order.size()) != n) throw InputError("ordering must list every positive root once");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) {
    if (order[i] < 0 || order[i] >= n || pos[order[i]] >= 0) throw InputError("ordering must list every positive root once");
    pos[order[i]] = i;
  }
  for (RootIndex a = 0; a < n; ++a)
    for (RootIndex b = a + 1; b < n; ++b) {
      auto s = rs.sum(a, b);
      if (!s || !rs.is_positive(*s)) continue;
      const int lo = std::min(pos[a], pos[b]), hi = std::max(pos[a], pos[b]);
      if (!(lo < pos[*s] && pos[*s] < hi)) return std::array<RootIndex, 3>{a, b, *s};
    }
  return std::nullopt;
}

CoxeterLevels coxeter_levels(const CoxeterElement& c) {
  const TwistedElement& x = c.element;
  if (!check_w0_condition(x)) throw InputError("levels from blocks require (c delta)^{h/2} = w0 delta^{h/2}");
  const RootSystem& rs = x.roots();
  const int np = rs.positive_count();
  const int h = x.order();
  const int n = static_cast<int>(c.word.size());

  // delta^{-1} s_n ... s_{j+1} alpha_j: the roots sent negative by c delta.
  const Perm& dinv = x.group_ptr()->twist_power(-1);
  std::vector<RootIndex> beta(n);
  for (int j = 0; j < n; ++j) {
    RootIndex r = rs.simple(c.word[j]);
    for (int k = j + 1; k < n; ++k) r = rs.reflection(c.word[k])[r];
    beta[j] = dinv[r];
  }

  CoxeterLevels out;
  out.forward.assign(np, 0);
  out.inverse.assign(np, 0);
  auto place = [&](std::vector<int>& table, RootIndex r, int level) {
    if (!rs.is_positive(r) || table[r] != 0) throw InconsistencyError("blocks do not partition the positive roots");
    table[r] = level;
  };
  for (int i = 1; i <= h / 2; ++i)
    for (int j = n - 1; j >= 0; --j) {
      place(out.forward, act(x, beta[j], 1 - i), i);
      place(out.inverse, act(x, beta[j], i - h / 2), i);
    }
  const Perm& dh = x.group_ptr()->twist_power(h / 2);
  for (int m = 0; m < h / 2; ++m)
    for (int j = n - 1; j >= 0; --j) out.chain.push_back(dh[act(x, beta[j], -m)]);
  return out;
}

CoxeterReport verify_conjecture(const GroupPtr& group) {
  const RootSystem& rs = group->roots();
  CoxeterReport rep;
  rep.type = rs.cartan_type().name();
  rep.twist = group->twist().simple_perm;
  rep.h = coxeter_number(group);

  for (const auto& c : coxeter_elements(group)) {
    const TwistedElement& x = c.element;
    CoxeterElementReport e;
    e.word = c.word;
    e.length = x.length();
    e.elliptic = is_elliptic(x);
    const auto analysis = analyze(x);
    e.phi_empty = analysis.phi_x.empty();
    e.quasi_convex = analysis.quasi_convex();
    e.inverse_quasi_convex = analysis.inverse_quasi_convex();
    e.convex = analysis.convex;
    e.w0_condition = check_w0_condition(x);

    if (e.w0_condition) {
      ++rep.in_scope;
      if (!e.convex) throw InconsistencyError("convexity guarantee violated: " + format_word(c.word) + " satisfies the w0 condition but is not convex");
      const auto lv = coxeter_levels(c);
      const auto nf = levels(x), ni = levels(x.inverse());
      e.levels_match = true;
      for (RootIndex r = 0; r < rs.positive_count(); ++r)
        e.levels_match = e.levels_match && !nf[r].is_infinite() && !ni[r].is_infinite() &&
                         nf[r].value() == lv.forward[r] && ni[r].value() == lv.inverse[r];
      e.chain_is_reflection_ordering = !betweenness_violation(rs, lv.chain).has_value();
      // Reduced word c delta(c) ... delta^{h/2-1}(c) of w0.
      Word w0_word;
      for (int p = 0; p < rep.h / 2; ++p)
        for (int l : c.word) {
          int m = l;
          for (int q = 0; q < p; ++q) m = group->twist().simple_perm[m];
          w0_word.push_back(m);
        }
      try {
        e.chain_matches_w0_word = reflection_ordering(rs, w0_word).ordered_roots == lv.chain;
      } catch (const InputError&) {
        e.chain_matches_w0_word = false;
      }
    } else if (!e.convex) {
      // Re-verify with the full form of condition (2) on both x and its inverse.
      const TwistedElement inv = x.inverse();
      const bool full_fwd = analysis.forward.condition1_ok && condition2_full(x, levels(x)).empty();
      const bool full_inv = analysis.inverse.condition1_ok && condition2_full(inv, levels(inv)).empty();
      if (full_fwd != analysis.quasi_convex() || full_inv != analysis.inverse_quasi_convex())
        throw InconsistencyError("condition (2) and its reduced form disagree on " + format_word(c.word));
      ++rep.counterexamples;
    }
    rep.elements.push_back(std::move(e));
  }
  if (rep.counterexamples > 0)
    rep.status = "fail";
  else
    rep.status = rep.in_scope == static_cast<int>(rep.elements.size()) ? "pass" : "partial";
  return rep;
}

} // namespace wc
