#include "doctest.h"

#include <algorithm>

#include "wc/convexity.hpp"
#include "wc/errors.hpp"
#include "wc/root_system.hpp"

using namespace wc;

namespace {

GroupPtr group_of(const char* name) { return make_group(CartanType::parse(name)); }

RootIndex root_with(const RootSystem& rs, std::vector<int> c) { return *rs.find(c); }

// Level oracle working on coefficient vectors only.
int oracle_level(const RootSystem& rs, const Word& word, std::vector<int> c) {
  auto sign = [](const std::vector<int>& v) {
    for (int a : v)
      if (a != 0) return a > 0;
    return true;
  };
  const bool start = sign(c);
  for (int i = 1; i <= 64; ++i) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      int pair = 0;
      for (int k = 0; k < rs.rank(); ++k) pair += c[k] * rs.cartan(k, *it);
      c[*it] -= pair;
    }
    if (sign(c) != start) return i;
  }
  return 0;
}

bool closed_set(const RootSystem& rs, const std::vector<RootIndex>& set) {
  for (RootIndex a : set)
    for (RootIndex b : set)
      if (auto s = rs.sum(a, b); s && std::find(set.begin(), set.end(), *s) == set.end()) return false;
  return true;
}

} // namespace

TEST_CASE("Level ordering") {
  CHECK(Level(1) < Level(2));
  CHECK(Level(7) < Level::infinite());
  CHECK(Level::infinite() == Level::infinite());
  CHECK_THROWS_AS(Level::infinite().value(), InputError);
}

TEST_CASE("phi_of") {
  auto a2 = group_of("A2");
  const auto& rs = a2->roots();
  CHECK(phi_of(identity_element(a2)).size() == 6);
  // The computed set is {+-a2, +-(a1+a2)}.
  auto phi = phi_of(from_word(a2, {0}));
  std::vector<RootIndex> expect = {1, root_with(rs, {1, 1}), rs.negate(1), rs.negate(root_with(rs, {1, 1}))};
  std::sort(expect.begin(), expect.end());
  CHECK(phi == expect);
  CHECK(phi_of(from_word(group_of("C3"), {2, 1, 2, 0, 1})).empty());
  CHECK(phi_of(from_word(group_of("A4"), {0, 1, 2, 3})).empty());
}

TEST_CASE("n values on cited roots") {
  auto a4 = group_of("A4");
  const auto& rs = a4->roots();
  const auto inv = from_word(a4, {0, 1, 2, 3, 0, 1}).inverse();
  CHECK(n_of(inv, root_with(rs, {0, 1, 0, 0})) == 1);
  CHECK(n_of(inv, root_with(rs, {0, 0, 1, 1})) == 2);
  CHECK(n_of(inv, root_with(rs, {0, 1, 1, 1})) == 3);

  auto a2 = group_of("A2");
  CHECK_THROWS_AS(n_of(from_word(a2, {0}), 1), InputError);
  auto w0 = from_word(a2, {0, 1, 0});
  for (RootIndex g = 0; g < 3; ++g) CHECK(n_of(w0, g) == 1);

  auto s1s2 = from_word(a2, {0, 1});
  CHECK(n_of(s1s2, 0) == 2);
  CHECK(n_of(s1s2, 1) == 1);
  CHECK(n_of(s1s2, 2) == 1);
}

TEST_CASE("levels match the coefficient-vector oracle") {
  for (auto [t, w] : {std::pair{"A4", Word{0, 1, 2, 3, 0, 1}}, std::pair{"B3", Word{0, 1, 2, 1}},
                      std::pair{"G2", Word{0, 1, 0}}, std::pair{"F4", Word{0, 1, 2, 3}}}) {
    auto g = group_of(t);
    const auto& rs = g->roots();
    auto x = from_word(g, w);
    auto lv = levels(x);
    for (RootIndex r = 0; r < rs.size(); ++r) {
      auto c = rs.coefficients(r);
      int o = oracle_level(rs, w, std::vector<int>(c.begin(), c.end()));
      if (o == 0)
        CHECK(lv[r].is_infinite());
      else
        CHECK(lv[r] == Level(o));
    }
  }
}

TEST_CASE("analyze examples") {
  auto a4 = group_of("A4");
  auto r1 = analyze(from_word(a4, {0, 1, 2, 3, 0, 1}));
  CHECK(r1.quasi_convex());
  CHECK_FALSE(r1.inverse_quasi_convex());
  CHECK_FALSE(r1.convex);
  CHECK_FALSE(r1.inverse.violations.empty());

  auto r2 = analyze(from_word(a4, {1, 2, 3, 0, 1, 2}));
  CHECK(r2.convex);
  CHECK(r2.phi_x.empty());
  CHECK(r2.phi_equals_fixed);

  auto c3 = group_of("C3");
  auto x = from_word(c3, {2, 1, 2, 0, 1});
  CHECK(is_elliptic(x));
  CHECK_FALSE(analyze(x).convex);

  auto a2 = group_of("A2");
  auto r3 = analyze(from_word(a2, {0, 1}));
  CHECK(r3.convex);
  CHECK(r3.max_level == 2);
  CHECK(r3.positive_levels[1] == std::vector<RootIndex>{1, 2});
  CHECK(r3.positive_levels[2] == std::vector<RootIndex>{0});

  auto r4 = analyze(from_word(a2, {0}));
  CHECK_FALSE(r4.parabolic_J.has_value());
  CHECK_FALSE(r4.convex);
}

TEST_CASE("level filtration") {
  auto a2 = group_of("A2");
  auto f = level_filtration(from_word(a2, {0, 1}));
  REQUIRE(f.size() == 2);
  CHECK(f[0] == std::vector<RootIndex>{1, 2});
  CHECK(f[1] == std::vector<RootIndex>{0, 1, 2});
  CHECK(level_filtration(from_word(a2, {0, 1, 0})).size() == 1);

  auto a4 = group_of("A4");
  for (const auto& level : level_filtration(from_word(a4, {1, 2, 3, 0, 1, 2})))
    CHECK(closed_set(a4->roots(), level));
  CHECK_THROWS_AS(level_filtration(from_word(a4, {0, 1, 2, 3, 0, 1}).inverse()), InputError);
}

TEST_CASE("exhaustive properties") {
  for (const char* t : {"A3", "B2", "B3", "G2"}) {
    CAPTURE(t);
    auto g = group_of(t);
    const auto& rs = g->roots();
    const int np = rs.positive_count();
    for (const auto& p : enumerate_weyl_group(rs)) {
      TwistedElement x(g, p, 0);
      const auto n = levels(x);
      const auto phi = phi_of(x);
      // Phi(x) symmetric, x-stable, contains the fixed roots.
      for (RootIndex r : phi) {
        CHECK(n[rs.negate(r)].is_infinite());
        CHECK(n[x(r)].is_infinite());
      }
      for (RootIndex r : fixed_roots(x)) CHECK(n[r].is_infinite());
      for (RootIndex r = 0; r < rs.size(); ++r)
        if (!n[r].is_infinite()) CHECK(n[r].value() <= x.order());

      // min(n(a), n(b)) <= n(a+b)
      for (RootIndex a = 0; a < np; ++a)
        for (RootIndex b = 0; b < np; ++b) {
          auto s = rs.sum(a, b);
          if (!s || n[a].is_infinite() || n[b].is_infinite() || n[*s].is_infinite()) continue;
          CHECK(std::min(n[a], n[b]) <= n[*s]);
        }

      // (2) and (2') agree
      const bool reduced = condition2_reduced(x, n).empty();
      const bool full = condition2_full(x, n).empty();
      CHECK(reduced == full);

      const auto rep = analyze(x);
      CHECK(rep.convex == analyze(x.inverse()).convex);
      CHECK(rep.convex == is_convex(x));

      if (rep.quasi_convex()) {
        // alpha in Phi(x), beta at level i, alpha+beta a root => level i.
        for (RootIndex a : phi)
          for (RootIndex b = 0; b < np; ++b) {
            if (n[b].is_infinite()) continue;
            if (auto s = rs.sum(a, b)) CHECK(n[*s] == n[b]);
          }
        for (int i = 1; i <= rep.max_level; ++i) CHECK(closed_set(rs, rep.positive_levels[i]));
        for (const auto& level : level_filtration(x)) CHECK(closed_set(rs, level));
        // x maps level i into level i-1, and level 1 into negatives.
        for (RootIndex b = 0; b < np; ++b) {
          if (n[b].is_infinite()) continue;
          if (n[b] == Level(1))
            CHECK_FALSE(rs.is_positive(x(b)));
          else
            CHECK(n[x(b)].value() == n[b].value() - 1);
        }
      }
    }
  }
}

TEST_CASE("strict mode flags nothing extra once condition (1) holds") {
  auto g = group_of("A3");
  for (const auto& p : enumerate_weyl_group(g->roots())) {
    TwistedElement x(g, p, 0);
    auto q = quasi_convexity(x);
    if (!q.condition1_ok) continue;
    auto strict = quasi_convexity(x, {.strict = true});
    CHECK(strict.violations.size() == q.violations.size());
  }
}

TEST_CASE("twisted elements") {
  auto rs = std::make_shared<const RootSystem>(CartanType::parse("A3"));
  auto g = make_group(rs, diagram_automorphisms(*rs)[1]);
  for (const auto& c : conjugacy_classes(g, 1)) {
    for (const auto& x : c.elements) {
      const auto n = levels(x);
      CHECK(condition2_reduced(x, n).empty() == condition2_full(x, n).empty());
      CHECK(analyze(x).convex == analyze(x.inverse()).convex);
    }
  }
}
