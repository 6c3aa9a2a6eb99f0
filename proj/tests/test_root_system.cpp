#include "doctest.h"

#include <set>

#include "wc/errors.hpp"
#include "wc/root_system.hpp"

using namespace wc;

namespace {

RootSystem rs_of(const char* name) { return RootSystem(CartanType::parse(name)); }

RootIndex root_with(const RootSystem& rs, std::vector<int> c) {
  auto r = rs.find(c);
  REQUIRE(r.has_value());
  return *r;
}

} // namespace

TEST_CASE("classical root counts") {
  struct Row {
    const char* type;
    int roots;
  };
  for (auto [type, count] : {Row{"A1", 2}, Row{"A2", 6}, Row{"A4", 20}, Row{"B2", 8}, Row{"B3", 18}, Row{"C3", 18},
                             Row{"C4", 32}, Row{"D4", 24}, Row{"D5", 40}, Row{"G2", 12}, Row{"F4", 48}, Row{"E6", 72},
                             Row{"E7", 126}, Row{"E8", 240}}) {
    CAPTURE(type);
    const auto rs = rs_of(type);
    CHECK(rs.size() == count);
    CHECK(rs.positive_count() * 2 == count);
  }
}

TEST_CASE("inadmissible ranks are rejected") {
  CHECK_THROWS_AS(CartanType::parse("E9"), InputError);
  CHECK_THROWS_AS(CartanType::parse("D2"), InputError);
  CHECK_THROWS_AS(CartanType::parse("B1"), InputError);
  CHECK_THROWS_AS(CartanType::parse("F3"), InputError);
  CHECK_THROWS_AS(CartanType::parse("G3"), InputError);
  CHECK_THROWS_AS(CartanType::parse("A0"), InputError);
  CHECK_THROWS_AS(CartanType::parse("Q2"), InputError);
  CHECK_THROWS_AS(CartanType::parse("A"), InputError);
}

TEST_CASE("layout invariants hold in every type") {
  for (const char* t : {"A3", "B3", "C3", "D4", "G2", "F4", "E6"}) {
    CAPTURE(t);
    const auto rs = rs_of(t);
    const int n = rs.positive_count();
    for (int i = 0; i < rs.rank(); ++i) CHECK(rs.height(i) == 1);
    for (RootIndex r = 0; r < n; ++r) {
      auto c = rs.coefficients(r);
      for (int v : c) CHECK(v >= 0);
      auto neg = rs.coefficients(r + n);
      for (int i = 0; i < rs.rank(); ++i) CHECK(neg[i] == -c[i]);
      if (r > 0) CHECK(rs.height(r - 1) <= rs.height(r));
    }
    // sum table iff the coefficient sum is a root; symmetric.
    for (RootIndex i = 0; i < rs.size(); ++i)
      for (RootIndex j = 0; j < rs.size(); ++j) {
        std::vector<int> s(rs.rank());
        for (int k = 0; k < rs.rank(); ++k) s[k] = rs.coefficients(i)[k] + rs.coefficients(j)[k];
        CHECK(rs.sum(i, j) == rs.find(s));
        CHECK(rs.sum(i, j) == rs.sum(j, i));
      }
    // pairing invariant under simple reflections
    for (int k = 0; k < rs.rank(); ++k)
      for (RootIndex i = 0; i < rs.size(); ++i)
        for (RootIndex j = 0; j < rs.size(); ++j)
          CHECK(rs.pairing(rs.reflection(k)[i], rs.reflection(k)[j]) == rs.pairing(i, j));
  }
}

TEST_CASE("root_sum examples") {
  const auto a2 = rs_of("A2");
  CHECK(root_sum(a2, 0, 1) == root_with(a2, {1, 1}));
  CHECK_FALSE(root_sum(a2, 0, 0).has_value());
  CHECK_THROWS_AS(root_sum(a2, 0, 99), InputError);

  const auto g2 = rs_of("G2");
  CHECK(root_sum(g2, 0, 1) == root_with(g2, {1, 1}));
  // Independent enumeration: integer combinations a*alpha1 + b*alpha2 whose
  // ambient squared length is a root length.
  const std::vector<int> a1 = {1, -1, 0}, a2v = {-2, 1, 1};
  std::set<std::pair<int, int>> oracle;
  for (int a = -4; a <= 4; ++a)
    for (int b = -4; b <= 4; ++b) {
      int len = 0;
      for (int k = 0; k < 3; ++k) len += (a * a1[k] + b * a2v[k]) * (a * a1[k] + b * a2v[k]);
      if (len == 2 || len == 6) oracle.insert({a, b});
    }
  CHECK(oracle.size() == 12);
  CHECK(oracle.count({3, 1}) == 1);
  CHECK(oracle.count({3, 2}) == 1);
  std::set<std::pair<int, int>> built;
  for (RootIndex r = 0; r < g2.size(); ++r) built.insert({g2.coefficients(r)[0], g2.coefficients(r)[1]});
  CHECK(built == oracle);
}

TEST_CASE("is_closed") {
  const auto a2 = rs_of("A2");
  std::vector<RootIndex> pos{0, 1, 2};
  CHECK(is_closed(a2, pos));
  CHECK_FALSE(is_closed(a2, std::vector<RootIndex>{0, 1}));
  CHECK(is_closed(a2, std::vector<RootIndex>{0, 2}));
  CHECK_THROWS_AS(is_closed(a2, std::vector<RootIndex>{0, a2.negate(0)}), InputError);
}

TEST_CASE("diagram automorphisms") {
  CHECK(diagram_automorphisms(rs_of("A3")).size() == 2);
  CHECK(diagram_automorphisms(rs_of("B2")).size() == 1);
  CHECK(diagram_automorphisms(rs_of("G2")).size() == 1);
  CHECK(diagram_automorphisms(rs_of("E6")).size() == 2);
  CHECK(diagram_automorphisms(rs_of("F4")).size() == 1);

  const auto d4 = rs_of("D4");
  const auto autos = diagram_automorphisms(d4);
  CHECK(autos.size() == 6);
  int order3 = 0;
  for (const auto& d : autos) order3 += d.order == 3;
  CHECK(order3 == 2);
  CHECK(autos.front().is_identity());

  const auto a3 = rs_of("A3");
  const auto flip = diagram_automorphisms(a3)[1];
  CHECK(flip.simple_perm == std::vector<int>{2, 1, 0});
  for (const char* t : {"A3", "A4", "D4", "E6", "D5"}) {
    const auto rs = rs_of(t);
    for (const auto& d : diagram_automorphisms(rs)) {
      for (int i = 0; i < rs.rank(); ++i) CHECK(d.root_perm[i] == d.simple_perm[i]);
      for (RootIndex r = 0; r < rs.size(); ++r) CHECK(rs.is_positive(d.root_perm[r]) == rs.is_positive(r));
      for (int i = 0; i < rs.rank(); ++i)
        for (int j = 0; j < rs.rank(); ++j) CHECK(rs.pairing(d.root_perm[i], d.root_perm[j]) == rs.pairing(i, j));
    }
  }
  CHECK(parse_automorphism(a3, "3,2,1").simple_perm == flip.simple_perm);
  CHECK_THROWS_AS(parse_automorphism(a3, "2,1,3"), InputError);
}

TEST_CASE("root names") {
  const auto g2 = rs_of("G2");
  CHECK(root_name(g2, root_with(g2, {3, 2})) == "3a1+2a2");
  CHECK(root_name(g2, root_with(g2, {-1, -1})) == "-a1-a2");
}
