#include "doctest.h"

#include <algorithm>
#include <map>

#include "wc/coxeter.hpp"
#include "wc/errors.hpp"

using namespace wc;

namespace {

GroupPtr group_of(const char* name) { return make_group(CartanType::parse(name)); }

GroupPtr twisted_group(const char* name, int which) {
  auto rs = std::make_shared<const RootSystem>(CartanType::parse(name));
  return make_group(rs, diagram_automorphisms(*rs).at(which));
}

std::vector<Word> words_of(const std::vector<CoxeterElement>& cs) {
  std::vector<Word> out;
  for (const auto& c : cs) out.push_back(c.word);
  return out;
}

RootIndex root_of(const RootSystem& rs, std::vector<int> coeffs) { return *rs.find(coeffs); }

// Order of an element computed by iterating the root action until it returns to the identity.
int brute_order(const TwistedElement& x) {
  TwistedElement y = x;
  const auto id = identity_element(x.group_ptr());
  int k = 1;
  while (!(y == id)) {
    y = multiply(y, x);
    ++k;
  }
  return k;
}

} // namespace

TEST_CASE("coxeter elements") {
  auto a2 = group_of("A2");
  CHECK(words_of(coxeter_elements(a2)) == std::vector<Word>{{0, 1}, {1, 0}});
  CHECK(twist_orbits(*a2).size() == 2);

  auto a3 = twisted_group("A3", 1);
  CHECK(twist_orbits(*a3) == std::vector<std::vector<int>>{{0, 2}, {1}});
  CHECK(words_of(coxeter_elements(a3)) == std::vector<Word>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
  for (const auto& c : coxeter_elements(a3)) CHECK(c.element.twist_power() == 1);

  auto g2 = group_of("G2");
  CHECK(coxeter_elements(g2).size() == 2);
  CHECK(coxeter_number(g2) == 6);
  CHECK(coxeter_number(a2) == 3);
  CHECK(coxeter_number(group_of("B3")) == 6);
  CHECK(coxeter_number(group_of("F4")) == 12);
  CHECK(coxeter_number(group_of("D4")) == 6);

  // Commuting letters give one element.
  CHECK(coxeter_elements(group_of("A3")).size() == 4);
  for (const auto& c : coxeter_elements(group_of("B3"))) CHECK(brute_order(c.element) == 6);
}

TEST_CASE("w0 condition") {
  auto g2 = group_of("G2");
  for (const auto& c : coxeter_elements(g2)) CHECK(check_w0_condition(c.element));
  for (const auto& c : coxeter_elements(group_of("A2"))) CHECK_FALSE(check_w0_condition(c.element));
  for (const auto& c : coxeter_elements(twisted_group("A3", 1))) CHECK(check_w0_condition(c.element));

  // Oracle: repeated multiplication against w0 built from its reduced word.
  for (const char* t : {"A3", "B3", "D4", "D5", "C3", "A5"}) {
    auto g = group_of(t);
    const auto w0 = from_word(g, longest_element(g->roots()).word);
    for (const auto& c : coxeter_elements(g)) {
      const int h = brute_order(c.element);
      bool expected = h % 2 == 0;
      if (expected) {
        TwistedElement y = identity_element(g);
        for (int k = 0; k < h / 2; ++k) y = multiply(y, c.element);
        expected = y == w0;
      }
      CAPTURE(t);
      CAPTURE(format_word(c.word));
      CHECK(check_w0_condition(c.element) == expected);
    }
  }
  // With w0 = -1 every Coxeter element qualifies.
  for (const char* t : {"B3", "D4", "C3", "F4"})
    for (const auto& c : coxeter_elements(group_of(t))) CHECK(check_w0_condition(c.element));
  CHECK_FALSE(check_w0_condition(coxeter_elements(group_of("A3")).front().element));
}

TEST_CASE("reflection orderings") {
  const RootSystem a2(CartanType::parse("A2"));
  const RootIndex a1 = root_of(a2, {1, 0}), a12 = root_of(a2, {1, 1}), a2r = root_of(a2, {0, 1});
  CHECK(reflection_ordering(a2, {0, 1, 0}).ordered_roots == std::vector<RootIndex>{a1, a12, a2r});
  CHECK(reflection_ordering(a2, {1, 0, 1}).ordered_roots == std::vector<RootIndex>{a2r, a12, a1});
  CHECK_THROWS_AS(reflection_ordering(a2, {0, 1}), InputError);
  CHECK_THROWS_AS(reflection_ordering(a2, {0, 0, 1}), InputError);
  CHECK_THROWS_AS(reflection_ordering(a2, {0, 5, 0}), InputError);

  const RootSystem rank1(CartanType::parse("A1"));
  CHECK(reflection_ordering(rank1, {0}).ordered_roots.size() == 1);

  CHECK(betweenness_violation(a2, {a1, a2r, a12}).has_value());
  CHECK_FALSE(betweenness_violation(a2, {a1, a12, a2r}).has_value());
  CHECK_THROWS_AS(betweenness_violation(a2, {a1, a1, a2r}), InputError);

  // The reversed word is also reduced for w0 and orders the same set.
  for (const char* t : {"A3", "B3", "G2"}) {
    const RootSystem rs(CartanType::parse(t));
    auto w0 = longest_element(rs);
    CHECK_NOTHROW(reflection_ordering(rs, w0.word));
    Word rev(w0.word.rbegin(), w0.word.rend());
    auto fwd = reflection_ordering(rs, w0.word).ordered_roots;
    auto bwd = reflection_ordering(rs, rev).ordered_roots;
    std::vector<RootIndex> sorted_f = fwd, sorted_b = bwd;
    std::sort(sorted_f.begin(), sorted_f.end());
    std::sort(sorted_b.begin(), sorted_b.end());
    CHECK(sorted_f == sorted_b);
  }
}

TEST_CASE("block levels") {
  auto g2 = group_of("G2");
  for (const auto& c : coxeter_elements(g2)) {
    auto lv = coxeter_levels(c);
    std::map<int, int> sizes;
    for (int l : lv.forward) ++sizes[l];
    CHECK(sizes == std::map<int, int>{{1, 2}, {2, 2}, {3, 2}});
    const auto n = levels(c.element);
    const auto ni = levels(c.element.inverse());
    for (RootIndex r = 0; r < g2->roots().positive_count(); ++r) {
      CHECK(n[r].value() == lv.forward[r]);
      CHECK(ni[r].value() == lv.inverse[r]);
    }
  }
  auto b2 = group_of("B2");
  auto c = coxeter_elements(b2).front();
  CHECK(c.element.order() == 4);
  auto lv = coxeter_levels(c);
  CHECK(std::count(lv.forward.begin(), lv.forward.end(), 1) == 2);
  CHECK(std::count(lv.forward.begin(), lv.forward.end(), 2) == 2);
  CHECK(lv.chain.size() == 4);
  CHECK_FALSE(betweenness_violation(b2->roots(), lv.chain));

  CHECK_THROWS_AS(coxeter_levels(coxeter_elements(group_of("A2")).front()), InputError);
}

TEST_CASE("conjecture harness") {
  auto g2 = verify_conjecture(group_of("G2"));
  CHECK(g2.status == "pass");
  CHECK(g2.in_scope == 2);

  auto a2 = verify_conjecture(group_of("A2"));
  CHECK(a2.status == "partial");
  CHECK(a2.in_scope == 0);
  for (const auto& e : a2.elements) CHECK(e.convex);

  auto a4 = verify_conjecture(group_of("A4"));
  CHECK(a4.counterexamples + a4.in_scope <= static_cast<int>(a4.elements.size()));
  CHECK(a4.in_scope == 0);
  MESSAGE("A4 delta=id: " << a4.status << ", " << a4.counterexamples << " non-convex of " << a4.elements.size());
}

TEST_CASE("scope battery") {
  std::vector<GroupPtr> groups = {group_of("G2"), group_of("B2"), group_of("B3"), group_of("B4"),
                                  group_of("C3"), group_of("C4"), group_of("D4"), group_of("F4"), twisted_group("A2", 1),
                                  twisted_group("A3", 1), twisted_group("A4", 1), twisted_group("E6", 1)};
  const RootSystem d4(CartanType::parse("D4"));
  for (std::size_t k = 1; k < diagram_automorphisms(d4).size(); ++k) groups.push_back(twisted_group("D4", static_cast<int>(k)));
  for (const auto& g : groups) {
    CAPTURE(g->roots().cartan_type().name());
    CAPTURE(g->twist().order);
    auto rep = verify_conjecture(g);
    CHECK(rep.status == "pass");
    CHECK(rep.counterexamples == 0);
    for (const auto& e : rep.elements) {
      CHECK(e.elliptic);
      CHECK(e.phi_empty);
      CHECK(e.convex);
      CHECK(e.levels_match);
      CHECK(e.chain_is_reflection_ordering);
      CHECK(e.chain_matches_w0_word);
    }
  }
}
