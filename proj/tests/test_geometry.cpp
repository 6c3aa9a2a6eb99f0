#include "doctest.h"

#include <algorithm>

#include "wc/convexity.hpp"
#include "wc/errors.hpp"
#include "wc/geometry.hpp"
#include "wc/lp.hpp"

using namespace wc;

namespace {

GroupPtr group_of(const char* name) { return make_group(CartanType::parse(name)); }

GroupPtr twisted_group(const char* name, int which) {
  auto rs = std::make_shared<const RootSystem>(CartanType::parse(name));
  return make_group(rs, diagram_automorphisms(*rs).at(which));
}

std::vector<Angle> angles(std::initializer_list<const char*> text) {
  std::vector<Angle> out;
  for (const char* t : text) out.push_back(Angle::parse(t));
  return out;
}

const AngleComponent& component(const std::vector<AngleComponent>& comps, const char* a) {
  for (const auto& c : comps)
    if (c.angle == Angle::parse(a)) return c;
  FAIL("missing angle " << a);
  return comps.front();
}

// Every certificate must come with the convexity consequences.
void check_certificate(const TwistedElement& x, const GoodPositionCertificate& cert) {
  const auto rep = analyze(x);
  CHECK(rep.convex);
  CHECK(rep.phi_equals_fixed);
  CHECK(good_position_length(cert) == x.length());
  CHECK(cert.h_values.front() == x.roots().positive_count());
  for (std::size_t i = 1; i < cert.h_values.size(); ++i) CHECK(cert.h_values[i] <= cert.h_values[i - 1]);
}

} // namespace

TEST_CASE("polynomials") {
  CHECK(cyclotomic_polynomial(1) == IntPoly{-1, 1});
  CHECK(cyclotomic_polynomial(2) == IntPoly{1, 1});
  CHECK(cyclotomic_polynomial(4) == IntPoly{1, 0, 1});
  CHECK(cyclotomic_polynomial(6) == IntPoly{1, -1, 1});
  CHECK(cyclotomic_polynomial(5) == IntPoly{1, 1, 1, 1, 1});
  CHECK(cyclotomic_polynomial(12) == IntPoly{1, 0, -1, 0, 1});
  for (int d = 1; d <= 30; ++d) CHECK(static_cast<int>(cyclotomic_polynomial(d).size()) == euler_phi(d) + 1);
  // char poly of [[0,-1],[1,0]] is t^2 + 1
  CHECK(characteristic_polynomial({{0, -1}, {1, 0}}) == IntPoly{1, 0, 1});
  CHECK(characteristic_polynomial({{2, 1}, {0, 3}}) == IntPoly{6, -5, 1});
  auto mult = cyclotomic_multiplicities({{0, -1}, {1, 0}}, 4);
  CHECK(mult.size() == 1);
  CHECK(mult[4] == 1);
  CHECK_THROWS_AS(cyclotomic_multiplicities({{2, 0}, {0, 1}}, 2), InconsistencyError);
}

TEST_CASE("simplex") {
  // max x + y s.t. x + 2y <= 4, 3x + y <= 6
  auto sol = maximize<mpq_class>({{1, 2}, {3, 1}}, {4, 6}, {1, 1});
  REQUIRE(sol);
  CHECK(sol->value == mpq_class(14, 5));
  auto dsol = maximize<double>({{1, 2}, {3, 1}}, {4, 6}, {1, 1});
  REQUIRE(dsol);
  CHECK(dsol->value == doctest::Approx(2.8));
  CHECK_FALSE(maximize<mpq_class>({{1, -1}}, {1}, {0, 1}).has_value());
}

TEST_CASE("angles") {
  CHECK(Angle::parse("pi") == Angle::from_fraction(1, 2));
  CHECK(Angle::parse("pi/2") == Angle::from_fraction(1, 4));
  CHECK(Angle::parse("2pi/5") == Angle::from_fraction(1, 5));
  CHECK(Angle::parse("4*pi/5").to_string() == "4pi/5");
  CHECK(Angle::parse("2pi/3").root_order() == 3);
  CHECK(Angle::parse("pi/2") < Angle::parse("pi"));
  CHECK_THROWS_AS(Angle::parse("3pi/2"), InputError);
  CHECK_THROWS_AS(Angle::parse("bogus"), InputError);
}

TEST_CASE("eigen-angles of s2s1s3 in A3") {
  auto g = group_of("A3");
  auto x = from_word(g, {1, 0, 2});
  const auto comps = eigen_angles(x);
  REQUIRE(comps.size() == 2);
  const auto& half = component(comps, "pi/2");
  const auto& pi = component(comps, "pi");
  CHECK(half.dim == 2);
  CHECK(pi.dim == 1);
  // (a,-a,-a,a) has simple-root coordinates proportional to (1,0,-1).
  REQUIRE(pi.space.exact);
  const auto& v = pi.space.exact->front();
  CHECK(v[1] == 0);
  CHECK(v[0] == -v[2]);
  // (a,b,-b,-a) <-> (a, a+b, a): first and last coordinates agree.
  for (const auto& w : *half.space.exact) CHECK(w[0] == w[2]);

  const Stage s = full_stage(x);
  const auto& rs = g->roots();
  std::vector<RootIndex> expect = {1, *rs.find(std::vector<int>{1, 1, 1}), rs.negate(1),
                                   rs.negate(*rs.find(std::vector<int>{1, 1, 1}))};
  std::sort(expect.begin(), expect.end());
  CHECK(psi(s, Angle::parse("pi")) == expect);
  CHECK(psi(s, Angle::parse("pi/2")).empty());

  std::mt19937_64 rng(7);
  auto rp = regular_point(s, pi.space, rng);
  CHECK(rp.psi == expect);
}

TEST_CASE("identity and Coxeter angles") {
  auto a3 = group_of("A3");
  auto id = eigen_angles(identity_element(a3));
  REQUIRE(id.size() == 1);
  CHECK(id[0].angle.is_zero());
  CHECK(id[0].dim == 3);
  CHECK(admissible_sequences(identity_element(a3)) == std::vector<std::vector<Angle>>{{}});
  CHECK(is_admissible(identity_element(a3), {}));

  auto a4 = group_of("A4");
  auto c = from_word(a4, {0, 1, 2, 3});
  auto comps = eigen_angles(c);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].angle == Angle::parse("2pi/5"));
  CHECK(comps[1].angle == Angle::parse("4pi/5"));
  CHECK(comps[0].dim == 2);
  CHECK(comps[1].dim == 2);
  CHECK(admissible_sequences(c) == std::vector<std::vector<Angle>>{angles({"2pi/5", "4pi/5"}), angles({"4pi/5", "2pi/5"})});
  CHECK_FALSE(is_admissible(c, {}));
  CHECK_THROWS_AS(is_admissible(c, angles({"pi"})), InputError);
}

TEST_CASE("good position in A3") {
  auto g = group_of("A3");
  auto x = from_word(g, {1, 0, 2});
  auto cert = is_good_position(x, angles({"pi/2", "pi"}));
  REQUIRE(cert);
  CHECK(cert->exact);
  check_certificate(x, *cert);
  CHECK(cert->h_values == std::vector<int>{6, 0, 0});
  CHECK(good_position_length(*cert) == 3);
  CHECK_FALSE(is_good_position(x, angles({"pi", "pi/2"})));
  CHECK(is_good_position_direct(x, angles({"pi/2", "pi"})));
  CHECK_FALSE(is_good_position_direct(x, angles({"pi", "pi/2"})));

  auto y = from_word(g, {0, 1, 2});
  CHECK_FALSE(is_good_position(y, angles({"pi/2", "pi"})));
  CHECK_FALSE(is_good_position(y, angles({"pi", "pi/2"})));
}

TEST_CASE("A2 reflection class") {
  auto g = group_of("A2");
  auto w0 = from_word(g, {0, 1, 0});
  auto cert = is_good_position(w0, angles({"pi"}));
  REQUIRE(cert);
  check_certificate(w0, *cert);
  // s1 is not at good position for the same sequence
  CHECK_FALSE(is_good_position(from_word(g, {0}), angles({"pi"})));
}

TEST_CASE("separation witness") {
  auto g = group_of("B2");
  const auto& rs = g->roots();
  auto w0 = from_word(g, {0, 1, 0, 1});
  Eigen::VectorXd e(2);
  e << 2.0, 3.0; // strictly dominant in simple-root coordinates of B2
  for (RootIndex r = 0; r < rs.positive_count(); ++r) CHECK(separation_witness(w0, e, r) == 1);

  auto a3 = group_of("A3");
  auto x = from_word(a3, {1, 0, 2});
  auto cert = is_good_position(x, angles({"pi/2", "pi"}));
  REQUIRE(cert);
  const auto n = levels(x);
  const auto& first = cert->regular_points.front();
  for (RootIndex r = 0; r < a3->roots().positive_count(); ++r) CHECK(separation_witness(x, first, r) == n[r].value());

  auto a4 = group_of("A4");
  for (const auto& c : conjugacy_classes(a4, 0)) {
    if (c.representative_word != Word{0, 1, 2, 3}) continue;
    int found = 0;
    for (const auto& y : c.elements) {
      auto cy = is_good_position(y, angles({"2pi/5", "4pi/5"}));
      if (!cy) continue;
      ++found;
      check_certificate(y, *cy);
      CHECK(y.length() == 4);
      const auto ny = levels(y);
      for (RootIndex r = 0; r < 10; ++r) CHECK(separation_witness(y, cy->regular_points.front(), r) == ny[r].value());
    }
    CHECK(found > 0);
  }
}

TEST_CASE("lengths of good position elements in the A4 Coxeter class") {
  auto a4 = group_of("A4");
  for (const auto& c : conjugacy_classes(a4, 0)) {
    if (c.representative_word != Word{0, 1, 2, 3}) continue;
    int four = 0, eight = 0;
    for (const auto& y : c.elements) {
      if (auto cy = is_good_position(y, angles({"2pi/5", "4pi/5"}))) {
        CHECK(good_position_length(*cy) == 4);
        ++four;
      }
      if (auto cy = is_good_position(y, angles({"4pi/5", "2pi/5"}))) {
        CHECK(good_position_length(*cy) == 8);
        CHECK(y.length() == 8);
        ++eight;
      }
    }
    CHECK(four > 0);
    CHECK(eight > 0);
  }
}

TEST_CASE("exhaustive geometry properties") {
  std::vector<GroupPtr> groups = {group_of("A3"), group_of("B3"), group_of("G2"), group_of("B2"),
                                  twisted_group("A3", 1), twisted_group("D4", 1)};
  for (const auto& g : groups) {
    CAPTURE(g->roots().cartan_type().name());
    const int k = g->twist_order() > 1 ? 1 : 0;
    std::mt19937_64 rng(11);
    int certificates = 0;
    for (const auto& cls : conjugacy_classes(g, k)) {
      for (const auto& x : cls.elements) {
        const Stage s = full_stage(x);
        const auto comps = eigen_angles(s);
        int total = 0;
        for (const auto& c : comps) total += c.dim;
        CHECK(total == g->roots().rank());

        // V^theta(x) = V^theta(x^-1) and x-stable.
        const auto inv = eigen_angles(x.inverse());
        REQUIRE(inv.size() == comps.size());
        const auto mx = s.matrix;
        Eigen::MatrixXd m(mx.size(), mx.size());
        for (std::size_t i = 0; i < mx.size(); ++i)
          for (std::size_t j = 0; j < mx.size(); ++j) m(i, j) = static_cast<double>(mx[i][j]);
        for (std::size_t i = 0; i < comps.size(); ++i) {
          CHECK(inv[i].angle == comps[i].angle);
          const auto& b = comps[i].space.basis;
          Eigen::MatrixXd both(b.rows(), 2 * b.cols());
          both << b, inv[i].space.basis;
          CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(both).setThreshold(1e-9).rank() == b.cols());
          Eigen::MatrixXd img(b.rows(), 2 * b.cols());
          img << b, m * b;
          CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(img).setThreshold(1e-9).rank() == b.cols());
        }

        const auto n = levels(x);
        const auto phi = phi_of(x);
        for (const auto& c : comps) {
          if (c.angle.is_zero()) continue;
          const auto ps = psi(s, c.angle);
          std::vector<RootIndex> avoid;
          for (RootIndex r = 0; r < g->roots().positive_count(); ++r)
            if (!std::binary_search(ps.begin(), ps.end(), r)) avoid.push_back(r);
          auto e = dominant_regular_point(s, c.space, avoid, rng);
          if (!e) continue;
          // Psi is standard parabolic and contains Phi(x).
          CHECK(standard_parabolic_J(g->roots(), ps).has_value());
          CHECK(std::includes(ps.begin(), ps.end(), phi.begin(), phi.end()));
          for (RootIndex r : avoid) CHECK(separation_witness(x, e->point, r) == n[r].value());
        }

        for (const auto& seq : admissible_sequences(x)) {
          auto cert = is_good_position(x, seq);
          CHECK(static_cast<bool>(cert) == is_good_position_direct(x, seq));
          if (cert) {
            check_certificate(x, *cert);
            ++certificates;
          }
        }
      }
    }
    CHECK(certificates > 0);
  }
}
