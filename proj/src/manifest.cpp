#include "wc/manifest.hpp"

#include <algorithm>
#include <functional>

namespace wc {

namespace {

GroupPtr group_of(const char* name) { return make_group(CartanType::parse(name)); }

GroupPtr twisted(const char* name, int which) {
  auto rs = std::make_shared<const RootSystem>(CartanType::parse(name));
  return make_group(rs, diagram_automorphisms(*rs).at(static_cast<std::size_t>(which)));
}

RootIndex root(const RootSystem& rs, std::vector<int> coeffs) { return rs.find(coeffs).value(); }

const ConjugacyClass& class_of(const std::vector<ConjugacyClass>& classes, const TwistedElement& x) {
  for (const auto& c : classes)
    if (std::find(c.elements.begin(), c.elements.end(), x) != c.elements.end()) return c;
  throw InconsistencyError("element missing from every class");
}

std::vector<Angle> angles(std::initializer_list<const char*> text) {
  std::vector<Angle> out;
  for (const char* t : text) out.push_back(Angle::parse(t));
  return out;
}

struct Outcome {
  bool pass;
  json observed;
};

struct Entry {
  const char* id;
  const char* claim;
  std::function<Outcome()> run;
};

Outcome a4_quasi_convex() {
  auto g = group_of("A4");
  const auto x = from_word(g, {0, 1, 2, 3, 0, 1});
  const auto r = analyze(x);
  const auto& rs = g->roots();
  const auto ni = levels(x.inverse());
  const int n2 = ni[root(rs, {0, 1, 0, 0})].value();
  const int n34 = ni[root(rs, {0, 0, 1, 1})].value();
  const int n234 = ni[root(rs, {0, 1, 1, 1})].value();
  return {r.quasi_convex() && !r.inverse_quasi_convex() && !r.convex && n2 == 1 && n34 == 2 && n234 == 3,
          {{"quasi_convex", r.quasi_convex()},
           {"inverse_quasi_convex", r.inverse_quasi_convex()},
           {"convex", r.convex},
           {"n_inverse", {{"a2", n2}, {"a3+a4", n34}, {"a2+a3+a4", n234}}}}};
}

Outcome a3_good_position_table() {
  auto g = group_of("A3");
  const auto x = from_word(g, {1, 0, 2}), c = from_word(g, {0, 1, 2});
  const auto fwd = angles({"pi/2", "pi"}), bwd = angles({"pi", "pi/2"});
  const bool x_fwd = is_good_position(x, fwd).has_value(), x_bwd = is_good_position(x, bwd).has_value();
  const bool c_fwd = is_good_position(c, fwd).has_value(), c_bwd = is_good_position(c, bwd).has_value();
  const auto comps = eigen_angles(x);
  json dims;
  for (const auto& comp : comps) dims[comp.angle.to_string()] = comp.dim;
  bool pi_line = false;
  for (const auto& comp : comps)
    if (comp.angle == Angle::parse("pi") && comp.space.exact && comp.dim == 1) {
      const auto& v = comp.space.exact->front();
      pi_line = v[1] == 0 && v[0] == -v[2] && v[0] != 0;
    }
  return {x_fwd && !x_bwd && !c_fwd && !c_bwd && pi_line && dims.value("pi/2", 0) == 2,
          {{"s2s1s3", {{"pi/2,pi", x_fwd}, {"pi,pi/2", x_bwd}}},
           {"s1s2s3", {{"pi/2,pi", c_fwd}, {"pi,pi/2", c_bwd}}},
           {"eigenspace_dims", dims},
           {"pi_eigenline_is_a1_minus_a3", pi_line}}};
}

Outcome a2_reflection_class() {
  auto g = group_of("A2");
  const auto& rs = g->roots();
  const auto classes = conjugacy_classes(g, 0);
  const auto& cls = class_of(classes, from_word(g, {0}));
  json omin = json::array();
  bool none_convex = true;
  for (const auto& y : min_length_set(cls)) {
    omin.push_back(format_word_csv(reduced_word(y)));
    none_convex = none_convex && !analyze(y).convex;
  }
  const bool longest_convex = analyze(from_word(g, {0, 1, 0})).convex;
  const auto rep = find_convex_representative(cls);
  auto phi = phi_of(from_word(g, {0}));
  std::sort(phi.begin(), phi.end());
  std::vector<RootIndex> expect{root(rs, {0, 1}), root(rs, {1, 1}), rs.negate(root(rs, {0, 1})), rs.negate(root(rs, {1, 1}))};
  std::sort(expect.begin(), expect.end());
  json phi_names = json::array();
  for (RootIndex r : phi) phi_names.push_back(root_name(rs, r));
  return {none_convex && omin.size() == 2 && longest_convex && rep.word == Word{0, 1, 0} && phi == expect,
          {{"O_min", omin},
           {"O_min_convex", !none_convex},
           {"s1s2s1_convex", longest_convex},
           {"representative", format_word_csv(rep.word)},
           {"phi_s1", phi_names}}};
}

Outcome c3_elliptic_not_convex() {
  auto g = group_of("C3");
  const auto x = from_word(g, {2, 1, 2, 0, 1});
  const auto classes = conjugacy_classes(g, 0);
  const auto& cls = class_of(classes, x);
  const auto r = analyze(x);
  const auto y = elliptic_min_convex(cls);
  const bool ok = is_elliptic(x) && x.length() == cls.min_length && !r.convex && !(y == x) &&
                  y.length() == cls.min_length && analyze(y).convex;
  return {ok,
          {{"elliptic", is_elliptic(x)},
           {"length", x.length()},
           {"class_min_length", cls.min_length},
           {"convex", r.convex},
           {"convex_min_length_member", format_word_csv(reduced_word(y))}}};
}

TwistedElement gl6_element() {
  auto g = group_of("A5");
  return element_from_permutation(g, parse_cycles("(1,6,4,5,2,3)", 6));
}

Outcome gl6_levels() {
  const auto x = gl6_element();
  const auto& rs = x.roots();
  const auto n = levels(x);
  const int n2 = n[root(rs, {0, 1, 0, 0, 0})].value();
  const int n3 = n[root(rs, {0, 0, 1, 0, 0})].value();
  const int n23 = n[root(rs, {0, 1, 1, 0, 0})].value();
  const bool qc = analyze(x).quasi_convex();
  return {n2 == 1 && n3 == 2 && n23 == 3 && !qc,
          {{"word", format_word_csv(reduced_word(x))}, {"n", {{"a2", n2}, {"a3", n3}, {"a2+a3", n23}}}, {"quasi_convex", qc}}};
}

Outcome gl6_not_injective() {
  CrossSectionData d(gl6_element(), MatrixGroup::GL);
  const auto search = collision_search(d, 1ull << 24, 1, {2, 3, 5});
  return {search.witness.has_value(), collision_json(search)};
}

Outcome a4_coxeter_sequences() {
  auto g = group_of("A4");
  const auto c = from_word(g, {0, 1, 2, 3});
  const auto classes = conjugacy_classes(g, 0);
  const auto& cls = class_of(classes, c);
  const auto seqs = admissible_sequences(c);
  const auto s1 = angles({"2pi/5", "4pi/5"}), s2 = angles({"4pi/5", "2pi/5"});
  const bool two = seqs.size() == 2 && std::find(seqs.begin(), seqs.end(), s1) != seqs.end() &&
                   std::find(seqs.begin(), seqs.end(), s2) != seqs.end();
  bool dims = true;
  for (const auto& comp : eigen_angles(c)) dims = dims && comp.dim == 2;

  std::vector<int> len1, len2;
  std::vector<TwistedElement> good;
  for (const auto& y : ordered_elements(cls)) {
    if (auto cert = is_good_position(y, s1)) {
      len1.push_back(good_position_length(*cert));
      len1.push_back(y.length());
      good.push_back(y);
    }
    if (auto cert = is_good_position(y, s2)) {
      len2.push_back(good_position_length(*cert));
      len2.push_back(y.length());
      good.push_back(y);
    }
  }
  const bool lengths = !len1.empty() && !len2.empty() &&
                       std::all_of(len1.begin(), len1.end(), [](int l) { return l == 4; }) &&
                       std::all_of(len2.begin(), len2.end(), [](int l) { return l == 8; });

  const auto x = from_word(g, {1, 2, 3, 0, 1, 2});
  const bool x_convex = analyze(x).convex && x.length() == 6;
  bool x_not_equiv = true;
  for (const auto& y : good) x_not_equiv = x_not_equiv && !cyclic_shift_equivalent(x, y);
  return {two && dims && lengths && x_convex && x_not_equiv && std::find(cls.elements.begin(), cls.elements.end(), x) != cls.elements.end(),
          {{"admissible_sequences", seqs.size()},
           {"eigenspace_dims_two", dims},
           {"good_position_lengths", {{"2pi/5,4pi/5", len1.empty() ? -1 : len1[0]}, {"4pi/5,2pi/5", len2.empty() ? -1 : len2[0]}}},
           {"good_position_elements", good.size()},
           {"s2s3s4s1s2s3", {{"convex", x_convex}, {"length", x.length()}, {"equivalent_to_good_position", !x_not_equiv}}}}};
}

Outcome a4_convex_roundtrip() {
  CrossSectionData d(from_word(group_of("A4"), {1, 2, 3, 0, 1, 2}), MatrixGroup::GL);
  const auto s = roundtrip_trials(PrimeField(101), d, 500, 42);
  return {d.quasi_convex() && d.phi_plus().empty() && s.all_passed(), roundtrip_json("F101", s)};
}

Outcome g2_conjecture() {
  const auto r = verify_conjecture(group_of("G2"));
  bool w0 = true;
  for (const auto& e : r.elements) w0 = w0 && e.w0_condition;
  return {r.status == "pass" && r.in_scope == static_cast<int>(r.elements.size()) && w0 && r.h == 6, coxeter_json(r)};
}

Outcome a3_flip_w0_condition() {
  const auto g = twisted("A3", 1);
  bool all = true;
  json words = json::array();
  for (const auto& c : coxeter_elements(g)) {
    all = all && check_w0_condition(c.element);
    words.push_back(format_word_csv(c.word));
  }
  return {all && !words.empty(), {{"coxeter_elements", words}, {"w0_condition", all}}};
}

Outcome elliptic_phi_empty() {
  std::size_t checked = 0;
  bool ok = true;
  for (const char* t : {"A3", "B3", "G2", "D4"}) {
    auto g = group_of(t);
    for (const auto& w : enumerate_weyl_group(g->roots())) {
      const TwistedElement x(g, w, 0);
      if (!is_elliptic(x)) continue;
      ++checked;
      ok = ok && phi_of(x).empty();
    }
  }
  return {ok && checked > 0, {{"elliptic_elements", checked}, {"all_phi_empty", ok}}};
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {"a4-quasi-convex-inverse-not", "A4 s1s2s3s4s1s2 is quasi-convex, its inverse is not; n-values 1,2,3 of the inverse on a2, a3+a4, a2+a3+a4", a4_quasi_convex},
      {"a3-good-position-table", "A3 s2s1s3 is in good position for (pi/2, pi) only; s1s2s3 for neither order", a3_good_position_table},
      {"a2-reflection-class", "A2 reflection class: O_min = {s1, s2} has no convex element, s1s2s1 is convex", a2_reflection_class},
      {"c3-elliptic-minimal-not-convex", "C3 s3s2s3s1s2 is elliptic and of minimal length but not convex", c3_elliptic_not_convex},
      {"gl6-levels", "GL6 permutation (1,6,4,5,2,3) has n-values 1,2,3 on a2, a3, a2+a3", gl6_levels},
      {"gl6-not-injective", "GL6 permutation (1,6,4,5,2,3): xi has a collision over a small prime field", gl6_not_injective},
      {"a4-coxeter-good-position", "A4 Coxeter class: two admissible sequences, good-position lengths 4 and 8, s2s3s4s1s2s3 convex of length 6 and not equivalent to a good-position element", a4_coxeter_sequences},
      {"a4-convex-roundtrip", "GL5 s2s3s4s1s2s3: 500/500 xi/sigma roundtrips over F101, seed 42", a4_convex_roundtrip},
      {"g2-conjecture", "G2 Coxeter elements satisfy c^(h/2) = w0 and are convex", g2_conjecture},
      {"a3-flip-w0-condition", "A3 with the diagram flip: every twisted Coxeter element satisfies the w0 condition", a3_flip_w0_condition},
      {"elliptic-phi-empty", "Elliptic elements have empty Phi(x)", elliptic_phi_empty},
  };
  return list;
}

} // namespace

std::vector<std::string> manifest_ids() {
  std::vector<std::string> out;
  for (const auto& e : entries()) out.emplace_back(e.id);
  return out;
}

ManifestCheck run_manifest_entry(const std::string& id) {
  for (const auto& e : entries()) {
    if (id != e.id) continue;
    ManifestCheck c{e.id, e.claim, false, nullptr};
    try {
      auto o = e.run();
      c.pass = o.pass;
      c.observed = std::move(o.observed);
    } catch (const std::exception& ex) {
      c.observed = {{"error", ex.what()}};
    }
    return c;
  }
  throw InputError("unknown manifest entry: " + id);
}

std::vector<ManifestCheck> run_manifest() {
  std::vector<ManifestCheck> out;
  for (const auto& id : manifest_ids()) out.push_back(run_manifest_entry(id));
  return out;
}

} // namespace wc
