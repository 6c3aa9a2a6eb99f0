#include "wc/convexity.hpp"

#include <algorithm>
#include <tuple>

#include "wc/errors.hpp"

namespace wc {

int Level::value() const {
  if (!value_) throw InputError("level is infinite");
  return *value_;
}

std::vector<Level> levels(const TwistedElement& x) {
  const RootSystem& rs = x.roots();
  std::vector<Level> n(rs.size(), Level::infinite());
  for (RootIndex g = 0; g < rs.size(); ++g) {
    const bool pos = rs.is_positive(g);
    int i = 1;
    for (RootIndex r = x(g); r != g; r = x(r), ++i)
      if (rs.is_positive(r) != pos) {
        n[g] = Level(i);
        break;
      }
  }
  return n;
}

std::vector<RootIndex> phi_of(const TwistedElement& x) {
  const auto n = levels(x);
  std::vector<RootIndex> out;
  for (RootIndex g = 0; g < static_cast<RootIndex>(n.size()); ++g)
    if (n[g].is_infinite()) out.push_back(g);
  return out;
}

int n_of(const TwistedElement& x, RootIndex gamma) {
  const RootSystem& rs = x.roots();
  if (gamma < 0 || gamma >= rs.size()) throw InputError("root index out of range");
  const bool pos = rs.is_positive(gamma);
  int i = 1;
  for (RootIndex r = x(gamma); r != gamma; r = x(r), ++i)
    if (rs.is_positive(r) != pos) return i;
  throw InputError("level is infinite: " + root_name(rs, gamma) + " lies in Phi(x)");
}

std::vector<RootIndex> parabolic_subsystem(const RootSystem& rs, const std::vector<int>& J) {
  std::vector<char> in(rs.rank(), 0);
  for (int j : J) in[j] = 1;
  std::vector<RootIndex> out;
  for (RootIndex r = 0; r < rs.size(); ++r) {
    auto c = rs.coefficients(r);
    bool ok = true;
    for (int i = 0; i < rs.rank() && ok; ++i) ok = c[i] == 0 || in[i];
    if (ok) out.push_back(r);
  }
  return out;
}

std::optional<std::vector<int>> standard_parabolic_J(const RootSystem& rs, const std::vector<RootIndex>& roots) {
  std::vector<RootIndex> sorted = roots;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> J;
  for (int i = 0; i < rs.rank(); ++i)
    if (std::binary_search(sorted.begin(), sorted.end(), rs.simple(i))) J.push_back(i);
  if (parabolic_subsystem(rs, J) != sorted) return std::nullopt;
  return J;
}

namespace {

// A triple whose sum lies in Phi(x) is skipped outside strict mode: once
// condition (1) holds, positive alpha, beta with alpha+beta in Phi(x) forces
// both summands into Phi(x), because supports of positive roots add.
bool skip(const Level& n_sum, ConvexityOptions opt) { return !opt.strict && n_sum.is_infinite(); }

void sort_witnesses(std::vector<Violation>& v) {
  std::sort(v.begin(), v.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.alpha, a.beta) < std::tie(b.alpha, b.beta);
  });
}

} // namespace

std::vector<Violation> condition2_reduced(const TwistedElement& x, const std::vector<Level>& n,
                                          ConvexityOptions opt) {
  const RootSystem& rs = x.roots();
  const int np = rs.positive_count();
  std::vector<Violation> out;
  for (RootIndex a = 0; a < np; ++a) {
    if (n[a] != Level(1)) continue;
    for (RootIndex b = 0; b < np; ++b) {
      auto s = rs.sum(a, b);
      if (!s || !rs.is_positive(*s) || skip(n[*s], opt)) continue;
      if (n[*s] > n[b]) out.push_back({a, b, *s, n[a], n[b], n[*s]});
    }
  }
  sort_witnesses(out);
  return out;
}

std::vector<Violation> condition2_full(const TwistedElement& x, const std::vector<Level>& n, ConvexityOptions opt) {
  const RootSystem& rs = x.roots();
  const int np = rs.positive_count();
  std::vector<Violation> out;
  for (RootIndex a = 0; a < np; ++a)
    for (RootIndex b = a + 1; b < np; ++b) {
      auto s = rs.sum(a, b);
      if (!s || !rs.is_positive(*s) || skip(n[*s], opt)) continue;
      if (n[*s] > std::max(n[a], n[b])) out.push_back({a, b, *s, n[a], n[b], n[*s]});
    }
  sort_witnesses(out);
  return out;
}

namespace {

QuasiConvexity evaluate(const TwistedElement& x, const std::vector<Level>& n, const std::vector<RootIndex>& phi,
                        ConvexityOptions opt) {
  QuasiConvexity q;
  q.condition1_ok = standard_parabolic_J(x.roots(), phi).has_value();
  q.violations = condition2_reduced(x, n, opt);
  q.condition2_ok = q.violations.empty();
  return q;
}

} // namespace

QuasiConvexity quasi_convexity(const TwistedElement& x, ConvexityOptions opt) {
  const auto n = levels(x);
  return evaluate(x, n, phi_of(x), opt);
}

ConvexityReport analyze(const TwistedElement& x, ConvexityOptions opt) {
  const RootSystem& rs = x.roots();
  ConvexityReport rep;
  rep.n_table = levels(x);
  for (RootIndex g = 0; g < rs.size(); ++g)
    if (rep.n_table[g].is_infinite()) rep.phi_x.push_back(g);
  rep.parabolic_J = standard_parabolic_J(rs, rep.phi_x);

  for (const auto& l : rep.n_table)
    if (!l.is_infinite()) rep.max_level = std::max(rep.max_level, l.value());
  rep.positive_levels.assign(rep.max_level + 1, {});
  rep.negative_levels.assign(rep.max_level + 1, {});
  for (RootIndex g = 0; g < rs.size(); ++g) {
    if (rep.n_table[g].is_infinite()) continue;
    auto& bucket = rs.is_positive(g) ? rep.positive_levels : rep.negative_levels;
    bucket[rep.n_table[g].value()].push_back(g);
  }

  rep.forward = evaluate(x, rep.n_table, rep.phi_x, opt);
  const TwistedElement inv = x.inverse();
  rep.inverse = evaluate(inv, levels(inv), rep.phi_x, opt);
  rep.convex = rep.forward.quasi_convex() && rep.inverse.quasi_convex();
  rep.phi_equals_fixed = fixed_roots(x) == rep.phi_x;
  return rep;
}

bool is_convex(const TwistedElement& x) {
  return quasi_convexity(x).quasi_convex() && quasi_convexity(x.inverse()).quasi_convex();
}

std::vector<std::vector<RootIndex>> level_filtration(const TwistedElement& x) {
  if (!quasi_convexity(x).quasi_convex()) throw InputError("level filtration requires a quasi-convex element");
  const auto n = levels(x);
  const int np = x.roots().positive_count();
  int top = 0;
  for (RootIndex g = 0; g < np; ++g)
    if (!n[g].is_infinite()) top = std::max(top, n[g].value());
  std::vector<std::vector<RootIndex>> out;
  for (int i = 1; i <= top; ++i) {
    std::vector<RootIndex> level;
    for (RootIndex g = 0; g < np; ++g)
      if (!n[g].is_infinite() && n[g].value() <= i) level.push_back(g);
    out.push_back(std::move(level));
  }
  return out;
}

} // namespace wc
