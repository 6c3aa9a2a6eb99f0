#include "wc/root_system.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "wc/errors.hpp"

namespace wc {

CartanType CartanType::parse(std::string_view text) {
  if (text.size() < 2 || !std::isalpha(static_cast<unsigned char>(text[0])))
    throw InputError("cartan type must look like A4, B3, G2: got '" + std::string(text) + "'");
  CartanType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  int rank = 0;
  for (char ch : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw InputError("cartan type rank must be a number: got '" + std::string(text) + "'");
    rank = rank * 10 + (ch - '0');
    if (rank > 64) throw InputError("cartan type rank too large: '" + std::string(text) + "'");
  }
  t.rank = rank;
  validate(t);
  return t;
}

std::string CartanType::name() const { return std::string(1, family) + std::to_string(rank); }

void validate(const CartanType& t) {
  bool ok = false;
  switch (t.family) {
  case 'A': ok = t.rank >= 1; break;
  case 'B':
  case 'C': ok = t.rank >= 2; break;
  case 'D': ok = t.rank >= 3; break;
  case 'E': ok = t.rank >= 6 && t.rank <= 8; break;
  case 'F': ok = t.rank == 4; break;
  case 'G': ok = t.rank == 2; break;
  default: throw InputError(std::string("unknown root system family '") + t.family + "'");
  }
  if (!ok) throw InputError("rank " + std::to_string(t.rank) + " is not admissible for family " + t.family);
}

namespace {

struct SimpleData {
  int dim = 0;
  int denominator = 1;
  std::vector<std::vector<int>> simple; // scaled ambient coordinates
};

std::vector<int> unit_diff(int dim, int i, int j, int scale) {
  std::vector<int> v(dim, 0);
  v[i] += scale;
  v[j] -= scale;
  return v;
}

SimpleData simple_roots(const CartanType& t) {
  SimpleData d;
  const int n = t.rank;
  switch (t.family) {
  case 'A':
    d.dim = n + 1;
    for (int i = 0; i < n; ++i) d.simple.push_back(unit_diff(d.dim, i, i + 1, 1));
    break;
  case 'B':
  case 'C':
  case 'D':
    d.dim = n;
    for (int i = 0; i + 1 < n; ++i) d.simple.push_back(unit_diff(d.dim, i, i + 1, 1));
    {
      std::vector<int> last(n, 0);
      if (t.family == 'B') last[n - 1] = 1;
      if (t.family == 'C') last[n - 1] = 2;
      if (t.family == 'D') last[n - 2] = last[n - 1] = 1;
      d.simple.push_back(last);
    }
    break;
  case 'G':
    d.dim = 3;
    d.simple = {{1, -1, 0}, {-2, 1, 1}};
    break;
  case 'F':
    d.dim = 4;
    d.denominator = 2;
    d.simple = {{0, 2, -2, 0}, {0, 0, 2, -2}, {0, 0, 0, 2}, {1, -1, -1, -1}};
    break;
  case 'E': {
    d.dim = 8;
    d.denominator = 2;
    std::vector<int> a1 = {1, -1, -1, -1, -1, -1, -1, 1};
    std::vector<int> a2 = {2, 2, 0, 0, 0, 0, 0, 0};
    d.simple.push_back(a1);
    d.simple.push_back(a2);
    d.simple.push_back(unit_diff(8, 1, 0, 2));
    for (int k = 4; k <= n; ++k) d.simple.push_back(unit_diff(8, k - 2, k - 3, 2));
    break;
  }
  default: break;
  }
  return d;
}

std::int64_t dot(std::span<const int> a, std::span<const int> b) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<std::int64_t>(a[k]) * b[k];
  return s;
}

} // namespace

RootSystem::RootSystem(CartanType type) : type_(type) {
  validate(type_);
  const SimpleData sd = simple_roots(type_);
  ambient_dim_ = sd.dim;
  denominator_ = sd.denominator;
  const int n = type_.rank;

  gram_.assign(n, std::vector<std::int64_t>(n));
  cartan_.assign(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram_[i][j] = dot(sd.simple[i], sd.simple[j]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cartan_[i][j] = static_cast<int>(2 * gram_[i][j] / gram_[j][j]);

  auto reflect = [&](const std::vector<int>& c, int j) {
    int pair = 0;
    for (int i = 0; i < n; ++i) pair += c[i] * cartan_[i][j];
    std::vector<int> out = c;
    out[j] -= pair;
    return out;
  };

  // Orbit of the simple roots under the simple reflections.
  std::set<std::vector<int>> seen;
  std::vector<std::vector<int>> frontier;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    if (seen.insert(e).second) frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& c : frontier)
      for (int j = 0; j < n; ++j) {
        auto r = reflect(c, j);
        if (seen.insert(r).second) next.push_back(std::move(r));
      }
    frontier = std::move(next);
  }

  std::vector<std::vector<int>> positives;
  for (const auto& c : seen)
    if (std::all_of(c.begin(), c.end(), [](int v) { return v >= 0; })) positives.push_back(c);
  std::sort(positives.begin(), positives.end(), [](const auto& a, const auto& b) {
    const int ha = std::accumulate(a.begin(), a.end(), 0);
    const int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a > b;
  });
  positive_count_ = static_cast<int>(positives.size());
  coeffs_ = positives;
  for (const auto& c : positives) {
    std::vector<int> neg(c.size());
    std::transform(c.begin(), c.end(), neg.begin(), [](int v) { return -v; });
    coeffs_.push_back(std::move(neg));
  }

  coords_.reserve(coeffs_.size());
  for (const auto& c : coeffs_) {
    std::vector<int> x(ambient_dim_, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < ambient_dim_; ++k) x[k] += c[i] * sd.simple[i][k];
    coords_.push_back(std::move(x));
  }

  std::map<std::vector<int>, int> index;
  for (int r = 0; r < size(); ++r) index.emplace(coeffs_[r], r);

  const int m = size();
  sum_table_.assign(static_cast<std::size_t>(m) * m, -1);
  std::vector<int> s(n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      for (int k = 0; k < n; ++k) s[k] = coeffs_[i][k] + coeffs_[j][k];
      auto it = index.find(s);
      if (it != index.end()) sum_table_[static_cast<std::size_t>(i) * m + j] = it->second;
    }

  reflections_.assign(n, std::vector<RootIndex>(m));
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < m; ++r) reflections_[j][r] = index.at(reflect(coeffs_[r], j));
}

int RootSystem::height(RootIndex r) const {
  return std::accumulate(coeffs_[r].begin(), coeffs_[r].end(), 0);
}

std::vector<int> RootSystem::support(RootIndex r) const {
  std::vector<int> out;
  for (int i = 0; i < rank(); ++i)
    if (coeffs_[r][i] != 0) out.push_back(i);
  return out;
}

std::optional<RootIndex> RootSystem::find(std::span<const int> c) const {
  // Roots are few; a linear scan keeps the class free of a second index.
  for (int r = 0; r < size(); ++r)
    if (std::equal(c.begin(), c.end(), coeffs_[r].begin(), coeffs_[r].end())) return r;
  return std::nullopt;
}

std::int64_t RootSystem::pairing(RootIndex i, RootIndex j) const { return dot(coords_[i], coords_[j]); }

std::vector<std::int64_t> RootSystem::to_ambient(std::span<const std::int64_t> c) const {
  std::vector<std::int64_t> x(ambient_dim_, 0);
  for (int i = 0; i < rank(); ++i)
    for (int k = 0; k < ambient_dim_; ++k) x[k] += c[i] * coords_[i][k];
  return x;
}

RootSystem build_root_system(const CartanType& type) { return RootSystem(type); }

std::optional<RootIndex> root_sum(const RootSystem& rs, RootIndex i, RootIndex j) {
  if (i < 0 || j < 0 || i >= rs.size() || j >= rs.size()) throw InputError("root index out of range");
  return rs.sum(i, j);
}

bool is_closed(const RootSystem& rs, std::span<const RootIndex> roots) {
  std::vector<char> in(rs.size(), 0);
  for (RootIndex r : roots) {
    if (r < 0 || r >= rs.size()) throw InputError("root index out of range");
    in[r] = 1;
  }
  for (RootIndex r : roots)
    if (in[rs.negate(r)]) throw InputError("set meets its negative: " + root_name(rs, r));
  for (RootIndex a : roots)
    for (RootIndex b : roots)
      if (auto s = rs.sum(a, b); s && !in[*s]) return false;
  return true;
}

namespace {

DiagramAutomorphism make_automorphism(const RootSystem& rs, std::vector<int> perm) {
  DiagramAutomorphism d;
  const int n = rs.rank();
  d.root_perm.resize(rs.size());
  std::vector<int> image(n);
  for (int r = 0; r < rs.size(); ++r) {
    auto c = rs.coefficients(r);
    for (int i = 0; i < n; ++i) image[perm[i]] = c[i];
    d.root_perm[r] = *rs.find(image);
  }
  std::vector<int> p = perm;
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  d.order = 1;
  while (p != id) {
    std::vector<int> q(n);
    for (int i = 0; i < n; ++i) q[i] = perm[p[i]];
    p = std::move(q);
    ++d.order;
  }
  d.simple_perm = std::move(perm);
  return d;
}

} // namespace

std::vector<DiagramAutomorphism> diagram_automorphisms(const RootSystem& rs) {
  const int n = rs.rank();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<DiagramAutomorphism> out;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) ok = rs.cartan(i, j) == rs.cartan(perm[i], perm[j]);
    if (ok) out.push_back(make_automorphism(rs, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

DiagramAutomorphism identity_automorphism(const RootSystem& rs) {
  std::vector<int> perm(rs.rank());
  std::iota(perm.begin(), perm.end(), 0);
  return make_automorphism(rs, std::move(perm));
}

DiagramAutomorphism parse_automorphism(const RootSystem& rs, std::string_view text) {
  std::vector<int> perm;
  std::string item;
  std::stringstream ss{std::string(text)};
  while (std::getline(ss, item, ',')) {
    try {
      perm.push_back(std::stoi(item) - 1);
    } catch (const std::exception&) {
      throw InputError("bad automorphism entry '" + item + "'");
    }
  }
  if (static_cast<int>(perm.size()) != rs.rank())
    throw InputError("automorphism must list " + std::to_string(rs.rank()) + " labels");
  for (const auto& d : diagram_automorphisms(rs))
    if (d.simple_perm == perm) return d;
  throw InputError("'" + std::string(text) + "' is not a diagram automorphism of " + rs.cartan_type().name());
}

std::string root_name(const RootSystem& rs, RootIndex r) {
  std::string out;
  auto c = rs.coefficients(r);
  for (int i = 0; i < rs.rank(); ++i) {
    if (c[i] == 0) continue;
    if (c[i] < 0)
      out += '-';
    else if (!out.empty())
      out += '+';
    if (std::abs(c[i]) != 1) out += std::to_string(std::abs(c[i]));
    out += "a" + std::to_string(i + 1);
  }
  return out;
}

} // namespace wc
