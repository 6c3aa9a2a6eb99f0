#include "wc/group_realization.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "wc/convexity.hpp"

namespace wc {

std::string to_string(MatrixGroup g) { return g == MatrixGroup::GL ? "GL" : "SL"; }

namespace {

void require_type_a(const RootSystem& rs) {
  if (rs.cartan_type().family != 'A') throw InputError("matrix realization is implemented for type A only");
}

int height(Position p) { return p.col - p.row; }

bool by_height(const Position& a, const Position& b) {
  if (height(a) != height(b)) return height(a) < height(b);
  return a.row < b.row;
}

int permutation_sign(const IndexPerm& pi) {
  std::vector<char> seen(pi.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(pi[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

template <class F> using K_of = typename F::value_type;

template <class F> MatrixOver<F> inverse_of(const F& field, const MatrixOver<F>& m) {
  MatrixOver<F> out;
  if (!invert(field, m, out)) throw NotInCell("singular matrix");
  return out;
}

template <class F> MatrixOver<F> block_diagonal_part(const F& field, const CrossSectionData& d, const MatrixOver<F>& m) {
  MatrixOver<F> out(m.rows(), m.cols(), field.zero());
  for (const auto& [b, e] : d.blocks())
    for (int i = b; i < e; ++i)
      for (int j = b; j < e; ++j) out(i, j) = m(i, j);
  return out;
}

// h = Y Q with Y block upper unipotent and Q block lower triangular for the
// given consecutive ranges.
template <class F>
std::optional<std::pair<MatrixOver<F>, MatrixOver<F>>> block_ul(const F& field, const MatrixOver<F>& h,
                                                                const std::vector<std::pair<int, int>>& blocks) {
  const std::size_t n = h.rows();
  MatrixOver<F> y = identity_matrix(field, n);
  MatrixOver<F> q = h;
  for (int k = static_cast<int>(blocks.size()) - 2; k >= 0; --k) {
    const std::size_t s = static_cast<std::size_t>(blocks[k + 1].first);
    const std::size_t m = n - s;
    MatrixOver<F> trail(m, m, field.zero()), trail_inv;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) trail(i, j) = q(s + i, s + j);
    if (!invert(field, trail, trail_inv)) return std::nullopt;
    const auto [b, e] = blocks[k];
    for (int r = b; r < e; ++r) {
      std::vector<K_of<F>> xrow(m, field.zero());
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l) xrow[j] += h(r, s + l) * trail_inv(l, j);
      for (std::size_t j = 0; j < m; ++j) y(r, s + j) = xrow[j];
      for (std::size_t c = 0; c < n; ++c) {
        K_of<F> acc = h(r, c);
        for (std::size_t j = 0; j < m; ++j) acc -= xrow[j] * q(s + j, c);
        q(r, c) = acc;
      }
    }
  }
  return std::make_pair(std::move(y), std::move(q));
}

// Unipotent, upper or lower, with off-diagonal support inside `allowed`.
template <class F>
bool supported_unipotent(const F& field, const MatrixOver<F>& m, const std::vector<char>& allowed) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const K_of<F>& v = m(i, j);
      if (i == j) {
        if (!(v == field.one())) return false;
      } else if (!field.is_zero(v) && !allowed[i * n + j]) {
        return false;
      }
    }
  return true;
}

std::vector<char> mask_of(int n, const std::vector<Position>& ps) {
  std::vector<char> m(static_cast<std::size_t>(n * n), 0);
  for (const auto& p : ps) m[p.row * n + p.col] = 1;
  return m;
}

template <class F> K_of<F> power_of(const F& field, const K_of<F>& a, int e) {
  K_of<F> acc = field.one();
  const K_of<F> base = e >= 0 ? a : field.one() / a;
  for (int i = 0; i < std::abs(e); ++i) acc = acc * base;
  return acc;
}

} // namespace

IndexPerm index_permutation(const TwistedElement& x) {
  const RootSystem& rs = x.roots();
  require_type_a(rs);
  if (x.twist_power() != 0) throw InputError("matrix realization requires an untwisted element");
  const int n = rs.rank() + 1;
  IndexPerm pi(n);
  for (int i = 0; i < n; ++i) {
    const int k = i == 0 ? 1 : 0;
    pi[i] = root_position(rs, x(position_root(rs, {i, k}))).row;
  }
  return pi;
}

TwistedElement element_from_permutation(const GroupPtr& group, const IndexPerm& pi) {
  const RootSystem& rs = group->roots();
  require_type_a(rs);
  const int n = rs.rank() + 1;
  if (static_cast<int>(pi.size()) != n) throw InputError("permutation has the wrong size");
  std::vector<char> seen(n, 0);
  for (int v : pi) {
    if (v < 0 || v >= n || seen[v]) throw InputError("not a permutation");
    seen[v] = 1;
  }
  Perm action(rs.size());
  for (RootIndex r = 0; r < rs.size(); ++r) {
    const Position p = root_position(rs, r);
    action[r] = position_root(rs, {pi[p.row], pi[p.col]});
  }
  return TwistedElement(group, std::move(action), 0);
}

IndexPerm parse_cycles(std::string_view text, int n) {
  IndexPerm pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<char> used(n, 0);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i == text.size()) throw InputError("empty cycle notation");
  while (i < text.size()) {
    if (text[i] != '(') throw InputError("cycle notation must look like (1,6,4,5,2,3)");
    ++i;
    std::vector<int> cyc;
    for (;;) {
      skip();
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw InputError("expected an index in cycle notation");
      const int v = std::stoi(std::string(text.substr(i, j - i))) - 1;
      if (v < 0 || v >= n || used[v]) throw InputError("cycle entry out of range or repeated");
      used[v] = 1;
      cyc.push_back(v);
      i = j;
      skip();
      if (i < text.size() && (text[i] == ',' || text[i] == ' ')) {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      throw InputError("unterminated cycle");
    }
    for (std::size_t k = 0; k < cyc.size(); ++k) pi[cyc[k]] = cyc[(k + 1) % cyc.size()];
    skip();
  }
  return pi;
}

Position root_position(const RootSystem& rs, RootIndex r) {
  require_type_a(rs);
  const auto c = rs.coefficients(r);
  int first = -1, last = -1, sign = 0;
  for (int i = 0; i < rs.rank(); ++i)
    if (c[i] != 0) {
      if (first < 0) first = i;
      last = i;
      sign = c[i];
    }
  return sign > 0 ? Position{first, last + 1} : Position{last + 1, first};
}

RootIndex position_root(const RootSystem& rs, Position p) {
  require_type_a(rs);
  const int n = rs.rank() + 1;
  if (p.row == p.col || p.row < 0 || p.col < 0 || p.row >= n || p.col >= n) throw InputError("not a root position");
  std::vector<int> c(rs.rank(), 0);
  const int lo = std::min(p.row, p.col), hi = std::max(p.row, p.col);
  for (int i = lo; i < hi; ++i) c[i] = p.row < p.col ? 1 : -1;
  return *rs.find(c);
}

CrossSectionData::CrossSectionData(const TwistedElement& x, MatrixGroup group) : x_(x), group_(group) {
  const RootSystem& rs = x.roots();
  perm_ = index_permutation(x);
  n_ = rs.rank() + 1;
  const auto report = analyze(x);
  if (!report.parabolic_J) throw InputError("Phi(x) is not a standard parabolic subsystem");
  J_ = *report.parabolic_J;
  quasi_convex_ = report.quasi_convex();

  std::vector<char> joined(n_, 0);
  for (int j : J_) joined[j] = 1;
  block_of_.assign(n_, 0);
  for (int i = 0; i < n_;) {
    int e = i + 1;
    while (e < n_ && joined[e - 1]) ++e;
    for (int k = i; k < e; ++k) block_of_[k] = static_cast<int>(blocks_.size());
    blocks_.emplace_back(i, e);
    i = e;
  }
  block_orbit_.assign(blocks_.size(), -1);
  int orbit = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (block_orbit_[b] >= 0) continue;
    for (int c = static_cast<int>(b); block_orbit_[c] < 0; c = block_of_[perm_[blocks_[c].first]]) block_orbit_[c] = orbit;
    ++orbit;
  }
  std::vector<char> seen(n_, 0);
  for (int i = 0; i < n_; ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[j]; j = perm_[j]) {
      seen[j] = 1;
      cyc.push_back(j);
    }
    cycles_.push_back(std::move(cyc));
  }

  const auto lv = levels(x);
  level_.assign(static_cast<std::size_t>(n_ * n_), -1);
  for (RootIndex r = 0; r < rs.positive_count(); ++r) {
    const Position p = root_position(rs, r);
    const int l = lv[r].is_infinite() ? 0 : lv[r].value();
    level_[p.row * n_ + p.col] = l;
    max_level_ = std::max(max_level_, l);
    if (l == 0) {
      phi_plus_.push_back(p);
      phi_minus_.push_back({p.col, p.row});
    } else {
      radical_.push_back(p);
    }
  }
  std::sort(radical_.begin(), radical_.end(), by_height);
  std::sort(phi_plus_.begin(), phi_plus_.end(), by_height);
  std::sort(phi_minus_.begin(), phi_minus_.end());
  level_pos_.assign(max_level_ + 1, {});
  for (const auto& p : radical_) level_pos_[level(p)].push_back(p);
  if (max_level_ == 0) level_pos_.resize(2);
}

std::size_t CrossSectionData::cell_dimension() const {
  int torus = *std::max_element(block_orbit_.begin(), block_orbit_.end()) + 1;
  for (const auto& [b, e] : blocks_) torus += e - b - 1;
  if (group_ == MatrixGroup::SL) --torus;
  return radical_.size() + phi_plus_.size() + phi_minus_.size() + static_cast<std::size_t>(torus) +
         level_positions(1).size();
}

template <class F> MatrixOver<F> root_element(const F& field, int n, Position p, const K_of<F>& t) {
  MatrixOver<F> m = identity_matrix(field, static_cast<std::size_t>(n));
  m(p.row, p.col) = t;
  return m;
}

template <class F> MatrixOver<F> lift(const F& field, const IndexPerm& pi, MatrixGroup group) {
  const std::size_t n = pi.size();
  MatrixOver<F> m(n, n, field.zero());
  for (std::size_t j = 0; j < n; ++j) m(pi[j], j) = field.one();
  if (group == MatrixGroup::SL && permutation_sign(pi) < 0) m(pi[0], 0) = -field.one();
  return m;
}

template <class F> MatrixOver<F> lift(const F& field, const CrossSectionData& data) {
  return lift(field, data.perm(), data.group());
}

template <class F>
MatrixOver<F> ordered_product(const F& field, int n, const std::vector<Position>& order, const std::vector<K_of<F>>& coords) {
  MatrixOver<F> m = identity_matrix(field, static_cast<std::size_t>(n));
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (field.is_zero(coords[k])) continue;
    // Right multiplication by I + t E_{ij}: column j += t * column i.
    for (int r = 0; r < n; ++r) m(r, order[k].col) += coords[k] * m(r, order[k].row);
  }
  return m;
}

template <class F>
std::vector<K_of<F>> unipotent_coordinates(const F& field, const MatrixOver<F>& v, const std::vector<Position>& order) {
  const int n = static_cast<int>(v.rows());
  for (const auto& p : order)
    if (p.row >= p.col || p.col >= n) throw InputError("coordinate order must list positive root positions");
  std::vector<Position> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw InputError("repeated root in order");
  std::vector<K_of<F>> t(order.size(), field.zero());
  for (int h = 1; h < n; ++h) {
    const MatrixOver<F> partial = ordered_product(field, n, order, t);
    for (std::size_t k = 0; k < order.size(); ++k)
      if (height(order[k]) == h) t[k] = v(order[k].row, order[k].col) - partial(order[k].row, order[k].col);
  }
  if (!(ordered_product(field, n, order, t) == v)) throw InputError("matrix does not lie in the product of the given root subgroups");
  return t;
}

template <class F> bool in_torus(const F& field, const CrossSectionData& data, const std::vector<K_of<F>>& d) {
  if (static_cast<int>(d.size()) != data.n()) return false;
  for (const auto& v : d)
    if (field.is_zero(v)) return false;
  const auto& orb = data.block_orbits();
  std::vector<std::optional<K_of<F>>> value(data.blocks().size());
  K_of<F> det = field.one();
  for (std::size_t b = 0; b < data.blocks().size(); ++b) {
    K_of<F> prod = field.one();
    for (int i = data.blocks()[b].first; i < data.blocks()[b].second; ++i) prod = prod * d[i];
    det = det * prod;
    auto& slot = value[orb[b]];
    if (!slot) slot = prod;
    else if (!(*slot == prod)) return false;
  }
  return data.group() == MatrixGroup::GL || det == field.one();
}

template <class F> std::vector<K_of<F>> random_torus(const F& field, const CrossSectionData& data, std::mt19937_64& rng) {
  const auto& orb = data.block_orbits();
  const int norb = *std::max_element(orb.begin(), orb.end()) + 1;
  std::vector<int> k(norb, 0);
  for (int o : orb) ++k[o];
  std::vector<K_of<F>> b(norb, field.one());
  for (auto& v : b) v = field.random_nonzero(rng);
  if (data.group() == MatrixGroup::SL) {
    // Product of b_O^{k_O} over orbits must be 1.
    const auto solo = std::find(k.begin(), k.end(), 1);
    if (solo != k.end()) {
      const std::size_t o1 = static_cast<std::size_t>(solo - k.begin());
      K_of<F> rest = field.one();
      for (int o = 0; o < norb; ++o)
        if (static_cast<std::size_t>(o) != o1) rest = rest * power_of(field, b[o], k[o]);
      b[o1] = field.one() / rest;
    } else {
      K_of<F> last = field.one();
      for (int o = 1; o < norb; ++o) {
        const K_of<F> a = b[o];
        b[o] = power_of(field, a, k[0]);
        last = last * power_of(field, a, -k[o]);
      }
      b[0] = last;
    }
  }
  std::vector<K_of<F>> d(data.n(), field.one());
  for (std::size_t blk = 0; blk < data.blocks().size(); ++blk) {
    const auto [s, e] = data.blocks()[blk];
    K_of<F> prod = field.one();
    for (int i = s; i + 1 < e; ++i) {
      d[i] = field.random_nonzero(rng);
      prod = prod * d[i];
    }
    d[e - 1] = b[orb[blk]] / prod;
  }
  return d;
}

template <class F> MatrixOver<F> lx_matrix(const F& field, const LxElement<K_of<F>>& ell) {
  MatrixOver<F> dl = ell.lower;
  for (std::size_t i = 0; i < dl.rows(); ++i)
    for (std::size_t j = 0; j < dl.cols(); ++j) dl(i, j) = ell.diag[i] * dl(i, j);
  return multiply(field, ell.upper, dl);
}

template <class F> LxElement<K_of<F>> lx_decompose(const F& field, const CrossSectionData& data, const MatrixOver<F>& m) {
  const int n = data.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (data.block_of(i) != data.block_of(j) && !field.is_zero(m(i, j))) throw NotInCell("not block diagonal for Phi(x)");
  std::vector<std::pair<int, int>> singles;
  for (int i = 0; i < n; ++i) singles.emplace_back(i, i + 1);
  auto ul = block_ul(field, m, singles);
  if (!ul) throw NotInCell("no u D v factorization in L_x");
  LxElement<K_of<F>> out{std::move(ul->first), std::vector<K_of<F>>(n, field.zero()), std::move(ul->second)};
  for (int i = 0; i < n; ++i) {
    out.diag[i] = out.lower(i, i);
    if (field.is_zero(out.diag[i])) throw NotInCell("no u D v factorization in L_x");
    const K_of<F> inv = field.one() / out.diag[i];
    for (int j = 0; j < n; ++j) out.lower(i, j) = out.lower(i, j) * inv;
  }
  if (!in_torus(field, data, out.diag)) throw NotInCell("torus part lies outside T(x)");
  return out;
}

template <class F> bool well_formed(const F& field, const CrossSectionData& data, const CellPoint<K_of<F>>& p) {
  const int n = data.n();
  return supported_unipotent(field, p.y, mask_of(n, data.radical())) &&
         supported_unipotent(field, p.u, mask_of(n, data.level_positions(1))) &&
         supported_unipotent(field, p.ell.upper, mask_of(n, data.phi_plus())) &&
         supported_unipotent(field, p.ell.lower, mask_of(n, data.phi_minus())) && in_torus(field, data, p.ell.diag);
}

template <class F> MatrixOver<F> xi(const F& field, const CrossSectionData& data, const CellPoint<K_of<F>>& p) {
  const MatrixOver<F> z = multiply(field, multiply(field, lift(field, data), lx_matrix(field, p.ell)), p.u);
  return multiply(field, multiply(field, p.y, z), inverse_of(field, p.y));
}

template <class F> CellPoint<K_of<F>> sigma(const F& field, const CrossSectionData& data, const MatrixOver<F>& g) {
  if (!data.quasi_convex()) throw InputError("sigma requires a quasi-convex element");
  const int n = data.n();
  if (static_cast<int>(g.rows()) != n || static_cast<int>(g.cols()) != n) throw InputError("matrix has the wrong size");
  const MatrixOver<F> X = lift(field, data);
  const MatrixOver<F> Xi = inverse_of(field, X);
  const auto level1 = mask_of(n, data.level_positions(1));

  // g = y x u_1 ell, read off from g x^{-1} = y (x u_1 x^{-1}) (x ell x^{-1}).
  auto ul = block_ul(field, multiply(field, g, Xi), data.blocks());
  if (!ul) throw NotInCell("no block factorization against the parabolic of Phi(x)");
  const MatrixOver<F>& y0 = ul->first;
  const MatrixOver<F> lp = block_diagonal_part(field, data, ul->second);
  MatrixOver<F> lp_inv;
  if (!invert(field, lp, lp_inv)) throw NotInCell("Levi part is singular");
  const MatrixOver<F> u1 = multiply(field, multiply(field, Xi, multiply(field, ul->second, lp_inv)), X);
  if (!supported_unipotent(field, u1, level1)) throw NotInCell("middle factor leaves U_{Phi_{x,1}^+}");
  const MatrixOver<F> ell0 = multiply(field, multiply(field, Xi, lp), X);
  lx_decompose(field, data, ell0);

  MatrixOver<F> y = y0;
  MatrixOver<F> z = multiply(field, multiply(field, multiply(field, X, u1), ell0), y0);

  for (int i = data.max_level(); i >= 2; --i) {
    const MatrixOver<F> w = multiply(field, Xi, z);
    const MatrixOver<F> m = block_diagonal_part(field, data, w);
    const MatrixOver<F> v = multiply(field, w, inverse_of(field, m));
    std::vector<Position> order = data.level_positions(i);
    for (int j = 1; j < i; ++j)
      order.insert(order.end(), data.level_positions(j).begin(), data.level_positions(j).end());
    std::vector<K_of<F>> t;
    try {
      t = unipotent_coordinates(field, v, order);
    } catch (const InputError&) {
      throw InconsistencyError("level " + std::to_string(i) + " factor leaves U_{<=" + std::to_string(i) + "}");
    }
    t.resize(data.level_positions(i).size());
    const MatrixOver<F> u = ordered_product(field, n, data.level_positions(i), t);
    const MatrixOver<F> u2 = multiply(field, multiply(field, X, u), Xi);
    if (!supported_unipotent(field, u2, mask_of(n, data.level_positions(i - 1))))
      throw InconsistencyError("x does not move level " + std::to_string(i) + " into level " + std::to_string(i - 1));
    y = multiply(field, y, u2);
    z = multiply(field, multiply(field, inverse_of(field, u2), z), u2);
  }

  const MatrixOver<F> w = multiply(field, Xi, z);
  const MatrixOver<F> m = block_diagonal_part(field, data, w);
  CellPoint<K_of<F>> out;
  out.y = std::move(y);
  out.u = multiply(field, inverse_of(field, m), w);
  if (!supported_unipotent(field, out.u, level1)) throw InconsistencyError("final factor leaves U_{Phi_{x,1}^+}");
  try {
    out.ell = lx_decompose(field, data, m);
  } catch (const NotInCell& e) {
    throw InconsistencyError(std::string("final Levi factor: ") + e.what());
  }
  return out;
}

template <class F> CellPoint<K_of<F>> random_cell_point(const F& field, const CrossSectionData& data, std::mt19937_64& rng) {
  const int n = data.n();
  auto fill = [&](const std::vector<Position>& ps) {
    MatrixOver<F> m = identity_matrix(field, static_cast<std::size_t>(n));
    for (const auto& p : ps) m(p.row, p.col) = field.random(rng);
    return m;
  };
  CellPoint<K_of<F>> p;
  p.y = fill(data.radical());
  p.ell.upper = fill(data.phi_plus());
  p.ell.diag = random_torus(field, data, rng);
  p.ell.lower = fill(data.phi_minus());
  p.u = fill(data.level_positions(1));
  return p;
}

std::vector<std::vector<Fp>> enumerate_torus(const PrimeField& field, const CrossSectionData& data) {
  const int n = data.n();
  const std::uint64_t units = field.p - 1;
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    total *= units;
    if (total > (1u << 22)) throw BudgetExceeded("torus enumeration too large");
  }
  std::vector<std::vector<Fp>> out;
  std::vector<Fp> d(n);
  for (std::uint64_t k = 0; k < total; ++k) {
    std::uint64_t r = k;
    for (int i = 0; i < n; ++i) {
      d[i] = field.from_int(static_cast<std::int64_t>(r % units + 1));
      r /= units;
    }
    if (in_torus(field, data, d)) out.push_back(d);
  }
  return out;
}

TransversalityResult transversality_check(const CrossSectionData& data, const Matrix<mpq_class>& g, bool traceless) {
  const RationalField Q;
  const int n = data.n();
  const std::size_t dim = static_cast<std::size_t>(n * n);
  Matrix<mpq_class> ginv;
  if (!invert(Q, g, ginv)) throw InputError("matrix is singular");
  std::vector<std::vector<mpq_class>> vecs;
  auto unit = [&](int i, int j) {
    std::vector<mpq_class> v(dim, 0);
    v[i * n + j] = 1;
    return v;
  };
  // Basis of the ambient Lie algebra.
  std::vector<Matrix<mpq_class>> basis;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j && traceless) continue;
      Matrix<mpq_class> e(n, n, 0);
      e(i, j) = 1;
      basis.push_back(std::move(e));
    }
  if (traceless)
    for (int i = 0; i + 1 < n; ++i) {
      Matrix<mpq_class> e(n, n, 0);
      e(i, i) = 1;
      e(i + 1, i + 1) = -1;
      basis.push_back(std::move(e));
    }
  for (const auto& e : basis) {
    const Matrix<mpq_class> ad = multiply(Q, multiply(Q, ginv, e), g);
    std::vector<mpq_class> v(dim);
    for (std::size_t k = 0; k < dim; ++k) v[k] = ad.data()[k] - e.data()[k];
    vecs.push_back(std::move(v));
  }
  for (const auto& p : data.phi_plus()) vecs.push_back(unit(p.row, p.col));
  for (const auto& p : data.phi_minus()) vecs.push_back(unit(p.row, p.col));
  for (const auto& p : data.level_positions(1)) vecs.push_back(unit(p.row, p.col));
  // Lie algebra of T(x): coroots inside blocks, plus block sums constant on orbits.
  for (const auto& [b, e] : data.blocks())
    for (int i = b; i + 1 < e; ++i) {
      auto v = unit(i, i);
      v[(i + 1) * n + i + 1] = -1;
      vecs.push_back(std::move(v));
    }
  const auto& orb = data.block_orbits();
  const int norb = *std::max_element(orb.begin(), orb.end()) + 1;
  std::vector<std::vector<mpq_class>> orbit_vec(norb, std::vector<mpq_class>(dim, 0));
  std::vector<int> k(norb, 0);
  for (std::size_t b = 0; b < orb.size(); ++b) {
    const int i = data.blocks()[b].first;
    orbit_vec[orb[b]][i * n + i] = 1;
    ++k[orb[b]];
  }
  if (!traceless) {
    for (auto& v : orbit_vec) vecs.push_back(std::move(v));
  } else {
    for (int o = 1; o < norb; ++o) {
      std::vector<mpq_class> v(dim);
      for (std::size_t c = 0; c < dim; ++c) v[c] = k[0] * orbit_vec[o][c] - k[o] * orbit_vec[0][c];
      vecs.push_back(std::move(v));
    }
  }
  Matrix<mpq_class> m(vecs.size(), dim, 0);
  for (std::size_t r = 0; r < vecs.size(); ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = vecs[r][c];
  return {rank(Q, m), traceless ? dim - 1 : dim};
}

#define WC_INSTANTIATE(F)                                                                                              \
  template MatrixOver<F> root_element<F>(const F&, int, Position, const K_of<F>&);                                     \
  template MatrixOver<F> lift<F>(const F&, const CrossSectionData&);                                                   \
  template MatrixOver<F> lift<F>(const F&, const IndexPerm&, MatrixGroup);                                             \
  template std::vector<K_of<F>> unipotent_coordinates<F>(const F&, const MatrixOver<F>&, const std::vector<Position>&); \
  template MatrixOver<F> ordered_product<F>(const F&, int, const std::vector<Position>&, const std::vector<K_of<F>>&);  \
  template bool in_torus<F>(const F&, const CrossSectionData&, const std::vector<K_of<F>>&);                           \
  template MatrixOver<F> lx_matrix<F>(const F&, const LxElement<K_of<F>>&);                                            \
  template LxElement<K_of<F>> lx_decompose<F>(const F&, const CrossSectionData&, const MatrixOver<F>&);                \
  template bool well_formed<F>(const F&, const CrossSectionData&, const CellPoint<K_of<F>>&);                          \
  template MatrixOver<F> xi<F>(const F&, const CrossSectionData&, const CellPoint<K_of<F>>&);                          \
  template CellPoint<K_of<F>> sigma<F>(const F&, const CrossSectionData&, const MatrixOver<F>&);                       \
  template std::vector<K_of<F>> random_torus<F>(const F&, const CrossSectionData&, std::mt19937_64&);                  \
  template CellPoint<K_of<F>> random_cell_point<F>(const F&, const CrossSectionData&, std::mt19937_64&);

WC_INSTANTIATE(PrimeField)
WC_INSTANTIATE(RationalField)

#undef WC_INSTANTIATE

} // namespace wc
