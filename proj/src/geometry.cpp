#include "wc/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/SVD>

#include "wc/convexity.hpp"
#include "wc/errors.hpp"
#include "wc/field.hpp"
#include "wc/linalg.hpp"
#include "wc/lp.hpp"

namespace wc {

// ---------------------------------------------------------------- Angle

Angle Angle::from_fraction(int num, int den) {
  if (den <= 0 || num < 0 || 2 * num > den) throw InputError("angle must lie in [0, pi]");
  const int g = std::gcd(num, den);
  Angle a;
  a.num_ = num / g;
  a.den_ = den / g;
  if (a.num_ == 0) a.den_ = 1;
  return a;
}

Angle Angle::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '*') s += c;
  if (s == "0") return Angle();
  const auto pi = s.find("pi");
  if (pi == std::string::npos) throw InputError("angle must be written like pi, pi/2 or 2pi/5: '" + std::string(text) + "'");
  auto to_int = [&](const std::string& t) {
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw InputError("bad angle '" + std::string(text) + "'");
    return std::stoi(t);
  };
  const int mult = pi == 0 ? 1 : to_int(s.substr(0, pi));
  int div = 1;
  const std::string rest = s.substr(pi + 2);
  if (!rest.empty()) {
    if (rest[0] != '/') throw InputError("bad angle '" + std::string(text) + "'");
    div = to_int(rest.substr(1));
  }
  if (div == 0) throw InputError("bad angle '" + std::string(text) + "'");
  // mult*pi/div = 2*pi * mult/(2 div)
  return from_fraction(mult, 2 * div);
}

double Angle::radians() const { return 2.0 * M_PI * num_ / den_; }

std::string Angle::to_string() const {
  if (num_ == 0) return "0";
  // 2 num / den as a multiple of pi
  int p = 2 * num_, q = den_;
  const int g = std::gcd(p, q);
  p /= g;
  q /= g;
  std::string out = (p == 1 ? "" : std::to_string(p)) + "pi";
  if (q != 1) out += "/" + std::to_string(q);
  return out;
}

// ---------------------------------------------------------------- stages

namespace {

IntMatrix identity_int(std::size_t n) {
  IntMatrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Eigen::MatrixXd to_double(const IntMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = static_cast<double>(m[i][j]);
  return d;
}

std::vector<RationalVector> rational_kernel(const IntMatrix& m) {
  const std::size_t n = m.size();
  RationalField q;
  Matrix<mpq_class> a(n, n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = mpq_class(static_cast<long>(m[i][j]));
  return kernel(q, a);
}

bool exact_angle(const Angle& a) {
  const int d = a.root_order();
  return d == 1 || d == 2 || d == 3 || d == 4 || d == 6;
}

} // namespace

Stage restrict_stage(const TwistedElement& x, const std::vector<int>& labels) {
  const RootSystem& rs = x.roots();
  Stage s;
  s.labels = labels;
  std::sort(s.labels.begin(), s.labels.end());
  const std::size_t k = s.labels.size();
  std::vector<int> pos(rs.rank(), -1);
  for (std::size_t a = 0; a < k; ++a) pos[s.labels[a]] = static_cast<int>(a);

  s.matrix.assign(k, std::vector<std::int64_t>(k, 0));
  s.gram.assign(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t b = 0; b < k; ++b) {
    const auto img = rs.coefficients(x(rs.simple(s.labels[b])));
    for (int i = 0; i < rs.rank(); ++i) {
      if (img[i] == 0) continue;
      if (pos[i] < 0) throw InconsistencyError("element does not preserve the parabolic subsystem");
      s.matrix[pos[i]][b] = img[i];
    }
    for (std::size_t a = 0; a < k; ++a) s.gram[a][b] = rs.gram()[s.labels[a]][s.labels[b]];
  }
  s.roots = parabolic_subsystem(rs, s.labels);
  for (RootIndex r : s.roots) {
    std::vector<int> c(k);
    for (std::size_t a = 0; a < k; ++a) c[a] = rs.coefficients(r)[s.labels[a]];
    s.coords.push_back(std::move(c));
  }
  s.order = 1;
  if (k > 0) {
    const IntMatrix id = identity_int(k);
    IntMatrix p = s.matrix;
    while (p != id) {
      p = mat_mul(p, s.matrix);
      if (++s.order > x.order()) throw InconsistencyError("stage order exceeds the order of the element");
    }
  }
  return s;
}

Stage full_stage(const TwistedElement& x) {
  std::vector<int> all(x.roots().rank());
  std::iota(all.begin(), all.end(), 0);
  return restrict_stage(x, all);
}

double pairing(const Stage& s, const Eigen::VectorXd& v, std::size_t root_pos) {
  const auto& c = s.coords[root_pos];
  double acc = 0;
  for (std::size_t a = 0; a < s.labels.size(); ++a)
    for (std::size_t b = 0; b < s.labels.size(); ++b)
      if (c[b]) acc += v[static_cast<Eigen::Index>(a)] * static_cast<double>(s.gram[a][b] * c[b]);
  return acc;
}

mpq_class pairing(const Stage& s, const RationalVector& v, std::size_t root_pos) {
  const auto& c = s.coords[root_pos];
  mpq_class acc = 0;
  for (std::size_t a = 0; a < s.labels.size(); ++a) {
    if (sgn(v[a]) == 0) continue;
    std::int64_t w = 0;
    for (std::size_t b = 0; b < s.labels.size(); ++b) w += s.gram[a][b] * c[b];
    acc += v[a] * mpq_class(static_cast<long>(w));
  }
  return acc;
}

// ---------------------------------------------------------------- eigen-angles

std::vector<AngleComponent> eigen_angles(const Stage& s) {
  std::vector<AngleComponent> out;
  const std::size_t k = s.labels.size();
  if (k == 0) return out;
  const auto mult = cyclotomic_multiplicities(s.matrix, s.order);

  IntMatrix inv = identity_int(k);
  for (int i = 1; i < s.order; ++i) inv = mat_mul(inv, s.matrix);
  const Eigen::MatrixXd sym = to_double(s.matrix) + to_double(inv);

  for (auto [d, m] : mult) {
    for (int j = 0; 2 * j <= d; ++j) {
      if (std::gcd(j, d) != 1) continue;
      AngleComponent c;
      c.angle = Angle::from_fraction(j, d);
      c.dim = (d <= 2) ? m : 2 * m;

      const Eigen::MatrixXd n =
          sym - 2.0 * std::cos(c.angle.radians()) * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(n, Eigen::ComputeFullV);
      const auto& sv = svd.singularValues();
      const double scale = std::max(1.0, sv.size() ? sv[0] : 1.0);
      int nullity = 0;
      for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv[i] < kGeometryTolerance * scale) ++nullity;
      if (nullity != c.dim)
        throw InconsistencyError("eigenspace at angle " + c.angle.to_string() + " has float dimension " +
                                 std::to_string(nullity) + " but exact dimension " + std::to_string(c.dim));

      if (exact_angle(c.angle)) {
        auto basis = rational_kernel(evaluate(cyclotomic_polynomial(d), s.matrix));
        if (static_cast<int>(basis.size()) != c.dim) throw InconsistencyError("rational eigenspace dimension mismatch");
        c.space.basis.resize(static_cast<Eigen::Index>(k), c.dim);
        for (int col = 0; col < c.dim; ++col) {
          for (std::size_t r = 0; r < k; ++r) c.space.basis(static_cast<Eigen::Index>(r), col) = basis[col][r].get_d();
          c.space.basis.col(col).normalize();
        }
        c.space.exact = std::move(basis);
      } else {
        c.space.basis = svd.matrixV().rightCols(c.dim);
      }
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const AngleComponent& a, const AngleComponent& b) { return a.angle < b.angle; });
  int total = 0;
  for (const auto& c : out) total += c.dim;
  if (total != static_cast<int>(k)) throw InconsistencyError("eigen-angle dimensions do not sum to the rank");
  return out;
}

std::vector<AngleComponent> eigen_angles(const TwistedElement& x) { return eigen_angles(full_stage(x)); }

std::vector<Angle> nonzero_angles(const TwistedElement& x) {
  std::vector<Angle> out;
  for (const auto& c : eigen_angles(x))
    if (!c.angle.is_zero()) out.push_back(c.angle);
  return out;
}

std::vector<RootIndex> roots_containing(const Stage& s, const Subspace& k) {
  std::vector<RootIndex> out;
  for (std::size_t p = 0; p < s.roots.size(); ++p) {
    bool perp = true;
    if (k.exact) {
      for (const auto& v : *k.exact) perp = perp && sgn(pairing(s, v, p)) == 0;
    } else {
      for (Eigen::Index c = 0; c < k.basis.cols(); ++c)
        perp = perp && std::abs(pairing(s, Eigen::VectorXd(k.basis.col(c)), p)) < kGeometryTolerance;
    }
    if (perp) out.push_back(s.roots[p]);
  }
  return out;
}

std::vector<RootIndex> psi(const Stage& s, const Angle& theta) {
  if (s.labels.empty()) return s.roots;
  const auto basis = rational_kernel(evaluate(cyclotomic_polynomial(theta.root_order()), s.matrix));
  std::vector<RootIndex> out;
  for (std::size_t p = 0; p < s.roots.size(); ++p) {
    bool perp = true;
    for (const auto& v : basis)
      if (sgn(pairing(s, v, p)) != 0) {
        perp = false;
        break;
      }
    if (perp) out.push_back(s.roots[p]);
  }
  return out;
}

// ---------------------------------------------------------------- regular points

namespace {

std::size_t position_of(const Stage& s, RootIndex r) {
  auto it = std::lower_bound(s.roots.begin(), s.roots.end(), r);
  if (it == s.roots.end() || *it != r) throw InconsistencyError("root is not in the stage");
  return static_cast<std::size_t>(it - s.roots.begin());
}

bool contained(const std::vector<RootIndex>& sorted, RootIndex r) {
  return std::binary_search(sorted.begin(), sorted.end(), r);
}

bool is_nonzero(double v, double scale) { return std::abs(v) > kGeometryTolerance * scale; }
bool is_nonzero(const mpq_class& v, const mpq_class&) { return sgn(v) != 0; }
bool is_nonnegative(double v, double scale) { return v >= -kGeometryTolerance * scale; }
bool is_nonnegative(const mpq_class& v, const mpq_class&) { return sgn(v) >= 0; }
bool above_margin(double v) { return v > kLpMargin; }
bool above_margin(const mpq_class& v) { return sgn(v) > 0; }

template <class T> T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T acc(0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class T> T scale_of(const std::vector<T>& v) {
  if constexpr (std::is_same_v<T, double>) {
    double m = 0;
    for (double a : v) m = std::max(m, std::abs(a));
    return std::max(m, 1.0);
  } else {
    return T(1);
  }
}

// Cone {y : rows . y >= 0} in coordinates of K. Returns y with rows.y >= 0
// and targets.y != 0 for every target, or nullopt if some target vanishes on
// the whole cone.
template <class T>
std::optional<std::vector<T>> cone_regular_point(const std::vector<std::vector<T>>& rows,
                                                 const std::vector<std::vector<T>>& targets, std::size_t k,
                                                 std::mt19937_64& rng) {
  // LP in y = y+ - y-, 0 <= y+- <= 1.
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  for (const auto& r : rows) {
    std::vector<T> row(2 * k);
    for (std::size_t j = 0; j < k; ++j) {
      row[j] = -r[j];
      row[k + j] = r[j];
    }
    a.push_back(std::move(row));
    b.push_back(T(0));
  }
  for (std::size_t j = 0; j < 2 * k; ++j) {
    std::vector<T> row(2 * k, T(0));
    row[j] = T(1);
    a.push_back(std::move(row));
    b.push_back(T(1));
  }

  std::vector<std::vector<T>> witnesses;
  std::vector<char> covered(targets.size(), 0);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (covered[t]) continue;
    std::optional<std::vector<T>> found;
    for (int sign : {1, -1}) {
      std::vector<T> c(2 * k);
      for (std::size_t j = 0; j < k; ++j) {
        c[j] = T(sign) * targets[t][j];
        c[k + j] = -T(sign) * targets[t][j];
      }
      auto sol = maximize(a, b, c);
      if (!sol || !above_margin(sol->value)) continue;
      std::vector<T> y(k);
      for (std::size_t j = 0; j < k; ++j) y[j] = sol->z[j] - sol->z[k + j];
      found = std::move(y);
      break;
    }
    if (!found) return std::nullopt;
    for (std::size_t u = 0; u < targets.size(); ++u) {
      const T v = dot(targets[u], *found);
      if (above_margin(v) || above_margin(T(-1) * v)) covered[u] = 1;
    }
    witnesses.push_back(std::move(*found));
  }

  std::uniform_int_distribution<int> coef(1, 1000);
  for (int attempt = 0; attempt < kRegularPointRetries; ++attempt) {
    std::vector<T> y(k, T(0));
    for (const auto& w : witnesses) {
      const T c(coef(rng));
      for (std::size_t j = 0; j < k; ++j) y[j] += c * w[j];
    }
    const T sc = scale_of(y);
    bool ok = true;
    for (const auto& r : rows) ok = ok && is_nonnegative(dot(r, y), sc);
    for (const auto& t : targets) ok = ok && is_nonzero(dot(t, y), sc);
    if (ok) return y;
  }
  throw InconsistencyError("no regular point found after " + std::to_string(kRegularPointRetries) + " retries");
}

// Linear functional v -> (v, gamma) in stage coordinates.
std::vector<std::int64_t> functional(const Stage& s, std::size_t root_pos) {
  const std::size_t k = s.labels.size();
  std::vector<std::int64_t> f(k, 0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) f[a] += s.gram[a][b] * s.coords[root_pos][b];
  return f;
}

template <class T> std::vector<T> restrict_functional(const std::vector<std::int64_t>& f, const std::vector<std::vector<T>>& cols) {
  std::vector<T> out(cols.size(), T(0));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t a = 0; a < f.size(); ++a) out[c] += T(static_cast<long>(f[a])) * cols[c][a];
  return out;
}

template <class T>
std::optional<std::vector<T>> dominant_in(const Stage& s, const std::vector<std::vector<T>>& cols,
                                          const std::vector<RootIndex>& avoid, std::mt19937_64& rng) {
  std::vector<std::vector<T>> rows, targets;
  for (std::size_t j = 0; j < s.labels.size(); ++j)
    rows.push_back(restrict_functional(functional(s, position_of(s, s.labels[j])), cols));
  for (RootIndex r : avoid) targets.push_back(restrict_functional(functional(s, position_of(s, r)), cols));
  return cone_regular_point(rows, targets, cols.size(), rng);
}

} // namespace

RegularPoint regular_point(const Stage& s, const Subspace& k, std::mt19937_64& rng) {
  RegularPoint out;
  const auto n = static_cast<Eigen::Index>(s.labels.size());
  out.point = Eigen::VectorXd::Zero(n);
  out.psi = roots_containing(s, k);
  if (k.dim() == 0) return out;
  std::uniform_int_distribution<int> coef(-1000, 1000);
  for (int attempt = 0; attempt < kRegularPointRetries; ++attempt) {
    std::vector<int> y(static_cast<std::size_t>(k.dim()));
    for (auto& v : y) v = coef(rng);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < k.dim(); ++c) e += y[c] * k.basis.col(c);
    std::optional<RationalVector> ex;
    if (k.exact) {
      RationalVector v(s.labels.size(), 0);
      for (int c = 0; c < k.dim(); ++c)
        for (std::size_t a = 0; a < v.size(); ++a) v[a] += mpq_class(y[c]) * (*k.exact)[c][a];
      ex = std::move(v);
    }
    const double sc = std::max(1.0, e.cwiseAbs().maxCoeff());
    bool ok = true;
    for (std::size_t p = 0; p < s.roots.size() && ok; ++p) {
      if (contained(out.psi, s.roots[p])) continue;
      ok = ex ? sgn(pairing(s, *ex, p)) != 0 : std::abs(pairing(s, e, p)) > kGeometryTolerance * sc;
    }
    if (ok) {
      out.point = e;
      if (ex) {
        out.exact = std::move(ex);
        for (Eigen::Index a = 0; a < n; ++a) out.point[a] = (*out.exact)[a].get_d();
      }
      return out;
    }
  }
  throw InconsistencyError("no regular point found after " + std::to_string(kRegularPointRetries) + " retries");
}

std::optional<RegularPoint> dominant_regular_point(const Stage& s, const Subspace& k,
                                                   const std::vector<RootIndex>& avoid, std::mt19937_64& rng) {
  RegularPoint out;
  const std::size_t n = s.labels.size();
  out.point = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (k.dim() == 0) {
    if (!avoid.empty()) return std::nullopt;
    out.exact = RationalVector(n, 0);
    return out;
  }
  if (k.exact) {
    auto y = dominant_in<mpq_class>(s, *k.exact, avoid, rng);
    if (!y) return std::nullopt;
    RationalVector v(n, 0);
    for (std::size_t c = 0; c < y->size(); ++c)
      for (std::size_t a = 0; a < n; ++a) v[a] += (*y)[c] * (*k.exact)[c][a];
    for (std::size_t a = 0; a < n; ++a) out.point[static_cast<Eigen::Index>(a)] = v[a].get_d();
    out.exact = std::move(v);
  } else {
    std::vector<std::vector<double>> cols(static_cast<std::size_t>(k.dim()), std::vector<double>(n));
    for (int c = 0; c < k.dim(); ++c)
      for (std::size_t a = 0; a < n; ++a) cols[c][a] = k.basis(static_cast<Eigen::Index>(a), c);
    auto y = dominant_in<double>(s, cols, avoid, rng);
    if (!y) return std::nullopt;
    for (int c = 0; c < k.dim(); ++c) out.point += (*y)[c] * k.basis.col(c);
  }
  out.psi = roots_containing(s, k);
  return out;
}

// ---------------------------------------------------------------- admissibility

namespace {

std::vector<RootIndex> intersect(const std::vector<RootIndex>& a, const std::vector<RootIndex>& b) {
  std::vector<RootIndex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void require_angles(const std::vector<Angle>& available, const std::vector<Angle>& sequence) {
  for (const auto& a : sequence)
    if (a.is_zero() || std::find(available.begin(), available.end(), a) == available.end())
      throw InputError("angle " + a.to_string() + " is not a nonzero eigen-angle of the element");
}

} // namespace

bool is_admissible(const TwistedElement& x, const std::vector<Angle>& sequence) {
  const auto all = nonzero_angles(x);
  require_angles(all, sequence);
  if (sequence.empty()) return all.empty();
  const Stage s = full_stage(x);
  std::vector<RootIndex> seq = s.roots, full = s.roots;
  for (const auto& a : sequence) seq = intersect(seq, psi(s, a));
  for (const auto& a : all) full = intersect(full, psi(s, a));
  return seq == full;
}

std::vector<std::vector<Angle>> admissible_sequences(const TwistedElement& x) {
  auto angles = nonzero_angles(x);
  std::sort(angles.begin(), angles.end());
  std::vector<std::vector<Angle>> out;
  do {
    if (is_admissible(x, angles)) out.push_back(angles);
  } while (std::next_permutation(angles.begin(), angles.end()));
  return out;
}

// ---------------------------------------------------------------- good position

namespace {

const AngleComponent* find_component(const std::vector<AngleComponent>& comps, const Angle& a) {
  for (const auto& c : comps)
    if (c.angle == a) return &c;
  return nullptr;
}

std::vector<RootIndex> positive_outside(const Stage& s, const std::vector<RootIndex>& psi_sorted, const RootSystem& rs) {
  std::vector<RootIndex> out;
  for (RootIndex r : s.roots)
    if (rs.is_positive(r) && !contained(psi_sorted, r)) out.push_back(r);
  return out;
}

int positive_count(const RootSystem& rs, const std::vector<RootIndex>& roots) {
  return static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](RootIndex r) { return rs.is_positive(r); }));
}

} // namespace

bool is_good_position_direct(const TwistedElement& x, const std::vector<Angle>& sequence, std::uint64_t seed) {
  if (!is_admissible(x, sequence)) throw InputError("sequence is not admissible for the element");
  const RootSystem& rs = x.roots();
  const Stage s = full_stage(x);
  const auto comps = eigen_angles(s);
  std::mt19937_64 rng(seed);
  std::vector<RootIndex> psi_acc = s.roots;
  Subspace acc;
  acc.basis.resize(rs.rank(), 0);
  acc.exact = std::vector<RationalVector>{};
  for (const auto& a : sequence) {
    const AngleComponent* c = find_component(comps, a);
    const Eigen::Index old = acc.basis.cols();
    acc.basis.conservativeResize(Eigen::NoChange, old + c->dim);
    acc.basis.rightCols(c->dim) = c->space.basis;
    if (acc.exact && c->space.exact)
      acc.exact->insert(acc.exact->end(), c->space.exact->begin(), c->space.exact->end());
    else
      acc.exact.reset();
    psi_acc = intersect(psi_acc, psi(s, a));
    if (!dominant_regular_point(s, acc, positive_outside(s, psi_acc, rs), rng)) return false;
  }
  return true;
}

std::optional<GoodPositionCertificate> is_good_position(const TwistedElement& x, const std::vector<Angle>& sequence,
                                                        std::uint64_t seed) {
  if (!is_admissible(x, sequence)) throw InputError("sequence is not admissible for the element");
  const RootSystem& rs = x.roots();
  std::mt19937_64 rng(seed);

  GoodPositionCertificate cert;
  cert.sequence = sequence;
  cert.exact = true;
  Stage stage = full_stage(x);
  cert.stage_labels.push_back(stage.labels);
  cert.parabolic_chain.push_back(stage.roots);
  cert.h_values.push_back(rs.positive_count());

  for (const auto& a : sequence) {
    const auto comps = eigen_angles(stage);
    const AngleComponent* c = find_component(comps, a);
    std::vector<RootIndex> next;
    Eigen::VectorXd point = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(stage.labels.size()));
    if (!c) {
      next = stage.roots;
    } else {
      next = psi(stage, a);
      auto found = dominant_regular_point(stage, c->space, positive_outside(stage, next, rs), rng);
      if (!found) return std::nullopt;
      point = found->point;
      cert.exact = cert.exact && c->space.exact.has_value();
    }
    const auto labels = standard_parabolic_J(rs, next);
    if (!labels) throw InconsistencyError("stage subsystem is not standard parabolic");
    stage = restrict_stage(x, *labels);
    cert.stage_points.push_back(point);
    cert.stage_labels.push_back(stage.labels);
    cert.parabolic_chain.push_back(next);
    cert.h_values.push_back(positive_count(rs, next));
  }

  // Points of the accumulated sums, from the definition read directly.
  const Stage full = full_stage(x);
  const auto comps = eigen_angles(full);
  std::vector<RootIndex> psi_acc = full.roots;
  Subspace acc;
  acc.basis.resize(rs.rank(), 0);
  acc.exact = std::vector<RationalVector>{};
  for (const auto& a : sequence) {
    const AngleComponent* c = find_component(comps, a);
    const Eigen::Index old = acc.basis.cols();
    acc.basis.conservativeResize(Eigen::NoChange, old + c->dim);
    acc.basis.rightCols(c->dim) = c->space.basis;
    if (acc.exact && c->space.exact)
      acc.exact->insert(acc.exact->end(), c->space.exact->begin(), c->space.exact->end());
    else
      acc.exact.reset();
    psi_acc = intersect(psi_acc, psi(full, a));
    if (psi_acc != cert.parabolic_chain[cert.regular_points.size() + 1])
      throw InconsistencyError("parabolic chain differs between the recursion and the definition");
    auto found = dominant_regular_point(full, acc, positive_outside(full, psi_acc, rs), rng);
    if (!found) throw InconsistencyError("recursion accepted a sequence the definition rejects");
    cert.regular_points.push_back(found->point);
  }
  return cert;
}

int good_position_length(const GoodPositionCertificate& cert) {
  mpq_class total = 0;
  for (std::size_t i = 0; i < cert.sequence.size(); ++i) {
    const Angle& a = cert.sequence[i];
    total += mpq_class(2 * a.num(), a.den()) * (cert.h_values[i] - cert.h_values[i + 1]);
  }
  total.canonicalize();
  if (total.get_den() != 1) throw InconsistencyError("length formula is not an integer: " + total.get_str());
  return static_cast<int>(total.get_num().get_si());
}

int separation_witness(const TwistedElement& x, const Eigen::VectorXd& e, RootIndex gamma) {
  const Stage s = full_stage(x.inverse());
  const Eigen::MatrixXd m = to_double(s.matrix);
  const std::size_t pos = position_of(s, gamma);
  Eigen::VectorXd v = e;
  const double sc = std::max(1.0, e.cwiseAbs().maxCoeff());
  for (int i = 1; i <= x.order(); ++i) {
    v = m * v;
    if (pairing(s, v, pos) < -kGeometryTolerance * sc) return i;
  }
  throw InconsistencyError("no separation within the order of the element for root " +
                           root_name(x.roots(), gamma));
}

} // namespace wc
