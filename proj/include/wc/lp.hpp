#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace wc {

namespace lp_detail {

inline bool positive(double v) { return v > 1e-12; }
inline bool negative(double v) { return v < -1e-12; }
inline bool positive(const mpq_class& v) { return sgn(v) > 0; }
inline bool negative(const mpq_class& v) { return sgn(v) < 0; }

} // namespace lp_detail

template <class T> struct LpSolution {
  T value;
  std::vector<T> z;
};

// maximize c.z subject to A z <= b, z >= 0, with b >= 0 so that the slack
// basis is feasible. Dense tableau, Bland's rule. Returns nullopt when the
// objective is unbounded.
template <class T>
std::optional<LpSolution<T>> maximize(const std::vector<std::vector<T>>& a, const std::vector<T>& b,
                                      const std::vector<T>& c) {
  using lp_detail::negative;
  using lp_detail::positive;
  const std::size_t m = a.size(), n = c.size();
  // tableau rows: constraints then the objective row (reduced costs negated)
  std::vector<std::vector<T>> t(m + 1, std::vector<T>(n + m + 1, T(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = T(1);
    t[i][n + m] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -c[j];

  for (;;) {
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (negative(t[m][j])) {
        enter = j;
        break;
      }
    if (enter == n + m) break;

    std::size_t leave = m;
    T best(0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!positive(t[i][enter])) continue;
      T ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best || (!(best < ratio) && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;

    const T piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const T f = t[i][enter];
      if (!positive(f) && !negative(f)) continue;
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  LpSolution<T> out{t[m][n + m], std::vector<T>(n, T(0))};
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) out.z[basis[i]] = t[i][n + m];
  return out;
}

} // namespace wc
