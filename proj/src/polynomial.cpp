#include "wc/polynomial.hpp"

#include <stdexcept>
#include <string>

#include "wc/errors.hpp"

namespace wc {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InconsistencyError("integer overflow in polynomial arithmetic");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InconsistencyError("integer overflow in polynomial arithmetic");
  return r;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] = checked_add(c[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return c;
}

} // namespace

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = checked_add(c[i + j], checked_mul(a[i], b[j]));
  trim(c);
  return c;
}

bool poly_divide_exact(const IntPoly& a, const IntPoly& monic, IntPoly& quotient) {
  IntPoly r = a;
  trim(r);
  const std::size_t db = monic.size() - 1;
  if (r.size() < monic.size()) {
    quotient.clear();
    return r.empty();
  }
  quotient.assign(r.size() - db, 0);
  for (std::size_t k = r.size(); k-- > db;) {
    const std::int64_t c = r[k];
    quotient[k - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] = checked_add(r[k - db + j], -checked_mul(c, monic[j]));
  }
  trim(r);
  trim(quotient);
  return r.empty();
}

IntPoly characteristic_polynomial(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntPoly c(n + 1, 0);
  c[n] = 1;
  IntMatrix mk(n, std::vector<std::int64_t>(n, 0)); // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
    IntMatrix next = mat_mul(m, mk);
    for (std::size_t i = 0; i < n; ++i) next[i][i] = checked_add(next[i][i], c[n - k + 1]);
    mk = std::move(next);
    const IntMatrix am = mat_mul(m, mk);
    std::int64_t tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr = checked_add(tr, am[i][i]);
    if (tr % static_cast<std::int64_t>(k) != 0) throw InconsistencyError("non-integral characteristic polynomial");
    c[n - k] = -tr / static_cast<std::int64_t>(k);
  }
  return c;
}

int euler_phi(int d) {
  int r = d;
  for (int p = 2; p * p <= d; ++p)
    if (d % p == 0) {
      while (d % p == 0) d /= p;
      r -= r / p;
    }
  if (d > 1) r -= r / d;
  return r;
}

IntPoly cyclotomic_polynomial(int d) {
  if (d < 1) throw InputError("cyclotomic index must be positive");
  IntPoly p(d + 1, 0);
  p[0] = -1;
  p[d] = 1;
  for (int e = 1; e < d; ++e) {
    if (d % e) continue;
    IntPoly q;
    if (!poly_divide_exact(p, cyclotomic_polynomial(e), q)) throw InconsistencyError("cyclotomic division failed");
    p = std::move(q);
  }
  return p;
}

std::map<int, int> cyclotomic_multiplicities(const IntMatrix& m, int order) {
  IntPoly rest = characteristic_polynomial(m);
  std::map<int, int> mult;
  for (int d = 1; d <= order; ++d) {
    if (order % d) continue;
    const IntPoly phi = cyclotomic_polynomial(d);
    IntPoly q;
    while (rest.size() >= phi.size() && poly_divide_exact(rest, phi, q)) {
      ++mult[d];
      rest = std::move(q);
    }
  }
  if (rest != IntPoly{1})
    throw InconsistencyError("characteristic polynomial is not a product of cyclotomic factors dividing order " +
                             std::to_string(order));
  return mult;
}

IntMatrix evaluate(const IntPoly& p, const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix acc(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t k = p.size(); k-- > 0;) {
    acc = mat_mul(acc, m);
    for (std::size_t i = 0; i < n; ++i) acc[i][i] = checked_add(acc[i][i], p[k]);
  }
  return acc;
}

} // namespace wc
