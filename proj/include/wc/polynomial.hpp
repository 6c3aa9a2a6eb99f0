#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace wc {

// Integer polynomial, coefficients from the constant term upwards.
using IntPoly = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<std::int64_t>>;

void trim(IntPoly& p);
IntPoly poly_mul(const IntPoly& a, const IntPoly& b);
// Exact division by a monic divisor; returns false if the remainder is nonzero.
bool poly_divide_exact(const IntPoly& a, const IntPoly& monic, IntPoly& quotient);

// det(tI - M) by Faddeev-LeVerrier.
IntPoly characteristic_polynomial(const IntMatrix& m);
IntPoly cyclotomic_polynomial(int d);
int euler_phi(int d);

// Multiplicity of each cyclotomic factor Phi_d (d | order) in the
// characteristic polynomial. Throws InconsistencyError if the factors do not
// exhaust it, which happens only when M does not have the stated order.
std::map<int, int> cyclotomic_multiplicities(const IntMatrix& m, int order);

// p(M) with integer arithmetic.
IntMatrix evaluate(const IntPoly& p, const IntMatrix& m);

} // namespace wc
