#include "wc/field.hpp"

#include <cassert>

#include "wc/errors.hpp"

namespace wc {

std::uint32_t Fp::merge(const Fp& a, const Fp& b) {
  assert((a.p_ == b.p_ || a.p_ == 0 || b.p_ == 0) && "mixing elements of different prime fields");
  return a.p_ != 0 ? a.p_ : b.p_;
}

Fp Fp::inverse() const {
  if (v_ == 0) throw InconsistencyError("inverse of zero in " + std::to_string(p_));
  return pow(p_ - 2);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint32_t prime) : p(prime) {
  if (!is_prime(prime) || prime >= (1u << 31)) throw InputError("field size " + std::to_string(prime) + " is not a prime below 2^31");
}

} // namespace wc
