#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wc {

// Element of a prime field F_p. The modulus travels with the value so that
// elements from different fields cannot be mixed silently.
class Fp {
public:
  Fp() = default;
  Fp(std::int64_t v, std::uint32_t p) : p_(p) {
    const std::int64_t m = static_cast<std::int64_t>(p);
    v_ = static_cast<std::uint32_t>(((v % m) + m) % m);
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }

  friend Fp operator+(Fp a, Fp b) {
    const std::uint32_t p = merge(a, b);
    std::uint64_t s = std::uint64_t{a.v_} + b.v_;
    return raw(static_cast<std::uint32_t>(s >= p ? s - p : s), p);
  }
  friend Fp operator-(Fp a, Fp b) {
    const std::uint32_t p = merge(a, b);
    return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + p - b.v_, p);
  }
  friend Fp operator*(Fp a, Fp b) {
    const std::uint32_t p = merge(a, b);
    return raw(static_cast<std::uint32_t>((std::uint64_t{a.v_} * b.v_) % p), p);
  }
  friend Fp operator/(Fp a, Fp b) { return a * b.inverse(); }
  Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(Fp b) { return *this = *this + b; }
  Fp& operator-=(Fp b) { return *this = *this - b; }
  Fp& operator*=(Fp b) { return *this = *this * b; }
  Fp& operator/=(Fp b) { return *this = *this / b; }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && (a.p_ == b.p_ || a.p_ == 0 || b.p_ == 0); }

  Fp pow(std::uint64_t e) const {
    Fp base = *this, acc = raw(1 % p_, p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  Fp inverse() const;

private:
  static Fp raw(std::uint32_t v, std::uint32_t p) {
    Fp f;
    f.v_ = v;
    f.p_ = p;
    return f;
  }
  static std::uint32_t merge(const Fp& a, const Fp& b);

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

struct PrimeField {
  using value_type = Fp;
  std::uint32_t p = 101;

  // Throws InputError unless p is a prime below 2^31.
  explicit PrimeField(std::uint32_t prime);

  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1, p); }
  Fp from_int(std::int64_t v) const { return Fp(v, p); }
  bool is_zero(const Fp& v) const { return v.value() == 0; }
  std::string name() const { return "F" + std::to_string(p); }
  std::size_t size() const { return p; }
  // Element number k in 0..p-1.
  Fp element(std::size_t k) const { return Fp(static_cast<std::int64_t>(k), p); }
  template <class Rng> Fp random(Rng& rng) const {
    return Fp(static_cast<std::int64_t>(std::uniform_int_distribution<std::uint32_t>(0, p - 1)(rng)), p);
  }
  template <class Rng> Fp random_nonzero(Rng& rng) const {
    return Fp(static_cast<std::int64_t>(std::uniform_int_distribution<std::uint32_t>(1, p - 1)(rng)), p);
  }
  std::string to_string(const Fp& v) const { return std::to_string(v.value()); }
};

struct RationalField {
  using value_type = mpq_class;
  // Random elements are small integers in [-bound, bound].
  int bound = 5;

  mpq_class zero() const { return 0; }
  mpq_class one() const { return 1; }
  mpq_class from_int(std::int64_t v) const { return mpq_class(static_cast<long>(v)); }
  bool is_zero(const mpq_class& v) const { return sgn(v) == 0; }
  std::string name() const { return "Q"; }
  template <class Rng> mpq_class random(Rng& rng) const {
    return mpq_class(std::uniform_int_distribution<int>(-bound, bound)(rng));
  }
  template <class Rng> mpq_class random_nonzero(Rng& rng) const {
    int v = 0;
    while (v == 0) v = std::uniform_int_distribution<int>(-bound, bound)(rng);
    return mpq_class(v);
  }
  std::string to_string(const mpq_class& v) const { return v.get_str(); }
};

bool is_prime(std::uint64_t n);

} // namespace wc
