#pragma once

// Arithmetic in F_p for a word-sized odd prime p (p < 2^62).

#include <cassert>
#include <cstdint>
#include <ostream>
#include <random>

#include "focal/errors.hpp"

namespace focal {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// An element of F_p carrying its own modulus.
class Fp {
 public:
  Fp() = default;
  Fp(u64 value, u64 p) : v_(value % p), p_(p) {}

  static Fp from_int(i64 n, u64 p) {
    i64 r = n % static_cast<i64>(p);
    if (r < 0) r += static_cast<i64>(p);
    return Fp(static_cast<u64>(r), p);
  }

  u64 value() const { return v_; }
  u64 modulus() const { return p_; }

  Fp& operator+=(const Fp& o) {
    assert(p_ == o.p_);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    assert(p_ == o.p_);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    assert(p_ == o.p_);
    v_ = mulmod(v_, o.v_, p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }

  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  Fp pow(u64 e) const { return Fp(powmod(v_, e, p_), p_); }

  Fp inv() const {
    if (v_ == 0) throw Error(ErrorKind::ZeroInverse, "inverse of zero in F_p");
    // Extended Euclid on signed 128-bit.
    __int128 t = 0, new_t = 1;
    __int128 r = p_, new_r = v_;
    while (new_r != 0) {
      __int128 q = r / new_r;
      __int128 tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return Fp(static_cast<u64>(t), p_);
  }

  bool is_zero() const { return v_ == 0; }

  /// Representative in (-p/2, p/2], handy for printing small values.
  i64 signed_value() const {
    return v_ > p_ / 2 ? -static_cast<i64>(p_ - v_) : static_cast<i64>(v_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& a) { return os << a.v_; }

 private:
  u64 v_ = 0;
  u64 p_ = 0;
};

inline Fp ff_inv(const Fp& a) { return a.inv(); }

// Ring-generic helpers. Every ring type used by the templates below provides
// the same set of free functions, found by overloading.
inline Fp from_int(const Fp& like, i64 n) { return Fp::from_int(n, like.modulus()); }
inline Fp zero_like(const Fp& like) { return Fp(0, like.modulus()); }
inline Fp one_like(const Fp& like) { return Fp(1, like.modulus()); }
inline bool is_zero(const Fp& a) { return a.is_zero(); }
inline bool is_unit(const Fp& a) { return !a.is_zero(); }
inline Fp inverse(const Fp& a) { return a.inv(); }
inline const Fp& residue(const Fp& a) { return a; }

/// The field itself: a factory for elements and uniform samples.
class PrimeField {
 public:
  explicit PrimeField(u64 p) : p_(p) {
    if (p < 3 || p >= (u64{1} << 62) || !is_prime_u64(p))
      throw Error(ErrorKind::InvalidArgument, "modulus must be an odd prime below 2^62");
  }

  u64 prime() const { return p_; }
  Fp zero() const { return Fp(0, p_); }
  Fp one() const { return Fp(1, p_); }
  Fp operator()(i64 n) const { return Fp::from_int(n, p_); }

  template <class Gen>
  Fp random(Gen& g) const {
    std::uniform_int_distribution<u64> d(0, p_ - 1);
    return Fp(d(g), p_);
  }
  template <class Gen>
  Fp random_nonzero(Gen& g) const {
    std::uniform_int_distribution<u64> d(1, p_ - 1);
    return Fp(d(g), p_);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  u64 p_;
};

/// Uniform random prime in [2^60, 2^62).
template <class Gen>
u64 random_prime(Gen& g) {
  std::uniform_int_distribution<u64> d(u64{1} << 60, (u64{1} << 62) - 1);
  for (;;) {
    u64 c = d(g) | 1;
    if (is_prime_u64(c)) return c;
  }
}

}  // namespace focal
