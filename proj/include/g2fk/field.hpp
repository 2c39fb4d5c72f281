#pragma once

// Exact arithmetic in the prime field F_p for small odd primes.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace g2fk {

constexpr unsigned kMinPrime = 3;
constexpr unsigned kMaxPrime = 31;

class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

constexpr bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void require_supported_prime(unsigned p) {
  if (!is_prime(p) || p < kMinPrime || p > kMaxPrime)
    throw FieldError("modulus must be an odd prime in [3, 31], got " + std::to_string(p));
}

/// A residue class modulo an odd prime p, always stored reduced.
class FieldScalar {
 public:
  FieldScalar(long long v, unsigned p) : p_(p) {
    require_supported_prime(p);
    long long r = v % static_cast<long long>(p);
    if (r < 0) r += p;
    v_ = static_cast<unsigned>(r);
  }

  unsigned value() const { return v_; }
  unsigned modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  /// Representative in (-p/2, p/2].
  int symmetric() const {
    int v = static_cast<int>(v_);
    return 2 * v > static_cast<int>(p_) ? v - static_cast<int>(p_) : v;
  }

  friend FieldScalar operator+(FieldScalar a, FieldScalar b) {
    check_same(a, b);
    return {static_cast<long long>(a.v_) + b.v_, a.p_};
  }
  friend FieldScalar operator-(FieldScalar a, FieldScalar b) {
    check_same(a, b);
    return {static_cast<long long>(a.v_) - b.v_, a.p_};
  }
  friend FieldScalar operator*(FieldScalar a, FieldScalar b) {
    check_same(a, b);
    return {static_cast<long long>(a.v_) * b.v_, a.p_};
  }
  friend FieldScalar operator/(FieldScalar a, FieldScalar b) { return a * b.inv(); }
  FieldScalar operator-() const { return {-static_cast<long long>(v_), p_}; }

  friend bool operator==(FieldScalar a, FieldScalar b) { return a.p_ == b.p_ && a.v_ == b.v_; }

  FieldScalar pow(unsigned long long e) const {
    unsigned long long base = v_, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return {static_cast<long long>(acc), p_};
  }

  FieldScalar inv() const {
    if (v_ == 0) throw FieldError("division by zero in F_" + std::to_string(p_));
    return pow(p_ - 2);
  }

 private:
  static void check_same(FieldScalar a, FieldScalar b) {
    if (a.p_ != b.p_)
      throw FieldError("modulus mismatch: " + std::to_string(a.p_) + " vs " + std::to_string(b.p_));
  }

  unsigned v_ = 0;
  unsigned p_ = 3;
};

/// Binomial coefficient C(3, a) in F_p. Its use as a denominator needs p >= 5.
inline FieldScalar binom3(unsigned a, unsigned p) {
  static constexpr std::array<int, 4> kRow{1, 3, 3, 1};
  if (a > 3) throw FieldError("binom3 index must lie in 0..3");
  if (p == 3 && (a == 1 || a == 2)) throw FieldError("model requires p >= 5");
  return {kRow[a], p};
}

/// Raw-integer helpers for hot loops; values are plain ints in [0, p).
struct PrimeField {
  explicit PrimeField(unsigned prime) : p(static_cast<int>(prime)) {
    require_supported_prime(prime);
    inverse.assign(prime, 0);
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b)
        if (a * b % p == 1) inverse[a] = b;
  }

  int reduce(long long v) const {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
  }
  int add(int a, int b) const { return (a + b) % p; }
  int sub(int a, int b) const { return (a - b + p) % p; }
  int mul(int a, int b) const { return a * b % p; }
  int neg(int a) const { return a == 0 ? 0 : p - a; }
  int inv(int a) const {
    if (a % p == 0) throw FieldError("division by zero in F_" + std::to_string(p));
    return inverse[reduce(a)];
  }
  int pow(int a, unsigned e) const {
    int acc = 1, base = reduce(a);
    while (e) {
      if (e & 1) acc = acc * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return acc;
  }
  int symmetric(int a) const { return 2 * a > p ? a - p : a; }

  int p;
  std::vector<int> inverse;
};

}  // namespace g2fk
