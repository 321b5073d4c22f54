#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

#include "jacclan/errors.hpp"

namespace jc {

// Element of a prime field F_p (p > 0) or of Q (p == 0).
// Rationals without an explicit field mix with F_p values by reduction mod p.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long long n) : v_(n) {}  // NOLINT: implicit integer literals are convenient
  Scalar(int n) : v_(n) {}        // NOLINT

  static Scalar mod(uint32_t p, long long n);
  static Scalar rational(const mpq_class& q);
  static Scalar parse(const std::string& s, uint32_t p);

  uint32_t field() const { return p_; }
  bool is_zero() const;
  bool is_one() const;
  mpq_class to_mpq() const;
  // Residue in [0, p) when field() > 0.
  int64_t residue() const { return v_; }
  std::string str() const;

  Scalar operator-() const;
  Scalar inv() const;
  Scalar pow(long long e) const;
  // Converts into the field of characteristic p (p == 0 keeps rationals).
  Scalar in_field(uint32_t p) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

 private:
  static void unify(Scalar& a, Scalar& b);
  static Scalar from_mpq(const mpq_class& q);
  uint32_t p_ = 0;
  int64_t v_ = 0;  // residue mod p, or small integer when q_ is null
  std::shared_ptr<const mpq_class> q_;
};

int64_t inv_mod(int64_t a, int64_t p);
bool is_prime(uint64_t n);

}  // namespace jc
