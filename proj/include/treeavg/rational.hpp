#pragma once

#include <cassert>
#include <cstdint>
#include <string>

namespace treeavg {

using Wide = __int128;

inline Wide wide_abs(Wide x) { return x < 0 ? -x : x; }

inline Wide wide_gcd(Wide a, Wide b) {
  a = wide_abs(a);
  b = wide_abs(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::string wide_to_string(Wide x);

// 128 bits is far beyond anything the engines produce (they rescale to
// int64 internally), but pathological weight lists could wrap it; failing
// loudly beats a silently wrong argmax.
[[noreturn]] void throw_rational_overflow();

inline Wide wide_mul(Wide a, Wide b) {
  Wide out;
  if (__builtin_mul_overflow(a, b, &out)) throw_rational_overflow();
  return out;
}

inline Wide wide_add(Wide a, Wide b) {
  Wide out;
  if (__builtin_add_overflow(a, b, &out)) throw_rational_overflow();
  return out;
}

// Exact rational number. The denominator is kept positive and the fraction
// reduced, so hashing/equality never see aliased representations. All
// comparisons cross-multiply; nothing is ever rounded to floating point on
// any search path.
class Rational {
 public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(Wide value) : num_(value), den_(1) {}  // NOLINT: implicit
  Rational(Wide num, Wide den) : num_(num), den_(den) {
    assert(den_ != 0);
    normalize();
  }

  Wide num() const { return num_; }
  Wide den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator-(const Rational& x) {
    Rational r;
    r.num_ = -x.num_;
    r.den_ = x.den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Wide g = wide_gcd(a.den_, b.den_);
    Wide bd = b.den_ / g;
    return Rational(wide_add(wide_mul(a.num_, bd), wide_mul(b.num_, a.den_ / g)),
                    wide_mul(a.den_, bd));
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    // Reduce across the diagonal first to keep intermediates small.
    Wide g1 = wide_gcd(a.num_, b.den_);
    Wide g2 = wide_gcd(b.num_, a.den_);
    Rational r;
    r.num_ = wide_mul(a.num_ / g1, b.num_ / g2);
    r.den_ = wide_mul(a.den_ / g2, b.den_ / g1);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    assert(b.num_ != 0);
    return a * Rational(b.den_, b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return wide_mul(a.num_, b.den_) < wide_mul(b.num_, a.den_);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return !(b < a);
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return !(a < b);
  }

  std::string str() const;

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    Wide g = wide_gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  Wide num_;
  Wide den_;
};

// Objective values are exact rationals end to end.
using Score = Rational;

Wide wide_lcm(Wide a, Wide b);

}  // namespace treeavg
