#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "pq/errors.hpp"

namespace pq {

// Exact rational arithmetic on 64-bit integers with overflow detection.
// All geometric invariants in the pipeline are tiny (numerators and
// denominators far below 2^32), so int64 with checked ops is enough;
// an overflow throws rather than silently wrapping.

namespace detail {
inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw ArithmeticOverflow("rational multiply overflow");
  return r;
}
inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r))
    throw ArithmeticOverflow("rational add overflow");
  return r;
}
} // namespace detail

class Rational {
public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t n) : num_(n), den_(1) {}
  Rational(int64_t n, int64_t d) : num_(n), den_(d) { normalize(); }

  int64_t num() const { return num_; }
  int64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  int64_t as_integer() const {
    if (!is_integer())
      throw Error("rational " + str() + " is not an integer");
    return num_;
  }

  Rational operator+(const Rational &o) const {
    int64_t g = std::gcd(den_, o.den_);
    int64_t l = detail::checked_mul(den_ / g, o.den_);
    int64_t a = detail::checked_mul(num_, o.den_ / g);
    int64_t b = detail::checked_mul(o.num_, den_ / g);
    return Rational(detail::checked_add(a, b), l);
  }
  Rational operator-(const Rational &o) const { return *this + Rational(-o.num_, o.den_); }
  Rational operator-() const { return Rational(-num_, den_); }
  Rational operator*(const Rational &o) const {
    int64_t g1 = std::gcd(std::abs(num_), o.den_);
    int64_t g2 = std::gcd(den_, std::abs(o.num_));
    return Rational(detail::checked_mul(num_ / g1, o.num_ / g2),
                    detail::checked_mul(den_ / g2, o.den_ / g1));
  }
  Rational operator/(const Rational &o) const {
    if (o.num_ == 0)
      throw Error("rational division by zero");
    return *this * Rational(o.den_, o.num_);
  }

  Rational &operator+=(const Rational &o) { return *this = *this + o; }
  Rational &operator-=(const Rational &o) { return *this = *this - o; }
  Rational &operator*=(const Rational &o) { return *this = *this * o; }
  Rational &operator/=(const Rational &o) { return *this = *this / o; }

  bool operator==(const Rational &o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational &o) const { return !(*this == o); }
  bool operator<(const Rational &o) const {
    return detail::checked_mul(num_, o.den_) < detail::checked_mul(o.num_, den_);
  }
  bool operator<=(const Rational &o) const { return *this < o || *this == o; }
  bool operator>(const Rational &o) const { return o < *this; }
  bool operator>=(const Rational &o) const { return o <= *this; }

  std::string str() const {
    if (den_ == 1)
      return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

private:
  void normalize() {
    if (den_ == 0)
      throw Error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    int64_t g = std::gcd(std::abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0)
      den_ = 1;
  }

  int64_t num_;
  int64_t den_;
};

} // namespace pq
