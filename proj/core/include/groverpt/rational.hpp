#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace groverpt {

/// Exact arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. Arithmetic never rounds.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long value) : q_(value) {}  // NOLINT: implicit, integer literals are coefficients
  Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
  explicit Rational(const mpz_class& num, const mpz_class& den = 1) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }

  /// Parses "num/den" or "num" (decimal digits, optional leading '-').
  static Rational from_string(std::string_view text) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + std::string(text) + "'");
    q.canonicalize();
    return Rational(weak_tag{}, std::move(q));
  }

  std::string to_string() const { return q_.get_str(); }
  double to_double() const { return q_.get_d(); }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  friend Rational operator-(const Rational& a) { return Rational(weak_tag{}, mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

 private:
  // mpq arithmetic preserves canonical form, so results skip re-canonicalizing.
  struct weak_tag {};
  Rational(weak_tag, mpq_class q) : q_(std::move(q)) {}

  mpq_class q_;
};

/// n! as an exact integer (cached).
const mpz_class& factorial_int(unsigned n);

/// n! as a Rational.
inline Rational factorial(unsigned n) { return Rational(factorial_int(n)); }

/// Exact beta-integral weight i!*j!/(i+j+1)!, the kernel of
/// integral_0^T (T-phi)^i phi^j dphi = beta_weight(i,j) * T^(i+j+1).
Rational beta_weight(unsigned i, unsigned j);

}  // namespace groverpt
