#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "groverpt/rational.hpp"
#include "groverpt/series.hpp"

namespace groverpt {

/// Raised when an exact computation violates a structural identity that the
/// algebra guarantees (e.g. a residual imaginary part where the represented
/// function is real).
struct internal_consistency_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Exact complex rational a + b*i.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  GaussianRational conj() const { return {re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) { re += o.re; im += o.im; return *this; }
  GaussianRational& operator-=(const GaussianRational& o) { re -= o.re; im -= o.im; return *this; }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { a += b; return a; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { a -= b; return a; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }
  /// Multiplicative inverse; throws on zero.
  GaussianRational inverse() const {
    Rational n = re * re + im * im;
    if (n.is_zero()) throw std::invalid_argument("GaussianRational: inverse of zero");
    return {re / n, -im / n};
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

/// Exact finite sum  sum  c_{w,a} * Theta^a * e^{i w Theta}  over frequencies
/// w in {-4, 0, +4} and powers a >= 0. Represents real-valued functions: the
/// coefficient at (-w, a) must be the conjugate of the one at (+w, a).
/// Closed under the convolution integral_0^Theta a(Theta-phi) w(phi) dphi.
class ExpPoly {
 public:
  using Key = std::pair<int, int>;  // (frequency, power)

  ExpPoly() = default;

  static ExpPoly zero() { return {}; }
  static ExpPoly constant(const Rational& c);
  static ExpPoly theta_power(int a, const Rational& c = Rational(1));
  static ExpPoly cos_4theta();
  static ExpPoly sin_4theta();
  static ExpPoly sin_sq_2theta();  // (1 - cos 4Theta)/2
  static ExpPoly cos_sq_2theta();  // (1 + cos 4Theta)/2

  const std::map<Key, GaussianRational>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int max_power() const;

  /// Adds c * Theta^power * e^(i*freq*Theta); drops the term if it cancels.
  /// Does not enforce conjugate symmetry (tests use this to build bad inputs).
  void add_term(int freq, int power, const GaussianRational& c);

  GaussianRational coeff(int freq, int power) const;

  ExpPoly& operator+=(const ExpPoly& o);
  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { a += b; return a; }
  ExpPoly& scale(const Rational& s);
  friend ExpPoly operator*(const Rational& s, ExpPoly a) { a.scale(s); return a; }

  bool conjugate_symmetric() const;
  /// Throws internal_consistency_error unless conjugate-symmetric.
  void check_real(const char* where) const;

  friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

  /// Exact Taylor expansion about 0, truncated at cap. Imaginary parts must
  /// cancel identically; a nonzero residue throws internal_consistency_error.
  TruncatedSeries to_series(int cap) const;

  /// Splits into the real trig basis: f = poly + cos4 * cos(4 Theta) + sin4 * sin(4 Theta),
  /// each a map power -> exact rational coefficient.
  struct TrigView {
    std::map<int, Rational> poly, cos4, sin4;
  };
  TrigView trig_view() const;

  /// Direct floating evaluation of (this function) / Theta^divisor_power,
  /// term by term, deliberately without any cancellation protection.
  /// theta == 0 with a negative net power throws std::domain_error.
  double eval_naive(double theta, int divisor_power = 0) const;

 private:
  std::map<Key, GaussianRational> terms_;
};

/// Exact  integral_0^Theta a(Theta-phi) * w(phi) dphi.  Equal-frequency term
/// pairs contribute through the beta/factorial rule at the shared frequency;
/// unequal-frequency pairs integrate by parts, landing on both frequencies.
/// The result stays inside the {-4, 0, +4} frequency set and is checked to
/// remain conjugate-symmetric.
ExpPoly ep_convolve(const ExpPoly& a, const ExpPoly& w);

/// A closed form F = numerator / Theta^divisor (division deferred to
/// evaluation so the stored algebra stays polynomial).
struct ClosedFormF {
  ExpPoly numerator;
  int divisor = 0;

  double eval_naive(double theta) const { return numerator.eval_naive(theta, divisor); }
  /// Trig view of the divided form; keys may be negative powers of Theta.
  ExpPoly::TrigView trig_view() const;
  /// Exact value at Theta = pi/4 (where e^(+-4i*Theta) = -1). Only valid when
  /// every pi-dependence cancels, i.e. the substituted polynomial collapses
  /// to the single power `divisor`; otherwise throws internal_consistency_error.
  Rational eval_quarter_pi_exact() const;
};

}  // namespace groverpt
