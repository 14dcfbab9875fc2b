#pragma once

#include <stdexcept>
#include <vector>

#include "groverpt/rational.hpp"

namespace groverpt {

/// Raised when a series-degree invariant is broken (e.g. dividing by a power
/// of Theta that exceeds the leading order of the series).
struct invariant_violation : std::logic_error {
  using std::logic_error::logic_error;
};

/// Finite power series sum_{i=0}^{cap} c_i * Theta^i with exact rational
/// coefficients. Coefficients beyond `cap` are dropped, never assumed zero:
/// two series compare equal iff they agree coefficient-by-coefficient up to
/// the smaller cap.
class TruncatedSeries {
 public:
  /// Zero series of the given cap (cap >= 0).
  explicit TruncatedSeries(int cap);
  static TruncatedSeries constant(Rational value, int cap);
  /// Single term c * Theta^power (power <= cap).
  static TruncatedSeries monomial(Rational coeff, int power, int cap);

  int cap() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& coeff(int power) const;
  void set_coeff(int power, Rational value);
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Index of the first nonzero coefficient, or -1 for the zero series.
  int first_nonzero() const;

  /// Copy truncated (or zero-extended is not allowed: new_cap <= cap).
  TruncatedSeries truncated(int new_cap) const;

  /// Series divided by Theta^k. Throws invariant_violation if any coefficient
  /// below power k is nonzero. Result cap = cap - k.
  TruncatedSeries divided_by_power(int k) const;

  /// Horner evaluation; converts each coefficient to double once per call.
  double eval(double theta) const;
  std::vector<double> to_doubles() const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { a += b; return a; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { a -= b; return a; }
  /// Product truncated at min(a.cap, b.cap).
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const Rational& s, const TruncatedSeries& a);
  TruncatedSeries& scale(const Rational& s);

  /// Equality up to the smaller cap, with identical rationals.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

 private:
  std::vector<Rational> coeffs_;  // size cap+1
};

/// Exact series of integral_0^Theta a(Theta-phi) * w(phi) dphi, truncated at
/// `cap`: each coefficient pair (i, j) contributes
/// a_i * w_j * i! j!/(i+j+1)! at power i+j+1.
TruncatedSeries series_convolve(const TruncatedSeries& a, const TruncatedSeries& w, int cap);

enum class TrigKind { cos_sq_2phi, sin_sq_2phi, cos_4phi, sin_4phi };

/// Exact rational Taylor coefficients about 0, truncated at `cap`.
TruncatedSeries taylor_trig(TrigKind kind, int cap);

}  // namespace groverpt
