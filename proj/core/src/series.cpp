#include "groverpt/series.hpp"

#include <cmath>
#include <mutex>

namespace groverpt {

const mpz_class& factorial_int(unsigned n) {
  static std::mutex mu;
  static std::vector<mpz_class> table{1_mpz};
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    table.push_back(table.back() * static_cast<unsigned long>(table.size()));
  }
  return table[n];
}

Rational beta_weight(unsigned i, unsigned j) {
  return Rational(factorial_int(i) * factorial_int(j), factorial_int(i + j + 1));
}

TruncatedSeries::TruncatedSeries(int cap) {
  if (cap < 0) throw std::invalid_argument("TruncatedSeries: negative cap");
  coeffs_.assign(static_cast<size_t>(cap) + 1, Rational(0));
}

TruncatedSeries TruncatedSeries::constant(Rational value, int cap) {
  TruncatedSeries s(cap);
  s.coeffs_[0] = std::move(value);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(Rational coeff, int power, int cap) {
  TruncatedSeries s(cap);
  if (power < 0 || power > cap)
    throw std::invalid_argument("TruncatedSeries::monomial: power out of range");
  s.coeffs_[static_cast<size_t>(power)] = std::move(coeff);
  return s;
}

const Rational& TruncatedSeries::coeff(int power) const {
  if (power < 0 || power > cap())
    throw std::out_of_range("TruncatedSeries::coeff: power out of range");
  return coeffs_[static_cast<size_t>(power)];
}

void TruncatedSeries::set_coeff(int power, Rational value) {
  if (power < 0 || power > cap())
    throw std::out_of_range("TruncatedSeries::set_coeff: power out of range");
  coeffs_[static_cast<size_t>(power)] = std::move(value);
}

int TruncatedSeries::first_nonzero() const {
  for (int i = 0; i <= cap(); ++i)
    if (!coeffs_[static_cast<size_t>(i)].is_zero()) return i;
  return -1;
}

TruncatedSeries TruncatedSeries::truncated(int new_cap) const {
  if (new_cap < 0 || new_cap > cap())
    throw std::invalid_argument("TruncatedSeries::truncated: cap out of range");
  TruncatedSeries s(new_cap);
  for (int i = 0; i <= new_cap; ++i) s.coeffs_[static_cast<size_t>(i)] = coeffs_[static_cast<size_t>(i)];
  return s;
}

TruncatedSeries TruncatedSeries::divided_by_power(int k) const {
  if (k < 0 || k > cap())
    throw std::invalid_argument("TruncatedSeries::divided_by_power: bad power");
  for (int i = 0; i < k; ++i) {
    if (!coeffs_[static_cast<size_t>(i)].is_zero())
      throw invariant_violation("divided_by_power: nonzero coefficient below power " + std::to_string(k));
  }
  TruncatedSeries s(cap() - k);
  for (int i = k; i <= cap(); ++i) s.coeffs_[static_cast<size_t>(i - k)] = coeffs_[static_cast<size_t>(i)];
  return s;
}

double TruncatedSeries::eval(double theta) const {
  if (!std::isfinite(theta)) throw std::invalid_argument("TruncatedSeries::eval: non-finite theta");
  double acc = 0.0;
  for (int i = cap(); i >= 0; --i) acc = acc * theta + coeffs_[static_cast<size_t>(i)].to_double();
  return acc;
}

std::vector<double> TruncatedSeries::to_doubles() const {
  std::vector<double> out(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) out[i] = coeffs_[i].to_double();
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  if (cap() != o.cap())
    throw std::invalid_argument("TruncatedSeries: cap mismatch in add");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  if (cap() != o.cap())
    throw std::invalid_argument("TruncatedSeries: cap mismatch in sub");
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int cap = std::min(a.cap(), b.cap());
  TruncatedSeries r(cap);
  for (int i = 0; i <= std::min(a.cap(), cap); ++i) {
    const Rational& ai = a.coeffs_[static_cast<size_t>(i)];
    if (ai.is_zero()) continue;
    for (int j = 0; i + j <= cap && j <= b.cap(); ++j) {
      const Rational& bj = b.coeffs_[static_cast<size_t>(j)];
      if (bj.is_zero()) continue;
      r.coeffs_[static_cast<size_t>(i + j)] += ai * bj;
    }
  }
  return r;
}

TruncatedSeries operator*(const Rational& s, const TruncatedSeries& a) {
  TruncatedSeries r = a;
  r.scale(s);
  return r;
}

TruncatedSeries& TruncatedSeries::scale(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int m = std::min(a.cap(), b.cap());
  for (int i = 0; i <= m; ++i)
    if (a.coeffs_[static_cast<size_t>(i)] != b.coeffs_[static_cast<size_t>(i)]) return false;
  return true;
}

TruncatedSeries series_convolve(const TruncatedSeries& a, const TruncatedSeries& w, int cap) {
  if (cap < 1) throw std::invalid_argument("series_convolve: cap must be >= 1");
  TruncatedSeries r(cap);
  for (int i = 0; i <= a.cap() && i + 1 <= cap; ++i) {
    const Rational& ai = a.coeff(i);
    if (ai.is_zero()) continue;
    for (int j = 0; j <= w.cap() && i + j + 1 <= cap; ++j) {
      const Rational& wj = w.coeff(j);
      if (wj.is_zero()) continue;
      r.set_coeff(i + j + 1, r.coeff(i + j + 1) +
                                 ai * wj * beta_weight(static_cast<unsigned>(i), static_cast<unsigned>(j)));
    }
  }
  return r;
}

TruncatedSeries taylor_trig(TrigKind kind, int cap) {
  if (cap < 0) throw std::invalid_argument("taylor_trig: negative cap");
  TruncatedSeries s(cap);
  switch (kind) {
    case TrigKind::cos_4phi:
      // cos 4phi = sum_m (-1)^m (4phi)^(2m) / (2m)!
      for (int m = 0; 2 * m <= cap; ++m) {
        mpz_class num;
        mpz_ui_pow_ui(num.get_mpz_t(), 4, static_cast<unsigned long>(2 * m));
        if (m % 2) num = -num;
        s.set_coeff(2 * m, Rational(num, factorial_int(static_cast<unsigned>(2 * m))));
      }
      break;
    case TrigKind::sin_4phi:
      for (int m = 0; 2 * m + 1 <= cap; ++m) {
        mpz_class num;
        mpz_ui_pow_ui(num.get_mpz_t(), 4, static_cast<unsigned long>(2 * m + 1));
        if (m % 2) num = -num;
        s.set_coeff(2 * m + 1, Rational(num, factorial_int(static_cast<unsigned>(2 * m + 1))));
      }
      break;
    case TrigKind::cos_sq_2phi: {
      // cos^2 2phi = (1 + cos 4phi)/2
      TruncatedSeries c = taylor_trig(TrigKind::cos_4phi, cap);
      s = TruncatedSeries::constant(1, cap);
      s += c;
      s.scale(Rational(1, 2));
      break;
    }
    case TrigKind::sin_sq_2phi: {
      // sin^2 2phi = (1 - cos 4phi)/2
      TruncatedSeries c = taylor_trig(TrigKind::cos_4phi, cap);
      s = TruncatedSeries::constant(1, cap);
      s -= c;
      s.scale(Rational(1, 2));
      break;
    }
  }
  return s;
}

}  // namespace groverpt
