#include "groverpt/exppoly.hpp"

#include <cmath>
#include <string>

namespace groverpt {

namespace {

bool valid_freq(int f) { return f == -4 || f == 0 || f == 4; }

Rational binomial(unsigned n, unsigned k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return Rational(b);
}

}  // namespace

ExpPoly ExpPoly::constant(const Rational& c) {
  ExpPoly p;
  p.add_term(0, 0, GaussianRational(c));
  return p;
}

ExpPoly ExpPoly::theta_power(int a, const Rational& c) {
  ExpPoly p;
  p.add_term(0, a, GaussianRational(c));
  return p;
}

ExpPoly ExpPoly::cos_4theta() {
  // cos 4T = (e^{4iT} + e^{-4iT}) / 2
  ExpPoly p;
  p.add_term(4, 0, GaussianRational(Rational(1, 2)));
  p.add_term(-4, 0, GaussianRational(Rational(1, 2)));
  return p;
}

ExpPoly ExpPoly::sin_4theta() {
  // sin 4T = (e^{4iT} - e^{-4iT}) / (2i)
  ExpPoly p;
  p.add_term(4, 0, GaussianRational(Rational(0), Rational(-1, 2)));
  p.add_term(-4, 0, GaussianRational(Rational(0), Rational(1, 2)));
  return p;
}

ExpPoly ExpPoly::sin_sq_2theta() {
  ExpPoly p = constant(Rational(1, 2));
  p.add_term(4, 0, GaussianRational(Rational(-1, 4)));
  p.add_term(-4, 0, GaussianRational(Rational(-1, 4)));
  return p;
}

ExpPoly ExpPoly::cos_sq_2theta() {
  ExpPoly p = constant(Rational(1, 2));
  p.add_term(4, 0, GaussianRational(Rational(1, 4)));
  p.add_term(-4, 0, GaussianRational(Rational(1, 4)));
  return p;
}

int ExpPoly::max_power() const {
  int m = 0;
  for (const auto& [key, c] : terms_) m = std::max(m, key.second);
  return m;
}

void ExpPoly::add_term(int freq, int power, const GaussianRational& c) {
  if (!valid_freq(freq))
    throw std::invalid_argument("ExpPoly: frequency must be -4, 0 or +4");
  if (power < 0) throw std::invalid_argument("ExpPoly: negative power");
  if (c.is_zero()) return;
  Key key{freq, power};
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

GaussianRational ExpPoly::coeff(int freq, int power) const {
  auto it = terms_.find(Key{freq, power});
  return it == terms_.end() ? GaussianRational() : it->second;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

ExpPoly& ExpPoly::scale(const Rational& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= GaussianRational(s);
  return *this;
}

bool ExpPoly::conjugate_symmetric() const {
  for (const auto& [key, c] : terms_) {
    if (key.first == 0) {
      if (!c.im.is_zero()) return false;
    } else if (coeff(-key.first, key.second) != c.conj()) {
      return false;
    }
  }
  return true;
}

void ExpPoly::check_real(const char* where) const {
  if (!conjugate_symmetric())
    throw internal_consistency_error(std::string(where) + ": conjugate-symmetry invariant violated");
}

TruncatedSeries ExpPoly::to_series(int cap) const {
  if (cap < 0) throw std::invalid_argument("ExpPoly::to_series: negative cap");
  std::vector<GaussianRational> acc(static_cast<size_t>(cap) + 1);
  for (const auto& [key, c] : terms_) {
    const auto [freq, power] = key;
    if (power > cap) continue;
    // c * T^power * e^{i freq T} = c * sum_j (i freq)^j / j! * T^{power+j}
    GaussianRational iw_pow{Rational(1)};
    const GaussianRational iw{Rational(0), Rational(freq)};
    for (int j = 0; power + j <= cap; ++j) {
      GaussianRational term = c * iw_pow;
      term.re /= factorial(static_cast<unsigned>(j));
      term.im /= factorial(static_cast<unsigned>(j));
      acc[static_cast<size_t>(power + j)] += term;
      iw_pow *= iw;
    }
  }
  TruncatedSeries s(cap);
  for (int i = 0; i <= cap; ++i) {
    if (!acc[static_cast<size_t>(i)].im.is_zero())
      throw internal_consistency_error("ExpPoly::to_series: residual imaginary coefficient at power " +
                                       std::to_string(i));
    s.set_coeff(i, acc[static_cast<size_t>(i)].re);
  }
  return s;
}

ExpPoly::TrigView ExpPoly::trig_view() const {
  check_real("ExpPoly::trig_view");
  TrigView v;
  for (const auto& [key, c] : terms_) {
    const auto [freq, power] = key;
    if (freq == 0) {
      v.poly[power] = c.re;
    } else if (freq == 4) {
      // c e^{4iT} + conj(c) e^{-4iT} = 2 re(c) cos 4T - 2 im(c) sin 4T
      if (!c.re.is_zero()) v.cos4[power] = Rational(2) * c.re;
      if (!c.im.is_zero()) v.sin4[power] = Rational(-2) * c.im;
    }
  }
  return v;
}

double ExpPoly::eval_naive(double theta, int divisor_power) const {
  double acc = 0.0;
  for (const auto& [key, c] : terms_) {
    const auto [freq, power] = key;
    const int p = power - divisor_power;
    double mono;
    if (theta == 0.0) {
      if (p < 0)
        throw std::domain_error("ExpPoly::eval_naive: negative power at theta = 0");
      mono = (p == 0) ? 1.0 : 0.0;
    } else {
      mono = std::pow(theta, p);
    }
    const double ang = static_cast<double>(freq) * theta;
    acc += (c.re.to_double() * std::cos(ang) - c.im.to_double() * std::sin(ang)) * mono;
  }
  return acc;
}

ExpPoly ep_convolve(const ExpPoly& a, const ExpPoly& w) {
  ExpPoly r;
  for (const auto& [ka, ca] : a.terms()) {
    const auto [alpha, m] = ka;
    for (const auto& [kw, cw] : w.terms()) {
      const auto [beta, l] = kw;
      const GaussianRational prod = ca * cw;
      if (alpha == beta) {
        // integral_0^T (T-phi)^m phi^l dphi = m! l!/(m+l+1)! T^{m+l+1}
        GaussianRational c = prod;
        const Rational bw = beta_weight(static_cast<unsigned>(m), static_cast<unsigned>(l));
        c.re *= bw;
        c.im *= bw;
        r.add_term(alpha, m + l + 1, c);
        continue;
      }
      // delta = i (beta - alpha) != 0; expand (T-phi)^m binomially, then
      // integral_0^T phi^s e^{delta phi} dphi
      //   = e^{delta T} sum_{t=0}^{s} (-1)^{s-t} (s!/t!) T^t delta^{t-s-1}
      //     - (-1)^s s! delta^{-s-1}.
      // The e^{delta T} part lands at frequency beta, the rest at alpha.
      const GaussianRational dinv = GaussianRational(Rational(0), Rational(beta - alpha)).inverse();
      for (int rr = 0; rr <= m; ++rr) {
        const int s = rr + l;
        Rational pref = binomial(static_cast<unsigned>(m), static_cast<unsigned>(rr));
        if (rr % 2) pref = -pref;
        // delta^{-(s+1)} down to delta^{-1}, built once from the top power.
        std::vector<GaussianRational> dinv_pow(static_cast<size_t>(s) + 2);
        dinv_pow[1] = dinv;
        for (int e = 2; e <= s + 1; ++e) dinv_pow[static_cast<size_t>(e)] = dinv_pow[static_cast<size_t>(e - 1)] * dinv;
        for (int t = 0; t <= s; ++t) {
          Rational f = Rational(factorial_int(static_cast<unsigned>(s)), factorial_int(static_cast<unsigned>(t)));
          if ((s - t) % 2) f = -f;
          GaussianRational c = prod * dinv_pow[static_cast<size_t>(s + 1 - t)];
          c.re *= pref * f;
          c.im *= pref * f;
          r.add_term(beta, m - rr + t, c);
        }
        Rational f0 = Rational(factorial_int(static_cast<unsigned>(s)));
        if (s % 2 == 0) f0 = -f0;  // minus (-1)^s s!
        GaussianRational c0 = prod * dinv_pow[static_cast<size_t>(s + 1)];
        c0.re *= pref * f0;
        c0.im *= pref * f0;
        r.add_term(alpha, m - rr, c0);
      }
    }
  }
  r.check_real("ep_convolve");
  return r;
}

ExpPoly::TrigView ClosedFormF::trig_view() const {
  ExpPoly::TrigView v = numerator.trig_view();
  ExpPoly::TrigView out;
  for (const auto& [p, c] : v.poly) out.poly[p - divisor] = c;
  for (const auto& [p, c] : v.cos4) out.cos4[p - divisor] = c;
  for (const auto& [p, c] : v.sin4) out.sin4[p - divisor] = c;
  return out;
}

Rational ClosedFormF::eval_quarter_pi_exact() const {
  numerator.check_real("ClosedFormF::eval_quarter_pi_exact");
  // e^{+-4i Theta} = -1 at Theta = pi/4, so each power collects
  // c0(a) - 2 re(c+(a)); the result is rational only if the substituted
  // polynomial is the single monomial Theta^divisor.
  std::map<int, Rational> s;
  for (const auto& [key, c] : numerator.terms()) {
    const auto [freq, power] = key;
    Rational& slot = s[power];
    if (freq == 0)
      slot += c.re;
    else
      slot -= c.re;  // each of e^{+-4i} contributes -re (+-im parts cancel)
  }
  Rational value(0);
  for (const auto& [power, c] : s) {
    if (c.is_zero()) continue;
    if (power != divisor)
      throw internal_consistency_error(
          "ClosedFormF::eval_quarter_pi_exact: value depends on pi (power " + std::to_string(power) + ")");
    value = c;
  }
  return value;
}

}  // namespace groverpt
