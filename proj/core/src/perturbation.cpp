#include "groverpt/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace groverpt {

std::vector<TruncatedSeries> compute_C(const std::vector<TruncatedSeries>& F, int max_order) {
  if (max_order < 0 || F.size() < static_cast<size_t>(max_order) + 1)
    throw std::invalid_argument("compute_C: need F_j for j = 0..max_order");
  const int cap = F[0].cap();
  std::vector<TruncatedSeries> C;
  C.reserve(static_cast<size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) {
    TruncatedSeries ck(cap);
    for (int j = 0; j <= k; ++j) {
      // (-1)^k (-1/2)^j k!/(k-j)!
      Rational w(factorial_int(static_cast<unsigned>(k)), factorial_int(static_cast<unsigned>(k - j)));
      if (j % 2) w = -w;
      if (k % 2) w = -w;
      mpz_class half;
      mpz_ui_pow_ui(half.get_mpz_t(), 2, static_cast<unsigned long>(j));
      w /= Rational(half);
      ck += w * F[static_cast<size_t>(j)];
    }
    C.push_back(std::move(ck));
  }
  return C;
}

PerturbationTable PerturbationTable::build(const Options& opt) {
  if (opt.order < 0) throw std::invalid_argument("PerturbationTable: order must be >= 0");
  PerturbationTable t;
  t.order_ = opt.order;
  t.degree_ = opt.degree;

  FgOptions fg_opt;
  fg_opt.max_order = opt.order + 1;  // one extra order for the error bound
  fg_opt.degree = opt.degree;
  fg_opt.closed_form_max_order = opt.closed_form_max_order;
  const std::vector<OrderPair> orders = compute_fg(fg_opt);

  for (const OrderPair& pair : orders) {
    FOrder fo = F_of(pair);
    t.F_.push_back(std::move(fo.series));
    t.F_closed_.push_back(std::move(fo.closed));
  }
  t.C_ = compute_C(t.F_, opt.order + 1);

  if (t.C_[0] != t.F_[0])
    throw internal_consistency_error("PerturbationTable: C_0 != F_0");
  for (int k = 0; k < static_cast<int>(t.C_.size()); ++k) {
    const TruncatedSeries& ck = t.C_[static_cast<size_t>(k)];
    if (!ck.coeff(0).is_zero())
      throw internal_consistency_error("PerturbationTable: C_k(0) != 0");
    for (int i = 1; i <= ck.cap(); i += 2)
      if (!ck.coeff(i).is_zero())
        throw internal_consistency_error("PerturbationTable: odd power in C_k");
  }

  for (int k = 0; k < static_cast<int>(t.C_.size()); ++k) {
    DoublePoly p;
    p.coeffs = t.C_[static_cast<size_t>(k)].to_doubles();
    t.Cbar_.push_back(p);
    if (k <= t.order_) {
      // Row polynomials Cbar_k / k!; the division happens in exact rationals
      // so no intermediate float overflow or rounding enters.
      const Rational inv_fact = Rational(1) / factorial(static_cast<unsigned>(k));
      TruncatedSeries scaled = inv_fact * t.C_[static_cast<size_t>(k)];
      DoublePoly row;
      row.coeffs = scaled.to_doubles();
      t.pbar_rows_dth_.push_back(row.derivative());
      t.pbar_rows_.push_back(std::move(row));
    }
  }
  return t;
}

PerturbationTable::Value PerturbationTable::p_bar(double theta, double x) const {
  if (!std::isfinite(theta) || !std::isfinite(x))
    throw std::invalid_argument("p_bar: non-finite input");
  double acc = 0.0;
  for (size_t k = pbar_rows_.size(); k-- > 0;) acc = acc * x + pbar_rows_[k](theta);
  return {acc, in_validity_window(theta, x)};
}

PerturbationTable::Value PerturbationTable::p_bar_dtheta(double theta, double x) const {
  if (!std::isfinite(theta) || !std::isfinite(x))
    throw std::invalid_argument("p_bar_dtheta: non-finite input");
  double acc = 0.0;
  for (size_t k = pbar_rows_dth_.size(); k-- > 0;) acc = acc * x + pbar_rows_dth_[k](theta);
  return {acc, in_validity_window(theta, x)};
}

double PerturbationTable::c40_bound() const {
  const DoublePoly& poly = bound_poly();
  double inv_fact = 1.0;
  for (int i = 2; i <= order_ + 1; ++i) inv_fact /= static_cast<double>(i);
  const auto val = [&](double t) { return std::abs(poly(t) * inv_fact); };

  const int n_grid = 3200;  // step ~9.8e-4 over [0, pi]
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i <= n_grid; ++i) {
    const double t = theta_window_max * static_cast<double>(i) / n_grid;
    const double v = val(t);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  // local golden-section refinement around the best grid point
  double a = theta_window_max * static_cast<double>(std::max(0, best_i - 1)) / n_grid;
  double b = theta_window_max * static_cast<double>(std::min(n_grid, best_i + 1)) / n_grid;
  const double gr = 0.6180339887498949;
  for (int it = 0; it < 80; ++it) {
    const double c1 = b - gr * (b - a);
    const double c2 = a + gr * (b - a);
    if (val(c1) < val(c2))
      a = c1;
    else
      b = c2;
  }
  return std::max(best, val(0.5 * (a + b)));
}

}  // namespace groverpt
