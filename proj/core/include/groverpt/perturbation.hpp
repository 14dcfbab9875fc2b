#pragma once

#include <vector>

#include "groverpt/recurrence.hpp"

namespace groverpt {

/// Dense polynomial with double coefficients, ascending powers.
struct DoublePoly {
  std::vector<double> coeffs;

  double operator()(double t) const {
    double acc = 0.0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * t + coeffs[i];
    return acc;
  }
  DoublePoly derivative() const {
    DoublePoly d;
    if (coeffs.size() <= 1) {
      d.coeffs = {0.0};
      return d;
    }
    d.coeffs.resize(coeffs.size() - 1);
    for (size_t i = 1; i < coeffs.size(); ++i) d.coeffs[i - 1] = static_cast<double>(i) * coeffs[i];
    return d;
  }
};

/// C_k = (-1)^k sum_{j=0}^{k} (-1/2)^j k!/(k-j)! F_j, exact rationals.
std::vector<TruncatedSeries> compute_C(const std::vector<TruncatedSeries>& F, int max_order);

/// Everything needed to evaluate the truncated success probability
///   pbar(Theta, x) = sum_{k=0}^{K} Cbar_k(Theta) x^k / k!
/// with K = 39 (default) and degree-40 polynomial truncations Cbar_k, plus
/// the order-(K+1) coefficient polynomial for the truncation-error bound.
class PerturbationTable {
 public:
  struct Options {
    int order = 39;                  // K: highest x-order used in pbar
    int degree = 40;                 // D: Theta-polynomial degree
    int closed_form_max_order = 10;  // ExpPoly forms kept for k <= this
  };

  static PerturbationTable build(const Options& opt);
  static PerturbationTable build() { return build(Options{}); }

  int order() const { return order_; }
  int degree() const { return degree_; }

  /// Exact objects, k = 0..order() (+1 for the bound order in F/C).
  const TruncatedSeries& F(int k) const { return F_.at(static_cast<size_t>(k)); }
  const TruncatedSeries& C(int k) const { return C_.at(static_cast<size_t>(k)); }
  int stored_orders() const { return static_cast<int>(C_.size()); }  // order()+2
  const std::optional<ClosedFormF>& F_closed(int k) const { return F_closed_.at(static_cast<size_t>(k)); }

  /// Float coefficient polynomials Cbar_k (same rationals, rounded once).
  const DoublePoly& Cbar(int k) const { return Cbar_.at(static_cast<size_t>(k)); }
  /// Cbar_{K+1}, the first dropped order.
  const DoublePoly& bound_poly() const { return Cbar_.back(); }

  struct Value {
    double value = 0.0;
    bool in_window = true;  // false when (theta, x) leaves the certified window
  };

  /// Truncated success probability; Horner in x of Horner-in-Theta rows.
  Value p_bar(double theta, double x) const;
  /// Partial derivative in Theta (precomputed derivative polynomials).
  Value p_bar_dtheta(double theta, double x) const;

  /// max over Theta in [0, theta_window_max] (grid step <= 1e-3 plus local
  /// golden-section refinement) of |Cbar_{K+1}(Theta) / (K+1)!|.
  double c40_bound() const;

  static constexpr double theta_window_max = 3.14159265358979323846;  // pi
  static constexpr double x_window_max = 10.0;
  static bool in_validity_window(double theta, double x) {
    return theta >= 0.0 && theta <= theta_window_max && x >= 0.0 && x <= x_window_max;
  }

 private:
  int order_ = 0;
  int degree_ = 0;
  std::vector<TruncatedSeries> F_;
  std::vector<std::optional<ClosedFormF>> F_closed_;
  std::vector<TruncatedSeries> C_;
  std::vector<DoublePoly> Cbar_;           // k = 0..order+1
  std::vector<DoublePoly> pbar_rows_;      // Cbar_k / k!, k = 0..order
  std::vector<DoublePoly> pbar_rows_dth_;  // their Theta-derivatives
};

}  // namespace groverpt
