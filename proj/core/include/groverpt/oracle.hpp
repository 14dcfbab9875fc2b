#pragma once

#include <stdexcept>

namespace groverpt {

/// Raised when adaptive quadrature hits its recursion cap before reaching the
/// requested tolerance; carries the running error estimate.
struct quadrature_error : std::runtime_error {
  double error_estimate;
  explicit quadrature_error(const std::string& what, double estimate)
      : std::runtime_error(what), error_estimate(estimate) {}
};

/// Brute-force evaluation of F_k(theta) as the k-fold nested integral over
/// the simplex {phi_s >= 0, sum phi_s <= theta} of the 2^k squared terms:
/// phi_1 carries sin/cos roles reversed relative to phi_2..phi_k, and the
/// last factor's sin/cos choice follows the parity of the index bits.
/// Deliberately independent of the recurrence pipeline; k is capped at 3
/// because the term count and nesting depth grow exponentially.
struct QuadratureSpec {
  int k = 1;              // 1..3
  double theta = 0.785398163397448309616;  // pi/4
  double tol = 1e-8;      // absolute tolerance
  int max_depth = 30;     // adaptive-Simpson recursion cap per level
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

QuadResult direct_Fk_quadrature_detailed(const QuadratureSpec& spec);
double direct_Fk_quadrature(const QuadratureSpec& spec);

/// Exact finite-n <0|T_k^(M)|0> / (Mn)^k by explicit error-placement sums,
/// one state-vector run per placement. k = 0 or 1 (the i-sum collapses to a
/// factor n by qubit-permutation symmetry).
double finite_n_Tk(int n, int M, int k);

/// k = 1 contribution of a single error qubit (no symmetry collapse);
/// equals finite_n_Tk(n, M, 1) for every qubit.
double finite_n_T1_per_qubit(int n, int M, int qubit);

}  // namespace groverpt
