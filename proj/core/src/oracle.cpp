#include "groverpt/oracle.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <vector>

#include "groverpt/grover_sim.hpp"

namespace groverpt {

namespace {

/// Sum over alpha in {0,1}^k of |T_alpha(phis)|^2 at the given point.
double diagram_integrand(int k, const double* phis, double theta) {
  double rest = theta;
  for (int s = 0; s < k; ++s) rest -= phis[s];
  double total = 0.0;
  for (unsigned mask = 0; mask < (1U << k); ++mask) {
    // phi_1: alpha=0 -> sin, alpha=1 -> cos (reversed roles)
    double term = (mask & 1U) ? std::cos(2.0 * phis[0]) : std::sin(2.0 * phis[0]);
    for (int s = 1; s < k; ++s) {
      term *= ((mask >> s) & 1U) ? std::sin(2.0 * phis[s]) : std::cos(2.0 * phis[s]);
    }
    term *= (std::popcount(mask) & 1U) ? std::sin(2.0 * rest) : std::cos(2.0 * rest);
    total += term * term;
  }
  return total;
}

struct AdaptiveSimpson {
  const std::function<double(double)>& f;
  double tol;
  int max_depth;
  double err_accum = 0.0;

  double run(double a, double b) {
    const double c = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fc = f(c);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
    return recurse(a, b, fa, fb, fc, whole, tol, 0);
  }

  double recurse(double a, double b, double fa, double fb, double fc, double whole, double tol_here,
                 int depth) {
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (a + c);
    const double e = 0.5 * (c + b);
    const double fd = f(d), fe = f(e);
    const double left = (c - a) / 6.0 * (fa + 4.0 * fd + fc);
    const double right = (b - c) / 6.0 * (fc + 4.0 * fe + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol_here || (b - a) < 1e-14) {
      err_accum += std::abs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    if (depth >= max_depth)
      throw quadrature_error("adaptive Simpson hit the recursion cap", std::abs(delta) / 15.0 + err_accum);
    return recurse(a, c, fa, fc, fd, left, 0.5 * tol_here, depth + 1) +
           recurse(c, b, fc, fb, fe, right, 0.5 * tol_here, depth + 1);
  }
};

}  // namespace

QuadResult direct_Fk_quadrature_detailed(const QuadratureSpec& spec) {
  if (spec.k < 1 || spec.k > 3)
    throw std::invalid_argument("direct_Fk_quadrature: k must be in {1, 2, 3}");
  if (!(spec.theta > 0.0 && spec.theta <= 3.14159265358979323846 + 1e-12))
    throw std::invalid_argument("direct_Fk_quadrature: theta must be in (0, pi]");
  if (!(spec.tol > 0.0)) throw std::invalid_argument("direct_Fk_quadrature: tol must be > 0");

  const double theta = spec.theta;
  const int k = spec.k;
  // Per-level budgets: level i (outermost = 0) integrates a function whose
  // inner error was already bounded, so inner levels get tighter tolerances.
  const double span = std::max(1.0, theta);
  std::vector<double> level_tol(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) level_tol[static_cast<size_t>(i)] = spec.tol / (std::pow(2.0, i + 1) * std::pow(span, i));

  double phis[3] = {0.0, 0.0, 0.0};
  double outer_err = 0.0;

  // nested closure: integrates over phi_{level} on [0, theta - sum(previous)]
  std::function<double(int)> integrate_level = [&](int level) -> double {
    double upper = theta;
    for (int s = 0; s < level; ++s) upper -= phis[s];
    if (upper <= 0.0) return 0.0;
    std::function<double(double)> fn = [&, level](double phi) -> double {
      phis[level] = phi;
      if (level + 1 == k) return diagram_integrand(k, phis, theta);
      return integrate_level(level + 1);
    };
    AdaptiveSimpson quad{fn, level_tol[static_cast<size_t>(level)], spec.max_depth};
    const double v = quad.run(0.0, upper);
    if (level == 0) outer_err = quad.err_accum;
    return v;
  };

  const double raw = integrate_level(0);
  QuadResult r;
  r.value = raw / std::pow(theta, k);
  // outer panel estimate plus the total inner budget (conservative)
  r.error_estimate = (outer_err + 0.5 * spec.tol) / std::pow(theta, k);
  return r;
}

double direct_Fk_quadrature(const QuadratureSpec& spec) {
  return direct_Fk_quadrature_detailed(spec).value;
}

namespace {

constexpr int kStateVecQubitCap = 24;

/// amplitude^2 of |0...0> for (W R0)^{tail} sigma_z^(qubit) (W R0)^{head} W |0>,
/// with an exact power-of-two normalization fold.
double placed_error_prob(int n, int M, int head, int qubit) {
  const size_t dim = size_t{1} << n;
  std::vector<double> amp(dim, 0.0);
  amp[0] = 1.0;
  int w_count = 0;
  const auto apply_w = [&] {
    statevec::hadamard_all_unnormalized(amp);
    if (++w_count % 2 == 0) {
      const double f = std::ldexp(1.0, -n);
      for (double& a : amp) a *= f;
    }
  };
  apply_w();
  for (int j = 0; j < head; ++j) {
    statevec::phase_flip_zero(amp);
    apply_w();
  }
  statevec::sigma_z_mask(amp, std::uint64_t{1} << qubit);
  for (int j = 0; j < 2 * M - head; ++j) {
    statevec::phase_flip_zero(amp);
    apply_w();
  }
  const double a0 = amp[0];
  return a0 * a0 * std::ldexp(1.0, -n * (w_count % 2));
}

}  // namespace

double finite_n_T1_per_qubit(int n, int M, int qubit) {
  if (n < 2) throw std::invalid_argument("finite_n_T1_per_qubit: n must be >= 2");
  if (n > kStateVecQubitCap) throw memory_guard_error("finite_n_T1_per_qubit: n exceeds the state-vector cap");
  if (M < 1) throw std::invalid_argument("finite_n_T1_per_qubit: M must be >= 1");
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("finite_n_T1_per_qubit: bad qubit");
  double total = 0.0;
  for (int l = 0; l < 2 * M; ++l) total += placed_error_prob(n, M, l, qubit);
  // normalized by (Mn)^1 with the remaining factor n restored by the caller
  return total / M;  // = n * total / (M n)
}

double finite_n_Tk(int n, int M, int k) {
  if (n < 2) throw std::invalid_argument("finite_n_Tk: n must be >= 2");
  if (n > kStateVecQubitCap) throw memory_guard_error("finite_n_Tk: n exceeds the state-vector cap");
  if (M < 0) throw std::invalid_argument("finite_n_Tk: M must be >= 0");
  if (k == 0) {
    const size_t dim = size_t{1} << n;
    std::vector<double> amp(dim, 0.0);
    amp[0] = 1.0;
    int w_count = 0;
    const auto apply_w = [&] {
      statevec::hadamard_all_unnormalized(amp);
      if (++w_count % 2 == 0) {
        const double f = std::ldexp(1.0, -n);
        for (double& a : amp) a *= f;
      }
    };
    apply_w();
    for (int j = 0; j < 2 * M; ++j) {
      statevec::phase_flip_zero(amp);
      apply_w();
    }
    return amp[0] * amp[0] * std::ldexp(1.0, -n * (w_count % 2));
  }
  if (k == 1) {
    if (M < 1) throw std::invalid_argument("finite_n_Tk: k = 1 needs M >= 1");
    // all error qubits contribute identically (permutation symmetry)
    return finite_n_T1_per_qubit(n, M, 0);
  }
  throw std::invalid_argument("finite_n_Tk: k must be 0 or 1");
}

}  // namespace groverpt
