#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "groverpt/perturbation.hpp"

namespace groverpt {

/// Raised when a root search fails to converge after the bisection fallback;
/// carries the iteration trace. Indicates a bug, not a user error.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SolverSettings {
  double newton_tol = 1e-10;      // residual tolerance on |pbar - p_th|
  int newton_max_iter = 50;
  double bisection_tol_x = 1e-6;  // absolute tolerance on x_c
  double theta_window_lo = 0.0;   // exclusive
  double theta_window_hi = 1.5707963267948966;  // pi/2, inclusive
  int scan_points = 400;          // coarse-scan resolution across the window

  void validate() const {
    if (newton_tol <= 0 || bisection_tol_x <= 0)
      throw std::invalid_argument("SolverSettings: tolerances must be > 0");
    if (newton_max_iter < 1) throw std::invalid_argument("SolverSettings: newton_max_iter must be >= 1");
    if (!(theta_window_lo >= 0) || !(theta_window_hi > theta_window_lo))
      throw std::invalid_argument("SolverSettings: bad theta window");
    if (scan_points < 16) throw std::invalid_argument("SolverSettings: scan_points must be >= 16");
  }
};

/// Smallest Theta in the window with pbar(Theta, x) = p_th, to within the
/// residual tolerance; Newton from a bracketing scan with bisection fallback.
/// Empty iff the threshold is unattainable (max over the window < p_th).
std::optional<double> theta_th(const PerturbationTable& table, double x, double p_th,
                               const SolverSettings& settings = {});

struct PMax {
  double theta_star = 0.0;
  double p_star = 0.0;
};

/// Maximizer and maximum of pbar over the Theta window at fixed x:
/// coarse scan, golden-section narrowing, then a safeguarded secant polish on
/// the analytic Theta-derivative.
PMax p_max(const PerturbationTable& table, double x, const SolverSettings& settings = {});

/// Same, but first tries a local bracket around `hint_theta` (used by warm-
/// started sweeps); falls back to the full scan when the hint does not
/// bracket the maximum.
PMax p_max_hinted(const PerturbationTable& table, double x, double hint_theta,
                  const SolverSettings& settings = {});

struct XcResult {
  double x_c = 0.0;
  double theta_at_threshold = 0.0;
  bool saturated = false;  // x_c reached the certified window edge x = 10
};

/// Critical error budget sup{x in [0,10] : p_max(x) >= p_th}, by bisection on
/// p_max(x) - p_th; the bracket keeps p_max(lo) >= p_th > p_max(hi). Returns
/// 0 for p_th = 1 and the window edge with `saturated` set when the
/// threshold is still attainable at x = 10.
XcResult x_c(const PerturbationTable& table, double p_th, const SolverSettings& settings = {});

struct PhaseCurvePoint {
  double p_th = 0.0;
  double x_c = 0.0;
  double theta_at_threshold = 0.0;
  bool saturated = false;
};

/// Monotone-decreasing p_th schedule with a step that refines toward small
/// p_th: step(p) = clamp(coarse_step * p^gamma, fine_step, coarse_step),
/// where gamma is fixed by requiring step(refine_ref) = fine_step.
struct SweepSchedule {
  double p_th_start = 1.0;
  double p_th_end = 0.0037;
  double coarse_step = 5e-4;
  double fine_step = 5e-7;
  double refine_ref = 3.7e-3;

  double step_at(double p_th) const;
  std::vector<double> grid() const;
  void validate() const;
};

/// One PhaseCurvePoint per schedule grid value. Sequential mode warm-starts
/// each solve from the previous point; parallel mode solves every point from
/// a fresh bracket (thread count from GROVERPT_THREADS, default hardware).
std::vector<PhaseCurvePoint> phase_curve(const PerturbationTable& table, const SweepSchedule& sweep,
                                         const SolverSettings& settings = {}, bool parallel = false);

}  // namespace groverpt
