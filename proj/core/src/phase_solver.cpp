#include "groverpt/phase_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "thread_env.hpp"

namespace groverpt {

namespace {

constexpr double kGolden = 0.6180339887498949;

double scan_point(const SolverSettings& s, int i) {
  // grid over (lo, hi]: lo is exclusive, so start one step in
  const double step = (s.theta_window_hi - s.theta_window_lo) / s.scan_points;
  return s.theta_window_lo + step * (i + 1);
}

/// Secant iteration on dp/dTheta inside a bracket [a, b] with
/// dp(a) >= 0 >= dp(b); bisection safeguard.
double polish_max(const PerturbationTable& table, double x, double a, double b, double da, double db) {
  double t = 0.5 * (a + b);
  double prev_t = a, prev_d = da;
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, b); ++it) {
    double d = table.p_bar_dtheta(t, x).value;
    if (d == 0.0) return t;
    if (d > 0)
      a = t;
    else
      b = t;
    double next;
    const double denom = d - prev_d;
    if (denom != 0.0) {
      next = t - d * (t - prev_t) / denom;
    } else {
      next = 0.5 * (a + b);
    }
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    prev_t = t;
    prev_d = d;
    t = next;
  }
  return 0.5 * (a + b);
}

PMax max_in_bracket(const PerturbationTable& table, double x, double a, double b) {
  double da = table.p_bar_dtheta(a, x).value;
  double db = table.p_bar_dtheta(b, x).value;
  double t;
  if (da >= 0.0 && db <= 0.0) {
    t = polish_max(table, x, a, b, da, db);
  } else {
    // no derivative sign change (edge maximum or flat); golden section
    for (int it = 0; it < 90 && b - a > 1e-14 * std::max(1.0, b); ++it) {
      const double c1 = b - kGolden * (b - a);
      const double c2 = a + kGolden * (b - a);
      if (table.p_bar(c1, x).value < table.p_bar(c2, x).value)
        a = c1;
      else
        b = c2;
    }
    t = 0.5 * (a + b);
  }
  return {t, table.p_bar(t, x).value};
}

}  // namespace

PMax p_max(const PerturbationTable& table, double x, const SolverSettings& settings) {
  settings.validate();
  if (!(x >= 0.0)) throw std::invalid_argument("p_max: x must be >= 0");
  int best_i = 0;
  double best_v = -1.0;
  for (int i = 0; i < settings.scan_points; ++i) {
    const double v = table.p_bar(scan_point(settings, i), x).value;
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double a = (best_i == 0) ? settings.theta_window_lo + 1e-12 : scan_point(settings, best_i - 1);
  const double b = (best_i == settings.scan_points - 1) ? scan_point(settings, best_i)
                                                        : scan_point(settings, best_i + 1);
  PMax pm = max_in_bracket(table, x, a, b);
  if (best_v > pm.p_star) pm = {scan_point(settings, best_i), best_v};
  return pm;
}

PMax p_max_hinted(const PerturbationTable& table, double x, double hint_theta,
                  const SolverSettings& settings) {
  settings.validate();
  const double w = 0.02;
  const double a = std::max(settings.theta_window_lo + 1e-12, hint_theta - w);
  const double b = std::min(settings.theta_window_hi, hint_theta + w);
  if (a < b) {
    const double da = table.p_bar_dtheta(a, x).value;
    const double db = table.p_bar_dtheta(b, x).value;
    if (da >= 0.0 && db <= 0.0) {
      const double t = polish_max(table, x, a, b, da, db);
      return {t, table.p_bar(t, x).value};
    }
  }
  return p_max(table, x, settings);
}

std::optional<double> theta_th(const PerturbationTable& table, double x, double p_th,
                               const SolverSettings& settings) {
  settings.validate();
  if (!(p_th > 0.0 && p_th <= 1.0)) throw std::invalid_argument("theta_th: p_th must be in (0, 1]");
  if (!(x >= 0.0)) throw std::invalid_argument("theta_th: x must be >= 0");

  const PMax pm = p_max(table, x, settings);
  if (pm.p_star < p_th) return std::nullopt;
  // Tangency regime: the threshold is attained only at the peak.
  if (pm.p_star - p_th <= settings.newton_tol) return pm.theta_star;

  // First up-crossing: pbar -> 0 as Theta -> 0+, so bracket from the left.
  double a = std::min(1e-9, pm.theta_star * 0.5);
  double b = pm.theta_star;
  const double step = (pm.theta_star - settings.theta_window_lo) / settings.scan_points;
  for (int i = 0; i < settings.scan_points; ++i) {
    const double t = settings.theta_window_lo + step * (i + 1);
    if (table.p_bar(t, x).value >= p_th) {
      b = t;
      break;
    }
    a = t;
  }

  std::ostringstream trace;
  double t = 0.5 * (a + b);
  double h = table.p_bar(t, x).value - p_th;
  for (int it = 0; it < settings.newton_max_iter + 60; ++it) {
    if (std::abs(h) <= settings.newton_tol && (b - a) <= 1e-12 * std::max(1.0, t)) return t;
    double next;
    if (it < settings.newton_max_iter) {
      const double d = table.p_bar_dtheta(t, x).value;
      next = (d != 0.0) ? t - h / d : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
    } else {
      next = 0.5 * (a + b);
    }
    if (h < 0)
      a = t;
    else
      b = t;
    t = next;
    h = table.p_bar(t, x).value - p_th;
    trace << "it=" << it << " t=" << t << " resid=" << h << "\n";
  }
  if (std::abs(h) <= settings.newton_tol) return t;
  throw solver_error("theta_th: no convergence after bisection fallback; trace:\n" + trace.str());
}

XcResult x_c(const PerturbationTable& table, double p_th, const SolverSettings& settings) {
  settings.validate();
  if (!(p_th > 0.0 && p_th <= 1.0)) throw std::invalid_argument("x_c: p_th must be in (0, 1]");
  if (p_th == 1.0) return {0.0, p_max(table, 0.0, settings).theta_star, false};

  PMax hi_pm = p_max(table, PerturbationTable::x_window_max, settings);
  if (hi_pm.p_star >= p_th) return {PerturbationTable::x_window_max, hi_pm.theta_star, true};

  double lo = 0.0, hi = PerturbationTable::x_window_max;
  PMax lo_pm = p_max(table, 0.0, settings);
  while (hi - lo > settings.bisection_tol_x) {
    const double mid = 0.5 * (lo + hi);
    const PMax pm = p_max_hinted(table, mid, lo_pm.theta_star, settings);
    if (pm.p_star >= p_th) {
      lo = mid;
      lo_pm = pm;
    } else {
      hi = mid;
    }
  }
  return {lo, lo_pm.theta_star, false};
}

double SweepSchedule::step_at(double p_th) const {
  const double gamma = std::log(coarse_step / fine_step) / std::log(p_th_start / refine_ref);
  const double s = coarse_step * std::pow(p_th / p_th_start, gamma);
  return std::clamp(s, fine_step, coarse_step);
}

void SweepSchedule::validate() const {
  if (!(p_th_start > p_th_end && p_th_end > 0.0 && p_th_start <= 1.0))
    throw std::invalid_argument("SweepSchedule: need 0 < p_th_end < p_th_start <= 1");
  if (!(coarse_step > 0 && fine_step > 0 && fine_step <= coarse_step))
    throw std::invalid_argument("SweepSchedule: need 0 < fine_step <= coarse_step");
  if (!(refine_ref > 0 && refine_ref < p_th_start))
    throw std::invalid_argument("SweepSchedule: refine_ref must be in (0, p_th_start)");
}

std::vector<double> SweepSchedule::grid() const {
  validate();
  std::vector<double> g;
  double p = p_th_start;
  while (p >= p_th_end - 1e-15) {
    g.push_back(p);
    p -= step_at(p);
  }
  return g;
}

std::vector<PhaseCurvePoint> phase_curve(const PerturbationTable& table, const SweepSchedule& sweep,
                                         const SolverSettings& settings, bool parallel) {
  settings.validate();
  const std::vector<double> grid = sweep.grid();
  std::vector<PhaseCurvePoint> out(grid.size());

  if (parallel) {
    const int n_threads = detail::thread_count_from_env();
    std::vector<std::thread> workers;
    std::atomic<size_t> next{0};
    for (int w = 0; w < n_threads; ++w) {
      workers.emplace_back([&] {
        for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) {
          const XcResult r = x_c(table, grid[i], settings);
          out[i] = {grid[i], r.x_c, r.theta_at_threshold, r.saturated};
        }
      });
    }
    for (auto& t : workers) t.join();
    return out;
  }

  // Sequential: warm-start each solve from the previous point. The bracket
  // invariant p_max(lo) >= p_th > p_max(hi) is preserved because p_th only
  // decreases along the sweep.
  double lo = 0.0;
  double theta_hint = std::numbers::pi / 4;
  double width_hint = 1e-3;
  bool saturated = false;
  PMax sat_pm{};
  for (size_t i = 0; i < grid.size(); ++i) {
    const double p_th = grid[i];
    if (saturated) {
      out[i] = {p_th, PerturbationTable::x_window_max, sat_pm.theta_star, true};
      continue;
    }
    if (p_th == 1.0) {
      const PMax pm = p_max(table, 0.0, settings);
      theta_hint = pm.theta_star;
      out[i] = {p_th, 0.0, pm.theta_star, false};
      continue;
    }
    // expand the bracket upward from the previous x_c
    double w = std::max(8.0 * settings.bisection_tol_x, 2.0 * width_hint);
    double hi = lo + w;
    PMax lo_pm = p_max_hinted(table, lo, theta_hint, settings);
    PMax hi_pm{};
    bool hi_found = false;
    while (hi < PerturbationTable::x_window_max) {
      hi_pm = p_max_hinted(table, hi, theta_hint, settings);
      if (hi_pm.p_star < p_th) {
        hi_found = true;
        break;
      }
      lo = hi;
      lo_pm = hi_pm;
      w *= 2.0;
      hi = std::min(PerturbationTable::x_window_max, lo + w);
    }
    if (!hi_found) {
      hi_pm = p_max_hinted(table, PerturbationTable::x_window_max, theta_hint, settings);
      if (hi_pm.p_star >= p_th) {
        saturated = true;
        sat_pm = hi_pm;
        out[i] = {p_th, PerturbationTable::x_window_max, sat_pm.theta_star, true};
        continue;
      }
      hi = PerturbationTable::x_window_max;
    }
    const double start_width = hi - lo;
    while (hi - lo > settings.bisection_tol_x) {
      const double mid = 0.5 * (lo + hi);
      const PMax pm = p_max_hinted(table, mid, lo_pm.theta_star, settings);
      if (pm.p_star >= p_th) {
        lo = mid;
        lo_pm = pm;
      } else {
        hi = mid;
      }
    }
    theta_hint = lo_pm.theta_star;
    width_hint = std::max(settings.bisection_tol_x, 0.5 * start_width);
    out[i] = {p_th, lo, lo_pm.theta_star, false};
  }
  return out;
}

}  // namespace groverpt
