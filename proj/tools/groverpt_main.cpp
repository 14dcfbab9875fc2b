// groverpt: perturbative success probabilities for Grover search under
// per-qubit dephasing, the critical error-budget curve x_c(P_th), and the
// matching finite-n simulators. Emits CSV (curves, grids) and JSON (reports);
// every output carries its run manifest.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "groverpt/grover_sim.hpp"
#include "groverpt/oracle.hpp"
#include "groverpt/perturbation.hpp"
#include "groverpt/phase_solver.hpp"
#include "groverpt/serialize.hpp"

namespace {

using nlohmann::json;
using namespace groverpt;

// Exit codes, also listed in --help and the README.
constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBadRange = 3;
constexpr int kExitMemoryGuard = 4;
constexpr int kExitIo = 5;
constexpr int kExitInternal = 70;

struct RangeSpec {
  double lo = 0.0, hi = 0.0, step = 0.0;
};

RangeSpec parse_range(const std::string& text) {
  RangeSpec r;
  char extra;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &r.lo, &r.hi, &r.step, &extra) != 3 || r.step <= 0.0 ||
      r.hi < r.lo) {
    throw std::range_error("range must be lo:hi:step with step > 0 and hi >= lo (got '" + text + "')");
  }
  return r;
}

std::vector<double> expand(const RangeSpec& r) {
  std::vector<double> v;
  for (double x = r.lo; x <= r.hi + 0.5 * r.step * 1e-9 + 1e-15; x += r.step) v.push_back(x);
  return v;
}

/// Manifest without the wall-clock duration: embedded in the CSV header so
/// deterministic reruns stay byte-identical. The sidecar adds the duration.
json manifest_base(const std::string& command, const json& params,
                   const std::vector<std::string>& outputs) {
  json m;
  m["command"] = command;
  m["params"] = params;
  m["version"] = GROVERPT_VERSION;
  m["outputs"] = outputs;
  return m;
}

void write_atomic(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string());
    out << body;
    if (!out) throw std::ios_base::failure("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_with_manifest(const std::string& path, const json& manifest, const std::string& body,
                         std::chrono::steady_clock::time_point started) {
  std::string csv = "# manifest: " + manifest.dump() + "\n" + body;
  write_atomic(path, csv);
  json side = manifest;
  side["duration_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started)
          .count();
  write_atomic(path + ".manifest.json", side.dump(2) + "\n");
}

// ---------------------------------------------------------------- coeffs ---

int cmd_coeffs(int order, int degree, bool closed_form, const std::string& out_path,
               const std::string& format) {
  const auto t0 = std::chrono::steady_clock::now();
  PerturbationTable::Options opt;
  opt.order = order;
  opt.degree = degree;
  const PerturbationTable table = PerturbationTable::build(opt);

  json params{{"order", order}, {"degree", degree}, {"closed_form", closed_form}, {"format", format}};
  std::vector<std::string> outputs{out_path};
  std::string closed_path;
  if (closed_form) {
    closed_path = out_path + ".closed.json";
    outputs.push_back(closed_path);
  }
  const json manifest = manifest_base("coeffs", params, outputs);

  std::ostringstream body;
  if (format == "json") {
    json j;
    j["order"] = order;
    j["degree"] = degree;
    json c = json::array();
    json cbar = json::array();
    for (int k = 0; k <= order; ++k) {
      c.push_back(json::parse(series_to_json(table.C(k))));
      json row = json::array();
      for (double v : table.Cbar(k).coeffs) row.push_back(v);
      cbar.push_back(std::move(row));
    }
    j["C"] = std::move(c);
    j["Cbar"] = std::move(cbar);
    body << j.dump(2) << "\n";
  } else {
    body << "k,power,c_exact,cbar\n";
    for (int k = 0; k <= order; ++k) {
      const TruncatedSeries& ck = table.C(k);
      for (int i = 0; i <= ck.cap(); ++i) {
        body << k << ',' << i << ',' << ck.coeff(i).to_string() << ','
             << format_double(table.Cbar(k).coeffs[static_cast<size_t>(i)]) << "\n";
      }
    }
  }
  write_with_manifest(out_path, manifest, body.str(), t0);

  if (closed_form) {
    json arr = json::array();
    for (int k = 0; k < table.stored_orders(); ++k) {
      if (!table.F_closed(k)) continue;
      json entry;
      entry["k"] = k;
      entry["divisor"] = table.F_closed(k)->divisor;
      entry["terms"] = json::parse(exppoly_to_json(table.F_closed(k)->numerator));
      arr.push_back(std::move(entry));
    }
    json side = manifest;
    side["closed_forms"] = std::move(arr);
    write_atomic(closed_path, side.dump(2) + "\n");
  }
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

// ------------------------------------------------------------- pbar-grid ---

int cmd_pbar_grid(const std::string& theta_range, const std::string& x_range,
                  const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const RangeSpec tr = parse_range(theta_range);
  const RangeSpec xr = parse_range(x_range);
  const PerturbationTable table = PerturbationTable::build();

  json params{{"theta", theta_range}, {"x", x_range}};
  const json manifest = manifest_base("pbar-grid", params, {out_path});

  std::ostringstream body;
  body << "theta,x,pbar,in_window\n";
  for (double theta : expand(tr)) {
    for (double x : expand(xr)) {
      const auto v = table.p_bar(theta, x);
      body << format_double(theta) << ',' << format_double(x) << ',' << format_double(v.value) << ','
           << (v.in_window ? 1 : 0) << "\n";
    }
  }
  write_with_manifest(out_path, manifest, body.str(), t0);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

// ----------------------------------------------------------------- phase ---

int cmd_phase(double pth_start, double pth_end, const std::string& schedule, double linear_step,
              bool parallel, const std::string& out_path, const std::string& refs_path) {
  const auto t0 = std::chrono::steady_clock::now();
  SweepSchedule sweep;
  sweep.p_th_start = pth_start;
  sweep.p_th_end = pth_end;
  if (schedule == "linear") {
    sweep.coarse_step = linear_step;
    sweep.fine_step = linear_step;
  } else if (schedule != "fig2") {
    throw std::range_error("schedule must be fig2 or linear");
  }
  sweep.validate();

  const PerturbationTable table = PerturbationTable::build();
  const std::vector<PhaseCurvePoint> curve = phase_curve(table, sweep, SolverSettings{}, parallel);

  json params{{"pth_start", pth_start}, {"pth_end", pth_end},   {"schedule", schedule},
              {"linear_step", linear_step}, {"parallel", parallel}};
  std::vector<std::string> outputs{out_path};
  if (!refs_path.empty()) outputs.push_back(refs_path);
  const json manifest = manifest_base("phase", params, outputs);

  std::ostringstream body;
  body << "p_th,x_c,theta_at_threshold,saturated\n";
  for (const auto& pt : curve) {
    body << format_double(pt.p_th) << ',' << format_double(pt.x_c) << ','
         << format_double(pt.theta_at_threshold) << ',' << (pt.saturated ? 1 : 0) << "\n";
  }
  write_with_manifest(out_path, manifest, body.str(), t0);

  if (!refs_path.empty()) {
    std::ostringstream refs;
    refs << "p_th,tangent,log_bound\n";
    for (const auto& pt : curve) {
      refs << format_double(pt.p_th) << ',' << format_double(1.6 * (1.0 - pt.p_th)) << ','
           << format_double(-1.6 * std::log(pt.p_th)) << "\n";
    }
    write_with_manifest(refs_path, manifest, refs.str(), t0);
  }
  std::cout << "wrote " << out_path << " (" << curve.size() << " points)\n";
  return kExitOk;
}

// ------------------------------------------------------------- mc, exact ---

std::string steps_csv(const StepProbabilities& steps, int n) {
  std::ostringstream body;
  body << "M,theta,probability,stderr\n";
  for (size_t m = 0; m < steps.values.size(); ++m) {
    const ThetaX tx = map_finite_n(static_cast<int>(m), n, 0.0);
    const double se = steps.stderrs.empty() ? 0.0 : steps.stderrs[m];
    body << m << ',' << format_double(tx.theta) << ',' << format_double(steps.values[m]) << ','
         << format_double(se) << "\n";
  }
  return body.str();
}

int cmd_mc(const SimConfig& cfg, const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const StepProbabilities steps = mc_estimate(cfg);
  json params{{"n", cfg.n}, {"m", cfg.m_max}, {"p", cfg.p}, {"trials", cfg.trials}, {"seed", cfg.seed}};
  write_with_manifest(out_path, manifest_base("mc", params, {out_path}), steps_csv(steps, cfg.n), t0);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_exact(const SimConfig& cfg, const std::string& out_path) {
  const auto t0 = std::chrono::steady_clock::now();
  const StepProbabilities steps = run_exact_channel(cfg);
  json params{{"n", cfg.n}, {"m", cfg.m_max}, {"p", cfg.p}};
  write_with_manifest(out_path, manifest_base("exact", params, {out_path}), steps_csv(steps, cfg.n), t0);
  std::cout << "wrote " << out_path << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- validate ---

struct Check {
  std::string name;
  bool pass = false;
  double gap = 0.0;
  double tol = 0.0;
  std::string detail;
};

int cmd_validate(const std::string& report_path) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<Check> checks;
  const auto add = [&checks](std::string name, bool pass, double gap, double tol, std::string detail = "") {
    checks.push_back({std::move(name), pass, gap, tol, std::move(detail)});
  };

  const PerturbationTable table = PerturbationTable::build();

  // closed-form constants of F1, F2, F5
  {
    const auto v1 = table.F_closed(1)->trig_view();
    const bool ok1 = v1.poly.at(0) == Rational(1, 2) && v1.cos4.at(0) == Rational(-1, 4) &&
                     v1.sin4.at(-1) == Rational(-1, 16);
    add("closed_form_F1", ok1, 0, 0, "1/2 - (1/4)cos4T - (1/16T)sin4T");
    const auto v2 = table.F_closed(2)->trig_view();
    const bool ok2 = v2.poly.at(0) == Rational(1, 4) && v2.cos4.at(0) == Rational(-1, 16) &&
                     v2.sin4.at(-1) == Rational(-3, 64);
    add("closed_form_F2", ok2, 0, 0, "1/4 - (1/16)cos4T - (3/64T)sin4T");
    const auto v5 = table.F_closed(5)->trig_view();
    const bool ok5 = v5.poly.at(0) == Rational(1, 240) && v5.cos4.at(-4) == Rational(45, 1966080) &&
                     v5.cos4.at(-2) == Rational(720, 1966080) && v5.cos4.at(0) == Rational(-256, 1966080) &&
                     v5.sin4.at(-5) == Rational(-3, 524288) && v5.sin4.at(-3) == Rational(-32, 524288) &&
                     v5.sin4.at(-1) == Rational(-256, 524288);
    add("closed_form_F5", ok5, 0, 0, "constants 1/240; 45,720,-256/1966080; -3,-32,-256/524288");
  }

  // tangent coefficient
  {
    const Rational c1 = -(table.F_closed(0)->eval_quarter_pi_exact()) +
                        Rational(1, 2) * table.F_closed(1)->eval_quarter_pi_exact();
    add("C1_quarter_pi", c1 == Rational(-5, 8), 0, 0, "C1(pi/4) = " + c1.to_string());
  }

  // 40th-order bound
  {
    const double bound = table.c40_bound();
    add("c40_bound", bound <= 1.24e-50 * 1.05, bound, 1.24e-50 * 1.05);
  }

  // oracle triangle: quadrature vs series vs closed form
  const double quad_tol = 1e-7;
  for (int k = 1; k <= 3; ++k) {
    for (double theta : {0.3, std::numbers::pi / 4, 1.0}) {
      QuadratureSpec spec;
      spec.k = k;
      spec.theta = theta;
      spec.tol = 1e-8;
      const double q = direct_Fk_quadrature(spec);
      const double s = table.F(k).eval(theta);
      const double c = table.F_closed(k)->eval_naive(theta);
      add("triangle_quad_series_k" + std::to_string(k), std::abs(q - s) <= quad_tol, std::abs(q - s),
          quad_tol, "theta=" + std::to_string(theta));
      add("triangle_quad_closed_k" + std::to_string(k), std::abs(q - c) <= quad_tol, std::abs(q - c),
          quad_tol, "theta=" + std::to_string(theta));
    }
  }
  {
    QuadratureSpec spec;
    spec.k = 1;
    const double q1 = direct_Fk_quadrature(spec);
    add("quad_F1_quarter_pi", std::abs(q1 - 0.75) <= 1e-8, std::abs(q1 - 0.75), 1e-8);
    spec.k = 2;
    const double q2 = direct_Fk_quadrature(spec);
    add("quad_F2_quarter_pi", std::abs(q2 - 0.3125) <= 1e-8, std::abs(q2 - 0.3125), 1e-8);
  }

  // finite-n reference physics
  {
    const double t0v = finite_n_Tk(9, 17, 0);
    const double formula = std::pow(std::sin(35.0 * std::asin(std::pow(2.0, -4.5))), 2);
    add("finite_n_T0_917", std::abs(t0v - formula) <= 1e-12, std::abs(t0v - formula), 1e-12);

    double lo = 1e300, hi = -1e300;
    for (int q = 0; q < 4; ++q) {
      const double v = finite_n_T1_per_qubit(4, 3, q);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    add("finite_n_T1_symmetry", hi - lo <= 1e-14, hi - lo, 1e-14, "n=4, M=3");

    const ThetaX tx = map_finite_n(17, 9, 0.0);
    const double t1 = finite_n_Tk(9, 17, 1);
    const double f1 = table.F(1).eval(tx.theta);
    add("finite_n_T1_917_vs_F1", std::abs(t1 - f1) <= 0.05, std::abs(t1 - f1), 0.05);
  }

  // cancellation demonstration at Theta = 1e-7
  {
    const double naive = table.F_closed(5)->eval_naive(1e-7);
    const double series = table.F(5).eval(1e-7);
    const bool ok = std::abs(naive - series) > 1e-3 && std::abs(series) < 1e-10;
    add("cancellation_F5", ok, std::abs(naive - series), 1e-3,
        "naive=" + format_double(naive) + " series=" + format_double(series));
  }

  bool all = true;
  json arr = json::array();
  for (const Check& c : checks) {
    all = all && c.pass;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (c.tol > 0) std::cout << " gap=" << format_double(c.gap) << " tol=" << format_double(c.tol);
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
    json jc{{"name", c.name}, {"pass", c.pass}, {"gap", c.gap}, {"tol", c.tol}, {"detail", c.detail}};
    arr.push_back(std::move(jc));
  }
  json report;
  report["checks"] = std::move(arr);
  report["all_pass"] = all;
  report["version"] = GROVERPT_VERSION;
  report["duration_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  if (!report_path.empty()) write_atomic(report_path, report.dump(2) + "\n");
  std::cout << (all ? "all checks passed" : "SOME CHECKS FAILED") << "\n";
  return all ? kExitOk : kExitValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbative analysis of Grover search under dephasing noise"};
  app.set_version_flag("--version", GROVERPT_VERSION);
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 ok, 1 validation failed, 2 usage error, 3 bad range,\n"
      "4 memory-guard refusal, 5 I/O error, 70 internal error.");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Emit the exact C_k series and float Cbar_k polynomials");
  int order = 39, degree = 40;
  bool closed_form = false;
  std::string coeffs_out = "coeffs.csv", coeffs_format = "csv";
  coeffs->add_option("--order", order, "series order K")->check(CLI::Range(0, 64));
  coeffs->add_option("--degree", degree, "polynomial degree D")->check(CLI::Range(2, 128));
  coeffs->add_flag("--closed-form", closed_form, "also emit exponential-polynomial closed forms (JSON)");
  coeffs->add_option("-o,--out", coeffs_out, "output path");
  coeffs->add_option("--format", coeffs_format)->check(CLI::IsMember({"csv", "json"}));

  // pbar-grid
  auto* grid = app.add_subcommand("pbar-grid", "Emit pbar(theta, x) on a grid");
  std::string theta_range = "0:3.141592653589793:0.01", x_range = "0:10:0.1",
              grid_out = "pbar_grid.csv";
  grid->add_option("--theta", theta_range, "theta range lo:hi:step");
  grid->add_option("--x", x_range, "x range lo:hi:step");
  grid->add_option("-o,--out", grid_out, "output path");

  // phase
  auto* phase = app.add_subcommand("phase", "Sweep the critical error budget x_c(P_th)");
  double pth_start = 1.0, pth_end = 0.0037, linear_step = 5e-4;
  std::string schedule = "fig2", phase_out = "phase.csv", refs_out;
  bool parallel = false;
  phase->add_option("--pth-start", pth_start)->check(CLI::Range(0.0, 1.0));
  phase->add_option("--pth-end", pth_end)->check(CLI::Range(0.0, 1.0));
  phase->add_option("--schedule", schedule, "fig2 (refining) or linear")
      ->check(CLI::IsMember({"fig2", "linear"}));
  phase->add_option("--step", linear_step, "step for the linear schedule");
  phase->add_flag("--parallel", parallel, "solve grid points independently across threads");
  phase->add_option("-o,--out", phase_out, "output path");
  phase->add_option("--refs", refs_out, "also write tangent and log-bound reference columns");

  // mc / exact
  SimConfig cfg;
  auto* mc = app.add_subcommand("mc", "Monte Carlo trajectory estimate of the success probability");
  std::string mc_out = "mc.csv";
  mc->add_option("--n", cfg.n, "qubits")->check(CLI::Range(2, 30));
  mc->add_option("--m", cfg.m_max, "Grover iterations")->check(CLI::NonNegativeNumber);
  mc->add_option("--p", cfg.p, "per-qubit flip probability")->check(CLI::Range(0.0, 1.0));
  mc->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  mc->add_option("--seed", cfg.seed);
  mc->add_option("-o,--out", mc_out, "output path");

  auto* exact = app.add_subcommand("exact", "Exact dephasing-channel success probability");
  std::string exact_out = "exact.csv";
  exact->add_option("--n", cfg.n, "qubits")->check(CLI::Range(2, 30));
  exact->add_option("--m", cfg.m_max, "Grover iterations")->check(CLI::NonNegativeNumber);
  exact->add_option("--p", cfg.p, "per-qubit flip probability")->check(CLI::Range(0.0, 1.0));
  exact->add_option("-o,--out", exact_out, "output path");

  // validate
  auto* validate = app.add_subcommand("validate", "Run the brute-force oracle suite");
  std::string report_out = "validate_report.json";
  validate->add_option("-o,--out", report_out, "JSON report path (empty to skip)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (coeffs->parsed()) return cmd_coeffs(order, degree, closed_form, coeffs_out, coeffs_format);
    if (grid->parsed()) return cmd_pbar_grid(theta_range, x_range, grid_out);
    if (phase->parsed())
      return cmd_phase(pth_start, pth_end, schedule, linear_step, parallel, phase_out, refs_out);
    if (mc->parsed()) return cmd_mc(cfg, mc_out);
    if (exact->parsed()) return cmd_exact(cfg, exact_out);
    if (validate->parsed()) return cmd_validate(report_out);
  } catch (const std::range_error& e) {
    std::cerr << "error: bad-range: " << e.what() << "\n";
    return kExitBadRange;
  } catch (const memory_guard_error& e) {
    std::cerr << "error: memory-guard: " << e.what() << "\n";
    return kExitMemoryGuard;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
