#include "groverpt/grover_sim.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "thread_env.hpp"

namespace groverpt {

void SimConfig::validate() const {
  if (n < 2) throw std::invalid_argument("SimConfig: n must be >= 2");
  if (m_max < 0) throw std::invalid_argument("SimConfig: m_max must be >= 0");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("SimConfig: p must be in [0, 1]");
  if (trials < 1) throw std::invalid_argument("SimConfig: trials must be >= 1");
}

namespace statevec {

void hadamard_all_unnormalized(std::vector<double>& amp) {
  const size_t dim = amp.size();
  for (size_t stride = 1; stride < dim; stride <<= 1) {
    for (size_t base = 0; base < dim; base += 2 * stride) {
      for (size_t i = base; i < base + stride; ++i) {
        const double a = amp[i];
        const double b = amp[i + stride];
        amp[i] = a + b;
        amp[i + stride] = a - b;
      }
    }
  }
}

void sigma_z_mask(std::vector<double>& amp, std::uint64_t mask) {
  if (mask == 0) return;
  for (size_t s = 0; s < amp.size(); ++s) {
    if (std::popcount(s & mask) & 1U) amp[s] = -amp[s];
  }
}

}  // namespace statevec

namespace {

void scale(std::vector<double>& amp, double f) {
  for (double& a : amp) a *= f;
}

}  // namespace

StepProbabilities run_trajectory(const SimConfig& cfg, std::uint64_t trajectory_seed) {
  cfg.validate();
  if (cfg.n > cfg.max_qubits_trajectory)
    throw memory_guard_error("run_trajectory: n exceeds the trajectory qubit cap");

  const size_t dim = size_t{1} << cfg.n;
  const double norm = std::ldexp(1.0, -cfg.n);  // exact power of two
  SplitMix64 rng(trajectory_seed);

  std::vector<double> amp(dim, 0.0);
  amp[0] = 1.0;
  statevec::hadamard_all_unnormalized(amp);  // true state = amp * 2^{-n/2}

  StepProbabilities out;
  out.values.reserve(static_cast<size_t>(cfg.m_max) + 1);
  out.values.push_back(amp[0] * amp[0] * norm);
  for (int m = 0; m < cfg.m_max; ++m) {
    for (int round = 0; round < 2; ++round) {
      std::uint64_t mask = 0;
      for (int q = 0; q < cfg.n; ++q) {
        if (rng.next_unit() < cfg.p) mask |= std::uint64_t{1} << q;
      }
      statevec::sigma_z_mask(amp, mask);
      statevec::phase_flip_zero(amp);
      statevec::hadamard_all_unnormalized(amp);
    }
    scale(amp, norm);  // exact: folds the two unnormalized Hadamard passes
    out.values.push_back(amp[0] * amp[0] * norm);
  }
  return out;
}

StepProbabilities mc_estimate(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.trials < 2) throw std::invalid_argument("mc_estimate: trials must be >= 2");
  if (cfg.n > cfg.max_qubits_trajectory)
    throw memory_guard_error("mc_estimate: n exceeds the trajectory qubit cap");

  const size_t steps = static_cast<size_t>(cfg.m_max) + 1;
  constexpr long kBlock = 1024;
  const long n_blocks = (cfg.trials + kBlock - 1) / kBlock;

  struct BlockSums {
    std::vector<double> sum, sumsq;
  };
  std::vector<BlockSums> blocks(static_cast<size_t>(n_blocks));

  std::atomic<long> next{0};
  auto worker = [&] {
    for (long b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
      BlockSums bs{std::vector<double>(steps, 0.0), std::vector<double>(steps, 0.0)};
      const long t_end = std::min<long>(cfg.trials, (b + 1) * kBlock);
      for (long t = b * kBlock; t < t_end; ++t) {
        const StepProbabilities traj =
            run_trajectory(cfg, trajectory_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        for (size_t i = 0; i < steps; ++i) {
          bs.sum[i] += traj.values[i];
          bs.sumsq[i] += traj.values[i] * traj.values[i];
        }
      }
      blocks[static_cast<size_t>(b)] = std::move(bs);
    }
  };
  const int n_threads = std::min<long>(detail::thread_count_from_env(), n_blocks);
  std::vector<std::thread> pool;
  for (int w = 1; w < n_threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // reduce in block order: the result is independent of the thread count
  std::vector<double> sum(steps, 0.0), sumsq(steps, 0.0);
  for (const BlockSums& bs : blocks) {
    for (size_t i = 0; i < steps; ++i) {
      sum[i] += bs.sum[i];
      sumsq[i] += bs.sumsq[i];
    }
  }
  const double N = static_cast<double>(cfg.trials);
  StepProbabilities out;
  out.values.resize(steps);
  out.stderrs.resize(steps);
  for (size_t i = 0; i < steps; ++i) {
    const double mean = sum[i] / N;
    const double var = std::max(0.0, (sumsq[i] - sum[i] * sum[i] / N) / (N - 1.0));
    out.values[i] = mean;
    out.stderrs[i] = std::sqrt(var / N);
  }
  return out;
}

namespace {

// rows pass: butterfly over the row index r of rho[r*dim + c], each column
void hadamard_rows_unnormalized(std::vector<double>& rho, size_t dim) {
  for (size_t stride = 1; stride < dim; stride <<= 1) {
    for (size_t base = 0; base < dim; base += 2 * stride) {
      for (size_t r = base; r < base + stride; ++r) {
        double* row_a = rho.data() + r * dim;
        double* row_b = rho.data() + (r + stride) * dim;
        for (size_t c = 0; c < dim; ++c) {
          const double a = row_a[c];
          const double b = row_b[c];
          row_a[c] = a + b;
          row_b[c] = a - b;
        }
      }
    }
  }
}

void hadamard_cols_unnormalized(std::vector<double>& rho, size_t dim) {
  for (size_t r = 0; r < dim; ++r) {
    double* row = rho.data() + r * dim;
    for (size_t stride = 1; stride < dim; stride <<= 1) {
      for (size_t base = 0; base < dim; base += 2 * stride) {
        for (size_t c = base; c < base + stride; ++c) {
          const double a = row[c];
          const double b = row[c + stride];
          row[c] = a + b;
          row[c + stride] = a - b;
        }
      }
    }
  }
}

}  // namespace

namespace {

StepProbabilities evolve_channel(const SimConfig& cfg, std::vector<double>* final_rho) {
  cfg.validate();
  if (cfg.n > cfg.max_qubits_exact)
    throw memory_guard_error("run_exact_channel: n exceeds the exact-mode qubit cap");

  const size_t dim = size_t{1} << cfg.n;
  const double norm = std::ldexp(1.0, -cfg.n);
  std::vector<double> rho(dim * dim, 0.0);
  rho[0] = 1.0;  // |0><0|

  // (1-2p)^h for Hamming distances h = 0..n
  std::vector<double> dephase_pow(static_cast<size_t>(cfg.n) + 1, 1.0);
  for (int h = 1; h <= cfg.n; ++h) dephase_pow[static_cast<size_t>(h)] = dephase_pow[static_cast<size_t>(h - 1)] * (1.0 - 2.0 * cfg.p);

  const auto apply_w = [&] {
    hadamard_rows_unnormalized(rho, dim);
    hadamard_cols_unnormalized(rho, dim);
    scale(rho, norm);  // exact: W rho W carries 2^{-n} in total
  };
  const auto apply_r0 = [&] {
    for (size_t c = 0; c < dim; ++c) rho[c] = -rho[c];
    for (size_t r = 0; r < dim; ++r) rho[r * dim] = -rho[r * dim];
  };
  const auto apply_dephase = [&] {
    if (cfg.p == 0.0) return;
    for (size_t r = 0; r < dim; ++r) {
      for (size_t c = 0; c < dim; ++c) {
        const int h = std::popcount(r ^ c);
        if (h) rho[r * dim + c] *= dephase_pow[static_cast<size_t>(h)];
      }
    }
  };

  apply_w();  // rho^(0): every entry exactly 2^{-n}

  StepProbabilities out;
  out.values.reserve(static_cast<size_t>(cfg.m_max) + 1);
  out.values.push_back(rho[0]);
  for (int m = 0; m < cfg.m_max; ++m) {
    for (int round = 0; round < 2; ++round) {
      apply_dephase();
      apply_r0();
      apply_w();
    }
    out.values.push_back(rho[0]);
  }
  if (final_rho) *final_rho = std::move(rho);
  return out;
}

}  // namespace

StepProbabilities run_exact_channel(const SimConfig& cfg) { return evolve_channel(cfg, nullptr); }

std::vector<double> exact_channel_final_density(const SimConfig& cfg) {
  std::vector<double> rho;
  evolve_channel(cfg, &rho);
  return rho;
}

ThetaX map_finite_n(int M, int n, double p) {
  if (n < 2) throw std::invalid_argument("map_finite_n: n must be >= 2");
  if (M < 0) throw std::invalid_argument("map_finite_n: M must be >= 0");
  const double theta_n = std::asin(std::pow(2.0, -0.5 * n));
  return {0.5 * (2.0 * M + 1.0) * theta_n, 2.0 * M * n * p};
}

}  // namespace groverpt
