#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace groverpt {

/// Raised instead of attempting an allocation beyond the configured qubit cap.
struct memory_guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Noisy Grover run: search target |0...0>, W = H tensor n, one iteration is
/// [dephase, R0, W, dephase, R0, W], probabilities recorded after the initial
/// W and after each full iteration.
struct SimConfig {
  int n = 9;                 // qubits, >= 2
  int m_max = 17;            // Grover iterations
  double p = 0.0;            // per-qubit phase-flip probability per round
  long trials = 50000;       // Monte Carlo trajectories
  std::uint64_t seed = 0;    // base seed; trajectory t derives its own
  int max_qubits_trajectory = 24;  // memory guard: 2^n amplitudes
  int max_qubits_exact = 10;       // memory guard: 4^n density-matrix entries

  void validate() const;
};

/// Per-step success probabilities <0|rho^(M)|0>, M = 0..m_max.
/// `stderrs` is filled by mc_estimate only (standard error of the mean).
struct StepProbabilities {
  std::vector<double> values;
  std::vector<double> stderrs;
};

/// SplitMix64 (Steele, Lea, Flood 2014). Small, documented, portable; used
/// both to derive per-trajectory seeds and as the trajectory RNG so results
/// are identical across platforms and thread schedules.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Trajectory t uses the t-th element of the SplitMix64 stream seeded by the
/// base seed, so parallel and serial runs agree.
inline std::uint64_t trajectory_seed(std::uint64_t base_seed, std::uint64_t t) {
  SplitMix64 s(base_seed + t * 0x9E3779B97F4A7C15ULL);
  return s.next();
}

/// All gates in this model (H, R0, sigma_z) are real, so states are real
/// vectors. Hadamards are applied without the 1/sqrt(2) factors; callers fold
/// the pending powers of two into recorded probabilities exactly.
namespace statevec {
void hadamard_all_unnormalized(std::vector<double>& amp);
inline void phase_flip_zero(std::vector<double>& amp) { amp[0] = -amp[0]; }
/// sigma_z on every qubit in `mask` (qubit i is bit i of the state index).
void sigma_z_mask(std::vector<double>& amp, std::uint64_t mask);
}  // namespace statevec

/// One trajectory: per-qubit flips sampled at rate p before every R0.
StepProbabilities run_trajectory(const SimConfig& cfg, std::uint64_t trajectory_seed);

/// Mean and standard error over cfg.trials trajectories (requires >= 2).
/// Trajectories are distributed over threads (GROVERPT_THREADS, default
/// hardware) in fixed blocks reduced in index order, so the result does not
/// depend on the thread count.
StepProbabilities mc_estimate(const SimConfig& cfg);

/// Exact dephasing-channel evolution of the density matrix: before each R0,
/// entries off-diagonal in qubit q scale by (1-2p), i.e. rho[r][c] picks up
/// (1-2p)^popcount(r xor c) per noise round. Deterministic.
StepProbabilities run_exact_channel(const SimConfig& cfg);

/// The density matrix after cfg.m_max iterations (row-major, dim = 2^n);
/// exposed so the trace / symmetry / positivity invariants can be audited.
std::vector<double> exact_channel_final_density(const SimConfig& cfg);

/// Large-n matching: Theta = (1/2)(2M+1) arcsin(2^{-n/2}), x = 2 M n p.
struct ThetaX {
  double theta = 0.0;
  double x = 0.0;
};
ThetaX map_finite_n(int M, int n, double p);

}  // namespace groverpt
