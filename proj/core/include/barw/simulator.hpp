#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "barw/chain.hpp"
#include "barw/exact_solver.hpp"
#include "barw/graph.hpp"
#include "barw/random.hpp"

namespace barw {

// Trials whose runs exceed this many steps make the estimators throw.
inline constexpr std::int64_t kSimulationStepCap = 10'000'000;

// The occupied set B_t of the particle process.
struct ParticleState {
  std::vector<std::uint8_t> occupied;
  std::int64_t time = 0;

  int count() const;
};

// Occupies vertices 0..count-1.
ParticleState initial_particles(const GraphSpec& graph, int count);

// Counts X_0, X_1, ... of one run.
struct Trajectory {
  std::vector<int> states;
  bool absorbed_at_zero = false;
  bool crossed_u = false;
  bool truncated = false;
  std::optional<int> u;

  // Number of steps taken.
  std::int64_t length() const { return static_cast<std::int64_t>(states.size()) - 1; }
};

struct EstimateWithCI {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
};

// One exact Bin(n, b(x)) transition of the count chain.
int step_meanfield(const ModelParams& params, int x, RandomStream& rng);

// One step of the branching-annihilating walk: every occupied vertex emits
// Poisson(lambda) offspring, each moves to a uniform legal target, and a
// vertex stays occupied iff it received exactly one arrival.
ParticleState step_particle(const GraphSpec& graph, const ParticleState& state, double lambda,
                            RandomStream& rng);

// Runs the count chain until 0, until X >= u (if given), or for max_steps.
Trajectory run_to_absorption(const ModelParams& params, int x0, std::optional<int> u,
                             std::int64_t max_steps, RandomStream& rng);

// Samples paths of the tilted chain; row CDFs are built once.
class ConditionedSampler {
 public:
  explicit ConditionedSampler(const TiltedKernel& kernel);

  Trajectory sample(int x0, RandomStream& rng) const;
  int u() const noexcept { return u_; }

 private:
  int u_;
  std::vector<double> cdf_;
};

Trajectory sample_conditioned_path(const TiltedKernel& kernel, int x0, RandomStream& rng);

// `workers` = 0 uses the hardware concurrency. Results never depend on it.
EstimateWithCI estimate_hitting_prob(const ModelParams& params, int u, int x0, std::int64_t trials,
                                     std::uint64_t seed, unsigned workers = 0);

// Mean number of steps to absorption of the tilted chain from x0.
EstimateWithCI estimate_conditioned_length(const TiltedKernel& kernel, int x0, std::int64_t trials,
                                           std::uint64_t seed, unsigned workers = 0);

// Empirical distribution of |B_1| over 0..vertex_count, starting from
// vertices 0..occupied-1.
std::vector<double> particle_count_distribution(const GraphSpec& graph, double lambda, int occupied,
                                                std::int64_t trials, std::uint64_t seed,
                                                unsigned workers = 0);

// Total variation distance; the shorter vector is padded with zeros.
double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace barw
