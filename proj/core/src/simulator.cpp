#include "barw/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "barw/errors.hpp"
#include "barw/samplers.hpp"
#include "parallel.hpp"

namespace barw {

int ParticleState::count() const {
  return static_cast<int>(std::count(occupied.begin(), occupied.end(), std::uint8_t{1}));
}

ParticleState initial_particles(const GraphSpec& graph, int count) {
  if (count < 0 || count > graph.vertex_count)
    throw DomainError("initial_particles: count outside [0, vertex_count]");
  ParticleState s;
  s.occupied.assign(static_cast<std::size_t>(graph.vertex_count), 0);
  std::fill_n(s.occupied.begin(), count, std::uint8_t{1});
  return s;
}

int step_meanfield(const ModelParams& params, int x, RandomStream& rng) {
  if (x == 0) return 0;
  return sample_binomial(rng, params.n(), branch_prob(params, x));
}

ParticleState step_particle(const GraphSpec& graph, const ParticleState& state, double lambda,
                            RandomStream& rng) {
  if (!(lambda > 0.0)) throw DomainError("step_particle: lambda must be positive");
  if (state.occupied.size() != static_cast<std::size_t>(graph.vertex_count))
    throw DomainError("step_particle: state size differs from the graph");

  std::vector<int> arrivals(static_cast<std::size_t>(graph.vertex_count), 0);
  for (int v = 0; v < graph.vertex_count; ++v) {
    if (!state.occupied[static_cast<std::size_t>(v)]) continue;
    const auto& nbrs = graph.adjacency[static_cast<std::size_t>(v)];
    const auto targets = static_cast<std::uint64_t>(graph.target_count(v));
    const int offspring = sample_poisson(rng, lambda);
    for (int k = 0; k < offspring; ++k) {
      const auto r = uniform_below(rng, targets);
      const int dest = r == nbrs.size() ? v : nbrs[r];
      ++arrivals[static_cast<std::size_t>(dest)];
    }
  }
  ParticleState next;
  next.time = state.time + 1;
  next.occupied.resize(arrivals.size());
  std::transform(arrivals.begin(), arrivals.end(), next.occupied.begin(),
                 [](int a) { return static_cast<std::uint8_t>(a == 1); });
  return next;
}

Trajectory run_to_absorption(const ModelParams& params, int x0, std::optional<int> u,
                             std::int64_t max_steps, RandomStream& rng) {
  if (x0 < 0 || x0 > params.n()) throw DomainError("run_to_absorption: x0 outside [0, n]");
  Trajectory traj;
  traj.u = u;
  traj.states.push_back(x0);
  int x = x0;
  for (std::int64_t t = 0;; ++t) {
    if (x == 0) {
      traj.absorbed_at_zero = true;
      break;
    }
    if (u && x >= *u) {
      traj.crossed_u = true;
      break;
    }
    if (t == max_steps) {
      traj.truncated = true;
      break;
    }
    x = step_meanfield(params, x, rng);
    traj.states.push_back(x);
  }
  return traj;
}

ConditionedSampler::ConditionedSampler(const TiltedKernel& kernel) : u_(kernel.u()) {
  cdf_.assign(static_cast<std::size_t>(u_) * u_, 0.0);
  for (int x = 0; x < u_; ++x) {
    const auto row = kernel.row(x);
    std::partial_sum(row.begin(), row.end(), cdf_.begin() + static_cast<std::ptrdiff_t>(x) * u_);
  }
}

Trajectory ConditionedSampler::sample(int x0, RandomStream& rng) const {
  if (x0 < 1 || x0 >= u_) throw DomainError("sample_conditioned_path: need 1 <= x0 < u");
  Trajectory traj;
  traj.u = u_;
  traj.states.push_back(x0);
  int x = x0;
  while (x != 0) {
    if (traj.length() >= kSimulationStepCap) {
      traj.truncated = true;
      return traj;
    }
    const auto first = cdf_.begin() + static_cast<std::ptrdiff_t>(x) * u_;
    const auto last = first + u_;
    const double target = uniform01(rng) * *(last - 1);
    // upper_bound never lands on a zero-mass entry: those tie with the
    // previous cumulative value.
    auto it = std::upper_bound(first, last, target);
    if (it == last) it = last - 1;
    x = static_cast<int>(it - first);
    traj.states.push_back(x);
  }
  traj.absorbed_at_zero = true;
  return traj;
}

Trajectory sample_conditioned_path(const TiltedKernel& kernel, int x0, RandomStream& rng) {
  return ConditionedSampler(kernel).sample(x0, rng);
}

EstimateWithCI estimate_hitting_prob(const ModelParams& params, int u, int x0, std::int64_t trials,
                                     std::uint64_t seed, unsigned workers) {
  if (trials < 1) throw DomainError("estimate_hitting_prob: trials must be >= 1");
  if (u < 1 || u > params.n()) throw DomainError("estimate_hitting_prob: u outside [1, n]");
  if (x0 < 0 || x0 >= u) throw DomainError("estimate_hitting_prob: need 0 <= x0 < u");

  std::vector<std::uint8_t> hit(static_cast<std::size_t>(trials), 0);
  detail::for_each_trial(trials, workers, [&](std::int64_t i) {
    auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
    const auto traj = run_to_absorption(params, x0, u, kSimulationStepCap, rng);
    if (traj.truncated)
      throw TruncationError("estimate_hitting_prob: trial " + std::to_string(i) +
                            " exceeded the step cap");
    hit[static_cast<std::size_t>(i)] = traj.absorbed_at_zero ? 1 : 0;
  });
  const auto hits = std::accumulate(hit.begin(), hit.end(), std::int64_t{0});
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials, seed};
}

EstimateWithCI estimate_conditioned_length(const TiltedKernel& kernel, int x0, std::int64_t trials,
                                           std::uint64_t seed, unsigned workers) {
  if (trials < 1) throw DomainError("estimate_conditioned_length: trials must be >= 1");
  const ConditionedSampler sampler(kernel);
  std::vector<std::int64_t> length(static_cast<std::size_t>(trials), 0);
  detail::for_each_trial(trials, workers, [&](std::int64_t i) {
    auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
    const auto traj = sampler.sample(x0, rng);
    if (traj.truncated)
      throw TruncationError("estimate_conditioned_length: trial " + std::to_string(i) +
                            " exceeded the step cap");
    length[static_cast<std::size_t>(i)] = traj.length();
  });
  // Integer sums are exact, so the merge order cannot matter.
  const auto sum = std::accumulate(length.begin(), length.end(), std::int64_t{0});
  const double mean = static_cast<double>(sum) / static_cast<double>(trials);
  double ss = 0.0;
  for (auto l : length) ss += (static_cast<double>(l) - mean) * (static_cast<double>(l) - mean);
  const double var = trials > 1 ? ss / static_cast<double>(trials - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(trials)), trials, seed};
}

std::vector<double> particle_count_distribution(const GraphSpec& graph, double lambda, int occupied,
                                                std::int64_t trials, std::uint64_t seed,
                                                unsigned workers) {
  if (trials < 1) throw DomainError("particle_count_distribution: trials must be >= 1");
  graph.validate();
  const auto start = initial_particles(graph, occupied);
  std::vector<int> counts(static_cast<std::size_t>(trials), 0);
  detail::for_each_trial(trials, workers, [&](std::int64_t i) {
    auto rng = stream_for(seed, static_cast<std::uint64_t>(i));
    counts[static_cast<std::size_t>(i)] = step_particle(graph, start, lambda, rng).count();
  });
  std::vector<std::int64_t> hist(static_cast<std::size_t>(graph.vertex_count) + 1, 0);
  for (int c : counts) ++hist[static_cast<std::size_t>(c)];
  std::vector<double> pmf(hist.size());
  for (std::size_t k = 0; k < hist.size(); ++k)
    pmf[k] = static_cast<double>(hist[k]) / static_cast<double>(trials);
  return pmf;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  const std::size_t len = std::max(a.size(), b.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double pa = k < a.size() ? a[k] : 0.0;
    const double pb = k < b.size() ? b[k] : 0.0;
    sum += std::fabs(pa - pb);
  }
  return 0.5 * sum;
}

}  // namespace barw
