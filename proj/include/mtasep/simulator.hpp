#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtasep/catalog.hpp"
#include "mtasep/rng.hpp"
#include "mtasep/scattering.hpp"

namespace mtasep {

// Ordered particle state: strictly increasing positions plus one species
// label in 1..N per particle.
struct Configuration {
  std::vector<long> positions;
  std::vector<int> species;

  std::string key() const;  // "x1,...,xn|pi1...pin"
  bool valid(int N) const;
};

Configuration configuration_from_key(const std::string& key);

// Column sampler over a stochastic interaction matrix: column nu holds
// the outcome distribution of hidden state nu.
class ColumnSampler {
 public:
  explicit ColumnSampler(const InteractionMatrix& B);  // throws NonStochasticError

  int N() const { return N_; }
  // Samples an outcome word rank from column nu.
  std::size_t sample(std::size_t nu, SplitMix64& rng) const;
  double probability(std::size_t row, std::size_t col) const;

 private:
  int N_;
  std::size_t dim_;
  std::vector<std::vector<std::pair<std::size_t, double>>> columns_;  // (row, cum)
};

// One attempted jump of the given particle (0-based index). Target
// empty: the particle advances. Target occupied: the hidden state
// (jumper species, occupant species) resolves through the matrix column;
// Backward returns the left particle to the vacated site, DropPush
// pushes the right one on, re-resolving at each further collision.
Configuration step(const Configuration& config, int jumper, const ColumnSampler& B,
                   Rule rule, SplitMix64& rng);

struct SimOutcome {
  Configuration initial;
  std::map<std::string, long> histogram;  // final-state counts
  long trials = 0;
  double t = 0.0;
  Rule rule = Rule::Backward;
  std::uint64_t seed = 0;
};

// Continuous-time simulation: every particle jumps at rate 1, so waiting
// times are Exp(n) with a uniformly chosen jumper. Trials use split
// per-trial seeds and merge into one histogram.
SimOutcome simulate(const Configuration& initial, const InteractionMatrix& B,
                    Rule rule, double t, long trials, std::uint64_t seed);

// Binomial estimate of one transition probability with its Wald
// standard error.
std::pair<double, double> estimate_kernel_entry(const Configuration& initial,
                                                const Configuration& final_state,
                                                const InteractionMatrix& B,
                                                Rule rule, double t, long trials,
                                                std::uint64_t seed);

}  // namespace mtasep
