#include "mtasep/simulator.hpp"

#include <algorithm>
#include <sstream>

#include "mtasep/species.hpp"

namespace mtasep {

namespace {
constexpr long kCascadeCap = 1000000;
}

std::string Configuration::key() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (i) os << ',';
    os << positions[i];
  }
  os << '|';
  for (int s : species) os << s;
  return os.str();
}

bool Configuration::valid(int N) const {
  if (positions.size() != species.size() || positions.empty()) return false;
  for (std::size_t i = 1; i < positions.size(); ++i)
    if (positions[i - 1] >= positions[i]) return false;
  for (int s : species)
    if (s < 1 || s > N) return false;
  return true;
}

Configuration configuration_from_key(const std::string& key) {
  auto bar_pos = key.find('|');
  if (bar_pos == std::string::npos)
    throw DomainError("configuration key missing '|': " + key);
  Configuration c;
  std::stringstream ss(key.substr(0, bar_pos));
  std::string tok;
  while (std::getline(ss, tok, ',')) c.positions.push_back(std::stol(tok));
  for (char ch : key.substr(bar_pos + 1)) {
    if (ch < '1' || ch > '9') throw DomainError("bad species digit in key: " + key);
    c.species.push_back(ch - '0');
  }
  if (c.positions.size() != c.species.size())
    throw DomainError("configuration key length mismatch: " + key);
  return c;
}

ColumnSampler::ColumnSampler(const InteractionMatrix& B)
    : N_(B.N), dim_(B.entries.rows()) {
  if (!B.stochastic())
    throw NonStochasticError("matrix " + B.provenance +
                             " has entries outside [0,1]; simulation refuses it");
  columns_.resize(dim_);
  for (std::size_t col = 0; col < dim_; ++col) {
    double cum = 0.0;
    for (std::size_t row = 0; row < dim_; ++row) {
      const Rational& p = B.entries(row, col);
      if (is_zero(p)) continue;
      cum += to_double(p);
      columns_[col].emplace_back(row, cum);
    }
    // exact column sum 1 is a catalog invariant; the float tail guards
    // against conversion dust
    if (!columns_[col].empty()) columns_[col].back().second = 1.0;
  }
}

std::size_t ColumnSampler::sample(std::size_t nu, SplitMix64& rng) const {
  const auto& col = columns_.at(nu);
  if (col.empty())
    throw NonStochasticError("hidden state " + word_string(nu, N_, 2) +
                             " has an empty outcome column");
  double u = rng.real01();
  for (const auto& [row, cum] : col)
    if (u < cum) return row;
  return col.back().first;
}

double ColumnSampler::probability(std::size_t row, std::size_t col) const {
  double prev = 0.0;
  for (const auto& [r, cum] : columns_.at(col)) {
    if (r == row) return cum - prev;
    prev = cum;
  }
  return 0.0;
}

Configuration step(const Configuration& config, int jumper, const ColumnSampler& B,
                   Rule rule, SplitMix64& rng) {
  const int n = static_cast<int>(config.positions.size());
  if (jumper < 0 || jumper >= n) throw DomainError("jumper index out of range");
  Configuration c = config;
  const int N = B.N();
  auto resolve = [&](int left_idx) {
    // hidden state (left slot species, right slot species) at one site
    std::size_t nu = pair_rank(c.species[static_cast<std::size_t>(left_idx)],
                               c.species[static_cast<std::size_t>(left_idx + 1)], N);
    auto w = word_unrank(B.sample(nu, rng), N, 2);
    c.species[static_cast<std::size_t>(left_idx)] = w[0];
    c.species[static_cast<std::size_t>(left_idx + 1)] = w[1];
  };

  const auto j = static_cast<std::size_t>(jumper);
  const bool blocked = jumper + 1 < n && c.positions[j + 1] == c.positions[j] + 1;
  if (!blocked) {
    c.positions[j] += 1;
    return c;
  }
  if (rule == Rule::Backward) {
    // the jumper occupies the hidden site's left slot, then returns
    resolve(jumper);
    return c;
  }
  // DropPush: jumper moves in; collisions propagate right, each one a
  // fresh hidden-state resolution.
  c.positions[j] += 1;
  int k = jumper;
  long depth = 0;
  while (k + 1 < n && c.positions[static_cast<std::size_t>(k) + 1] ==
                          c.positions[static_cast<std::size_t>(k)]) {
    if (++depth > kCascadeCap) throw Error("drop-push cascade exceeded cap");
    resolve(k);
    c.positions[static_cast<std::size_t>(k) + 1] += 1;
    ++k;
  }
  return c;
}

SimOutcome simulate(const Configuration& initial, const InteractionMatrix& B,
                    Rule rule, double t, long trials, std::uint64_t seed) {
  if (!initial.valid(B.N)) throw DomainError("invalid initial configuration");
  if (t < 0.0) throw DomainError("simulation time must be nonnegative");
  if (trials < 1) throw DomainError("need at least one trial");
  ColumnSampler sampler(B);
  SimOutcome out;
  out.initial = initial;
  out.trials = trials;
  out.t = t;
  out.rule = rule;
  out.seed = seed;
  const int n = static_cast<int>(initial.positions.size());
  for (long trial = 0; trial < trials; ++trial) {
    SplitMix64 rng(SplitMix64::derive(seed, static_cast<std::uint64_t>(trial)));
    Configuration c = initial;
    double clock = 0.0;
    for (;;) {
      clock += rng.exponential(static_cast<double>(n));
      if (clock > t) break;
      int jumper = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n)));
      c = step(c, jumper, sampler, rule, rng);
    }
    out.histogram[c.key()] += 1;
  }
  return out;
}

std::pair<double, double> estimate_kernel_entry(const Configuration& initial,
                                                const Configuration& final_state,
                                                const InteractionMatrix& B,
                                                Rule rule, double t, long trials,
                                                std::uint64_t seed) {
  SimOutcome out = simulate(initial, B, rule, t, trials, seed);
  auto it = out.histogram.find(final_state.key());
  double hits = it == out.histogram.end() ? 0.0 : static_cast<double>(it->second);
  double p = hits / static_cast<double>(trials);
  double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return {p, se};
}

}  // namespace mtasep
