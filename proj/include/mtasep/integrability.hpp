#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtasep/catalog.hpp"
#include "mtasep/rng.hpp"
#include "mtasep/scattering.hpp"

namespace mtasep {

// Reproducible evidence that one of the relations (a), (b), (c) failed:
// the exact spectral sample plus the worst violating entry.
struct RelationWitness {
  char relation = 'c';
  std::vector<std::string> xi;         // sampled spectral parameters
  std::size_t row = 0, col = 0;        // violating cell
  std::string row_label, col_label;    // species words
  std::string violation;               // |lhs - rhs| at the cell, exact
  int sample_index = 0;
};

struct IntegrabilityVerdict {
  std::string subject;
  Rule rule = Rule::Backward;
  std::uint64_t seed = 0;
  int samples = 0;
  bool passes_a = true;
  bool passes_b = true;
  bool passes_c = true;
  std::optional<RelationWitness> witness;

  bool integrable() const { return passes_a && passes_b && passes_c; }
};

// Draws a nonzero rational with numerator and denominator bounded by 64,
// rejecting values that make any needed resolvent singular.
std::vector<Rational> sample_spectral_rationals(const InteractionMatrix& B,
                                                Rule rule, int count,
                                                SplitMix64& rng);

// Checks relations (a), (c) on `samples` exact spectral triples and the
// commutation relation (b) once on an n=4 embedding ((b) is structural,
// see the classification notes). The Yang-Baxter relation (c) is the
// 27x27 identity at the minimal nontrivial size N=3; larger N works too.
IntegrabilityVerdict check_yang_baxter(const InteractionMatrix& B, int samples,
                                       Rule rule, std::uint64_t seed,
                                       const std::string& subject = "");

// Re-evaluates a stored witness from scratch; true when the violation is
// still a nonzero exact-rational entry of the cited relation.
bool reverify_witness(const InteractionMatrix& B, Rule rule,
                      const RelationWitness& w);

// ---- classification sweeps (all at N = 3) ----

struct NaturalClassification {
  std::set<int> integrable;
  std::map<int, IntegrabilityVerdict> verdicts;        // consistent labels
  std::map<int, ExtensionConflict> inconsistent;       // labels that fail to extend
};

NaturalClassification classify_natural_extensions(int samples, std::uint64_t seed,
                                                  Rule rule);

struct ConvexClassification {
  std::set<std::pair<int, int>> integrable;
  // verdict per (pair, mixing weight); a pair passes iff every weight does
  std::map<std::pair<int, int>, std::vector<IntegrabilityVerdict>> verdicts;
  std::vector<Rational> weights;
};

// Candidates: all unordered pairs i<j from {1,2,3,4,5,11,13} plus the
// trivial self-pair (1,1).
ConvexClassification classify_convex_mixtures(const std::vector<Rational>& a_values,
                                              int samples, std::uint64_t seed,
                                              Rule rule);

struct ParamClassification {
  std::vector<std::pair<std::pair<Rational, Rational>, IntegrabilityVerdict>> points;
  bool all_pass() const;
};

ParamClassification classify_param_family(
    const std::vector<std::pair<Rational, Rational>>& grid, int samples,
    std::uint64_t seed, Rule rule);

struct AsymmetricClassification {
  std::set<int> integrable;
  std::map<int, IntegrabilityVerdict> verdicts;  // applicable labels
  std::set<int> not_applicable;                  // fourth column != (0,0,0,1)^t
};

AsymmetricClassification classify_asymmetric_extensions(int samples,
                                                        std::uint64_t seed,
                                                        Rule rule);

// Reference result sets the sweeps certify against.
const std::set<int>& known_natural_set();                    // {1,2,3,4,5,11,13}
const std::set<std::pair<int, int>>& known_convex_pairs();   // lists (i),(ii),(iii)
const std::set<int>& known_asymmetric_set();                 // naturals + 8 more

// Default evenly spaced (lambda, lambda') grid over [0,1]^2 with
// `points_per_axis` values per axis.
std::vector<std::pair<Rational, Rational>> param_grid(int points_per_axis);

}  // namespace mtasep
