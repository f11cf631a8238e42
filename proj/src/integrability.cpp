#include "mtasep/integrability.hpp"

#include <algorithm>
#include <optional>

#include "mtasep/parallel.hpp"
#include "mtasep/species.hpp"

namespace mtasep {

namespace {

bool resolvents_invertible(const InteractionMatrix& B, Rule rule,
                           const Rational& xi) {
  // Backward needs I - xi*B invertible, drop-push I - (1/xi)*B.
  Rational c = (rule == Rule::Backward) ? xi : Rational(1) / xi;
  RMat m = RMat::identity(B.entries.rows()) - B.entries.scaled(c);
  try {
    (void)inverse(m);
    return true;
  } catch (const SingularMatrixError&) {
    return false;
  }
}

RelationWitness make_witness(char relation, const std::vector<Rational>& xi,
                             const RMat& lhs, const RMat& rhs, int N, int len,
                             int sample_index) {
  RelationWitness w;
  w.relation = relation;
  for (const auto& v : xi) w.xi.push_back(to_string(v));
  Rational best(0);
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t j = 0; j < lhs.cols(); ++j) {
      Rational d = abs(lhs(i, j) - rhs(i, j));
      if (cmp(d, best) > 0) {
        best = d;
        w.row = i;
        w.col = j;
      }
    }
  w.row_label = word_string(w.row, N, len);
  w.col_label = word_string(w.col, N, len);
  w.violation = to_string(best);
  w.sample_index = sample_index;
  return w;
}

// Both sides of the Yang-Baxter relation (c) for three spectral values.
std::pair<RMat, RMat> yang_baxter_sides(const InteractionMatrix& B, Rule rule,
                                        const Rational& xa, const Rational& xb,
                                        const Rational& xc) {
  const RMat I = RMat::identity(static_cast<std::size_t>(B.N));
  RMat Rgb = scattering(B, xb, xc, rule);  // R_{gamma beta}: alpha slot = beta
  RMat Rga = scattering(B, xa, xc, rule);
  RMat Rba = scattering(B, xa, xb, rule);
  RMat lhs = kron(Rgb, I) * (kron(I, Rga) * kron(Rba, I));
  RMat rhs = kron(I, Rba) * (kron(Rga, I) * kron(I, Rgb));
  return {std::move(lhs), std::move(rhs)};
}

}  // namespace

std::vector<Rational> sample_spectral_rationals(const InteractionMatrix& B,
                                                Rule rule, int count,
                                                SplitMix64& rng) {
  std::vector<Rational> out;
  int guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 100000)
      throw Error("spectral sampling failed to find admissible values");
    long num = 1 + static_cast<long>(rng.bounded(64));
    long den = 1 + static_cast<long>(rng.bounded(64));
    if (rng.bounded(2)) num = -num;
    Rational xi = rat(num, den);
    if (std::find(out.begin(), out.end(), xi) != out.end()) continue;
    if (!resolvents_invertible(B, rule, xi)) continue;
    out.push_back(xi);
  }
  return out;
}

IntegrabilityVerdict check_yang_baxter(const InteractionMatrix& B, int samples,
                                       Rule rule, std::uint64_t seed,
                                       const std::string& subject) {
  IntegrabilityVerdict v;
  v.subject = subject.empty() ? B.provenance + "@N=" + std::to_string(B.N) : subject;
  v.rule = rule;
  v.seed = seed;
  v.samples = samples;
  const int N = B.N;
  const std::size_t dim2 = B.entries.rows();
  SplitMix64 rng(seed);

  for (int s = 0; s < samples; ++s) {
    auto xi = sample_spectral_rationals(B, rule, 4, rng);
    const Rational &xa = xi[0], &xb = xi[1], &xc = xi[2], &xd = xi[3];

    // relation (a): R_{alpha beta} R_{beta alpha} = I
    {
      RMat prod = scattering(B, xb, xa, rule) * scattering(B, xa, xb, rule);
      if (!(prod == RMat::identity(dim2))) {
        v.passes_a = false;
        v.witness = make_witness('a', {xa, xb}, prod, RMat::identity(dim2), N, 2, s);
        return v;
      }
    }

    // relation (b), structural: checked once, on the first sample, with an
    // n=4 embedding where |i-j| >= 2 first occurs.
    if (s == 0) {
      RMat Rba = scattering(B, xa, xb, rule);
      RMat Rdc = scattering(B, xc, xd, rule);
      RMat T1 = embed_T(Rba, 1, 4, N);
      RMat T3 = embed_T(Rdc, 3, 4, N);
      RMat lhs = T1 * T3, rhs = T3 * T1;
      if (!(lhs == rhs)) {
        v.passes_b = false;
        v.witness = make_witness('b', {xa, xb, xc, xd}, lhs, rhs, N, 4, s);
        return v;
      }
    }

    // relation (c): the Yang-Baxter equation
    auto [lhs, rhs] = yang_baxter_sides(B, rule, xa, xb, xc);
    if (!(lhs == rhs)) {
      v.passes_c = false;
      v.witness = make_witness('c', {xa, xb, xc}, lhs, rhs, N, 3, s);
      return v;
    }
  }
  return v;
}

bool reverify_witness(const InteractionMatrix& B, Rule rule,
                      const RelationWitness& w) {
  std::vector<Rational> xi;
  for (const auto& s : w.xi) xi.push_back(rat_from_string(s));
  RMat lhs, rhs;
  switch (w.relation) {
    case 'a': {
      lhs = scattering(B, xi[1], xi[0], rule) * scattering(B, xi[0], xi[1], rule);
      rhs = RMat::identity(B.entries.rows());
      break;
    }
    case 'b': {
      RMat T1 = embed_T(scattering(B, xi[0], xi[1], rule), 1, 4, B.N);
      RMat T3 = embed_T(scattering(B, xi[2], xi[3], rule), 3, 4, B.N);
      lhs = T1 * T3;
      rhs = T3 * T1;
      break;
    }
    case 'c': {
      auto sides = yang_baxter_sides(B, rule, xi[0], xi[1], xi[2]);
      lhs = std::move(sides.first);
      rhs = std::move(sides.second);
      break;
    }
    default:
      return false;
  }
  Rational diff = abs(lhs(w.row, w.col) - rhs(w.row, w.col));
  return !is_zero(diff) && to_string(diff) == w.violation;
}

NaturalClassification classify_natural_extensions(int samples, std::uint64_t seed,
                                                  Rule rule) {
  std::vector<std::optional<IntegrabilityVerdict>> verdicts(28);
  std::vector<std::optional<ExtensionConflict>> conflicts(28);
  parallel_for(28, [&](std::size_t idx) {
    const int l = static_cast<int>(idx) + 1;
    auto ext = extend_natural(catalog_get(l), 3);
    if (!extension_ok(ext)) {
      conflicts[idx] = extension_conflict(ext);
      return;
    }
    verdicts[idx] = check_yang_baxter(extension_matrix(ext), samples, rule,
                                      SplitMix64::derive(seed, static_cast<std::uint64_t>(l)));
  });
  NaturalClassification out;
  for (int l = 1; l <= 28; ++l) {
    const auto idx = static_cast<std::size_t>(l - 1);
    if (conflicts[idx]) {
      out.inconsistent.emplace(l, std::move(*conflicts[idx]));
      continue;
    }
    if (verdicts[idx]->integrable()) out.integrable.insert(l);
    out.verdicts.emplace(l, std::move(*verdicts[idx]));
  }
  return out;
}

ConvexClassification classify_convex_mixtures(const std::vector<Rational>& a_values,
                                              int samples, std::uint64_t seed,
                                              Rule rule) {
  static const int seven[] = {1, 2, 3, 4, 5, 11, 13};
  ConvexClassification out;
  out.weights = a_values;
  std::vector<std::pair<int, int>> candidates = {{1, 1}};
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) candidates.emplace_back(seven[i], seven[j]);

  std::vector<std::vector<IntegrabilityVerdict>> per_pair(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t idx) {
    const auto pr = candidates[idx];
    std::vector<IntegrabilityVerdict> verdicts;
    for (std::size_t w = 0; w < a_values.size(); ++w) {
      auto mixed = convex_mix("b" + std::to_string(pr.first),
                              "b" + std::to_string(pr.second), a_values[w]);
      auto ext = extend_natural(mixed, 3);  // the seven extend, so mixtures do
      verdicts.push_back(check_yang_baxter(
          extension_matrix(ext), samples, rule,
          SplitMix64::derive(seed, idx * a_values.size() + w + 1)));
    }
    per_pair[idx] = std::move(verdicts);
  });
  for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
    bool all_pass = true;
    for (const auto& v : per_pair[idx]) all_pass = all_pass && v.integrable();
    if (all_pass) out.integrable.insert(candidates[idx]);
    out.verdicts.emplace(candidates[idx], std::move(per_pair[idx]));
  }
  return out;
}

bool ParamClassification::all_pass() const {
  for (const auto& p : points)
    if (!p.second.integrable()) return false;
  return !points.empty();
}

ParamClassification classify_param_family(
    const std::vector<std::pair<Rational, Rational>>& grid, int samples,
    std::uint64_t seed, Rule rule) {
  ParamClassification out;
  std::vector<std::optional<IntegrabilityVerdict>> verdicts(grid.size());
  parallel_for(grid.size(), [&](std::size_t idx) {
    auto B = param_family_extension(grid[idx].first, grid[idx].second, 3);
    verdicts[idx] = check_yang_baxter(B, samples, rule,
                                      SplitMix64::derive(seed, idx + 1));
  });
  for (std::size_t idx = 0; idx < grid.size(); ++idx)
    out.points.emplace_back(grid[idx], std::move(*verdicts[idx]));
  return out;
}

AsymmetricClassification classify_asymmetric_extensions(int samples,
                                                        std::uint64_t seed,
                                                        Rule rule) {
  AsymmetricClassification out;
  std::vector<std::optional<IntegrabilityVerdict>> verdicts(28);
  parallel_for(28, [&](std::size_t idx) {
    const int l = static_cast<int>(idx) + 1;
    auto ext = asymmetric_extend("b" + std::to_string(l), 3);
    if (!ext) return;
    verdicts[idx] = check_yang_baxter(*ext, samples, rule,
                                      SplitMix64::derive(seed, 1000 + static_cast<std::uint64_t>(l)));
  });
  for (int l = 1; l <= 28; ++l) {
    const auto idx = static_cast<std::size_t>(l - 1);
    if (!verdicts[idx]) {
      out.not_applicable.insert(l);
      continue;
    }
    if (verdicts[idx]->integrable()) out.integrable.insert(l);
    out.verdicts.emplace(l, std::move(*verdicts[idx]));
  }
  return out;
}

const std::set<int>& known_natural_set() {
  static const std::set<int> s = {1, 2, 3, 4, 5, 11, 13};
  return s;
}

const std::set<std::pair<int, int>>& known_convex_pairs() {
  static const std::set<std::pair<int, int>> s = {
      {1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 11}, {1, 13},
      {3, 4}, {3, 5}, {4, 5}, {4, 11}};
  return s;
}

const std::set<int>& known_asymmetric_set() {
  static const std::set<int> s = {1, 2, 3,  4,  5,  6,  7, 8,
                                  9, 11, 12, 13, 14, 17, 19};
  return s;
}

std::vector<std::pair<Rational, Rational>> param_grid(int points_per_axis) {
  if (points_per_axis < 2) throw DomainError("param_grid needs >= 2 points per axis");
  std::vector<Rational> axis;
  for (int k = 0; k < points_per_axis; ++k)
    axis.push_back(rat(k, points_per_axis - 1));
  std::vector<std::pair<Rational, Rational>> grid;
  for (const auto& l : axis)
    for (const auto& lp : axis) grid.emplace_back(l, lp);
  return grid;
}

}  // namespace mtasep
