#include "mtasep/catalog.hpp"

#include <array>
#include <sstream>

#include "mtasep/species.hpp"

namespace mtasep {

namespace {

// The 28 two-species rules, rows/cols 11,12,21,22, row-major.
// Entries are small integers; columns sum to 1.
constexpr int kCatalogData[28][16] = {
    // b1
    {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1},
    // b2
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1},
    // b3
    {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1},
    // b4
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 1},
    // b5
    {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1},
    // b6
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 0, 1},
    // b7
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1, 0, 1},
    // b8
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 1},
    // b9
    {0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1},
    // b10
    {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0},
    // b11
    {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1},
    // b12
    {0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1},
    // b13
    {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1},
    // b14
    {0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1},
    // b15
    {0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0},
    // b16
    {1, 0, 0, 0, 0, -1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 0},
    // b17
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1},
    // b18
    {0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 1},
    // b19
    {-1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1},
    // b20
    {0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0},
    // b21
    {0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0},
    // b22
    {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0},
    // b23
    {0, 0, 1, 0, 1, -1, 1, 0, 0, 1, -1, 1, 0, 1, 0, 0},
    // b24
    {-1, 1, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1, -1},
    // b25
    {-1, 0, 1, 1, 0, -1, 1, 1, 1, 1, -1, 0, 1, 1, 0, -1},
    // b26
    {-1, 1, 0, 1, 1, -1, 1, 0, 0, 1, -1, 1, 1, 0, 1, -1},
    // b27
    {-1, 1, 1, 0, 1, -1, 0, 1, 1, 0, -1, 1, 0, 1, 1, -1},
    // b28
    {-2, 1, 1, 1, 1, -2, 1, 1, 1, 1, -2, 1, 1, 1, 1, -2},
};

RMat four_by_four(const int* vals) {
  RMat m(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = Rational(vals[i * 4 + j]);
  return m;
}

bool columns_sum_to_one(const RMat& m) {
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Rational s(0);
    for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, j);
    if (s != 1) return false;
  }
  return true;
}

bool entries_in_unit_interval(const RMat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) < 0 || m(i, j) > 1) return false;
  return true;
}

const std::vector<TwoSpeciesMatrix>& catalog_storage() {
  static const std::vector<TwoSpeciesMatrix> table = [] {
    std::vector<TwoSpeciesMatrix> t;
    t.reserve(28);
    for (int l = 1; l <= 28; ++l) {
      TwoSpeciesMatrix m{"b" + std::to_string(l), four_by_four(kCatalogData[l - 1])};
      // Transcription errors must fail loudly.
      if (!m.column_sums_are_one())
        throw Error("catalog entry " + m.label + " violates column-sum-1");
      t.push_back(std::move(m));
    }
    return t;
  }();
  return table;
}

int parse_catalog_index(const std::string& label) {
  if (label.size() >= 2 && label[0] == 'b') {
    int v = 0;
    for (std::size_t k = 1; k < label.size(); ++k) {
      if (label[k] < '0' || label[k] > '9') return 0;
      v = v * 10 + (label[k] - '0');
    }
    if (v >= 1 && v <= 28) return v;
  }
  return 0;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

// Pair-block label ranks [ii, ij, ji, jj] in the N^2 word space.
std::array<std::size_t, 4> block_labels(int i, int j, int N) {
  return {pair_rank(i, i, N), pair_rank(i, j, N), pair_rank(j, i, N),
          pair_rank(j, j, N)};
}

}  // namespace

bool TwoSpeciesMatrix::stochastic() const { return entries_in_unit_interval(entries); }
bool TwoSpeciesMatrix::column_sums_are_one() const { return columns_sum_to_one(entries); }

bool InteractionMatrix::column_sums_are_one() const { return columns_sum_to_one(entries); }
bool InteractionMatrix::stochastic() const { return entries_in_unit_interval(entries); }

const std::vector<std::string>& catalog_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> v;
    for (const auto& m : catalog_storage()) v.push_back(m.label);
    return v;
  }();
  return labels;
}

const TwoSpeciesMatrix& catalog_get(const std::string& label) {
  int idx = parse_catalog_index(label);
  if (idx == 0) throw UnknownLabelError(label);
  return catalog_storage()[static_cast<std::size_t>(idx - 1)];
}

const TwoSpeciesMatrix& catalog_get(int index) {
  if (index < 1 || index > 28)
    throw UnknownLabelError("b" + std::to_string(index));
  return catalog_storage()[static_cast<std::size_t>(index - 1)];
}

TwoSpeciesMatrix bar(const TwoSpeciesMatrix& m) {
  // index permutation 11<->22, 12<->21
  static constexpr std::size_t perm[4] = {3, 2, 1, 0};
  RMat r(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) r(perm[i], perm[j]) = m.entries(i, j);
  return TwoSpeciesMatrix{"bar-" + m.label, std::move(r)};
}

std::string ExtensionConflict::describe() const {
  std::ostringstream os;
  os << "cell (" << row_label << "," << col_label << "): value "
     << to_string(existing) << " from pair (" << existing_pair.first << ","
     << existing_pair.second << ") vs " << to_string(incoming) << " from pair ("
     << incoming_pair.first << "," << incoming_pair.second << ")";
  return os.str();
}

NaturalExtensionResult extend_natural(const TwoSpeciesMatrix& m, int N) {
  if (N < 2) throw DomainError("extend_natural requires N >= 2");
  const std::size_t dim = pow_sz(N, 2);
  RMat big(dim, dim);
  // -1 = unwritten; otherwise index of the pair that wrote the cell.
  std::vector<int> writer(dim * dim, -1);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) pairs.emplace_back(i, j);

  auto conflict_at = [&](std::size_t r, std::size_t c, const Rational& incoming,
                         std::pair<int, int> pair) {
    ExtensionConflict cf;
    cf.row = r;
    cf.col = c;
    cf.row_label = word_string(r, N, 2);
    cf.col_label = word_string(c, N, 2);
    cf.existing = big(r, c);
    cf.incoming = incoming;
    cf.existing_pair = pairs[static_cast<std::size_t>(writer[r * dim + c])];
    cf.incoming_pair = pair;
    return cf;
  };

  // Phase 1: each pair writes its 16-cell block, write-once.
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    auto lab = block_labels(i, j, N);
    for (std::size_t c4 = 0; c4 < 4; ++c4)
      for (std::size_t r4 = 0; r4 < 4; ++r4) {
        std::size_t r = lab[r4], c = lab[c4];
        const Rational& v = m.entries(r4, c4);
        int& w = writer[r * dim + c];
        if (w < 0) {
          big(r, c) = v;
          w = static_cast<int>(p);
        } else if (big(r, c) != v) {
          return conflict_at(r, c, v, pairs[p]);
        }
      }
  }
  // Phase 2: a hidden state in a pair's block must resolve inside that
  // block, so the pair claims zero on the rest of those columns.
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [i, j] = pairs[p];
    auto lab = block_labels(i, j, N);
    for (std::size_t c4 = 0; c4 < 4; ++c4) {
      std::size_t c = lab[c4];
      for (std::size_t r = 0; r < dim; ++r) {
        if (r == lab[0] || r == lab[1] || r == lab[2] || r == lab[3]) continue;
        int& w = writer[r * dim + c];
        if (w >= 0 && !is_zero(big(r, c)))
          return conflict_at(r, c, Rational(0), pairs[p]);
        if (w < 0) w = static_cast<int>(p);  // records the zero claim
      }
    }
  }

  InteractionMatrix out{N, std::move(big), "natural:" + m.label};
  if (!out.column_sums_are_one())
    throw Error("natural extension of " + m.label + " lost column-sum-1");
  return out;
}

TwoSpeciesMatrix convex_mix(const std::string& label_i, const std::string& label_j,
                            const Rational& a) {
  if (a < 0 || a > 1) throw DomainError("convex_mix weight outside [0,1]");
  const auto& bi = catalog_get(label_i);
  const auto& bj = catalog_get(label_j);
  RMat m = bi.entries.scaled(a) + bj.entries.scaled(Rational(1) - a);
  return TwoSpeciesMatrix{
      "mix(" + bi.label + "," + bj.label + "," + to_string(a) + ")", std::move(m)};
}

TwoSpeciesMatrix param_family(const Rational& lambda, const Rational& lambda_prime) {
  if (lambda < 0 || lambda > 1 || lambda_prime < 0 || lambda_prime > 1)
    throw DomainError("param_family parameters outside [0,1]");
  RMat m(4, 4);
  m(0, 0) = 1;
  m(1, 1) = lambda;
  m(2, 2) = lambda_prime;
  m(3, 3) = 1;
  m(3, 1) = Rational(1) - lambda;
  m(3, 2) = Rational(1) - lambda_prime;
  return TwoSpeciesMatrix{
      "param(" + to_string(lambda) + "," + to_string(lambda_prime) + ")",
      std::move(m)};
}

InteractionMatrix param_family_extension(const Rational& lambda,
                                         const Rational& lambda_prime, int N) {
  if (N < 2) throw DomainError("param_family_extension requires N >= 2");
  if (lambda < 0 || lambda > 1 || lambda_prime < 0 || lambda_prime > 1)
    throw DomainError("param_family_extension parameters outside [0,1]");
  const std::size_t dim = pow_sz(N, 2);
  RMat big(dim, dim);
  for (int a = 1; a <= N; ++a)
    for (int b = 1; b <= N; ++b) {
      std::size_t col = pair_rank(a, b, N);
      if (a == b) {
        big(col, col) = 1;
      } else if (a < b) {
        big(col, col) = lambda;  // jumper keeps its species
        big(pair_rank(b, b, N), col) = Rational(1) - lambda;
      } else {
        big(col, col) = lambda_prime;  // occupant keeps its species
        big(pair_rank(a, a, N), col) = Rational(1) - lambda_prime;
      }
    }
  return InteractionMatrix{
      N, std::move(big),
      "param(" + to_string(lambda) + "," + to_string(lambda_prime) + ")"};
}

std::optional<std::pair<Rational, Rational>> param_of_mixture(int i, int j,
                                                              const Rational& a) {
  const Rational one(1), zero(0), b = one - a;
  if (i > j) std::swap(i, j);
  if (i == 1 && j == 1) return std::make_pair(one, one);
  if (i == 1 && j == 3) return std::make_pair(one, a);
  if (i == 1 && j == 4) return std::make_pair(a, one);
  if (i == 1 && j == 5) return std::make_pair(a, a);
  if (i == 3 && j == 4) return std::make_pair(a, b);
  if (i == 3 && j == 5) return std::make_pair(a, zero);
  if (i == 4 && j == 5) return std::make_pair(zero, a);
  return std::nullopt;
}

std::optional<TwoSpeciesMatrix> modified_c_matrix(const std::string& label) {
  const auto& b = catalog_get(label);
  // applicable only when the fourth column is (0,0,0,1)^t
  if (!(is_zero(b.entries(0, 3)) && is_zero(b.entries(1, 3)) &&
        is_zero(b.entries(2, 3)) && b.entries(3, 3) == 1))
    return std::nullopt;
  RMat c = b.entries;
  c(0, 0) = 1;
  c(1, 0) = 0;
  c(2, 0) = 0;
  c(3, 0) = 0;
  return TwoSpeciesMatrix{"c" + b.label.substr(1), std::move(c)};
}

std::optional<InteractionMatrix> asymmetric_extend(const std::string& label, int N) {
  if (N < 2) throw DomainError("asymmetric_extend requires N >= 2");
  auto c = modified_c_matrix(label);
  if (!c) return std::nullopt;
  // c has first column e1 and fourth column e4, so its natural extension
  // always succeeds.
  auto ext = extend_natural(*c, N);
  InteractionMatrix big = extension_matrix(ext);
  // Species-1 self-interaction keeps b's first column, expressed in the
  // pair-(1,2) labels.
  const auto& b = catalog_get(label);
  auto lab12 = block_labels(1, 2, N);
  std::size_t col11 = pair_rank(1, 1, N);
  for (std::size_t r = 0; r < big.entries.rows(); ++r) big.entries(r, col11) = 0;
  for (std::size_t r4 = 0; r4 < 4; ++r4)
    big.entries(lab12[r4], col11) = b.entries(r4, 0);
  big.provenance = "asym:" + b.label;
  if (!big.column_sums_are_one())
    throw Error("asymmetric extension of " + b.label + " lost column-sum-1");
  return big;
}

InteractionMatrix matrix_from_selector(const std::string& selector, int N) {
  const auto colon = selector.find(':');
  const std::string head =
      colon == std::string::npos ? selector : selector.substr(0, colon);
  const std::string rest =
      colon == std::string::npos ? "" : selector.substr(colon + 1);

  auto extend = [&](const TwoSpeciesMatrix& m) {
    auto res = extend_natural(m, N);
    if (!extension_ok(res))
      throw DomainError("matrix " + m.label + " has no natural extension to N=" +
                        std::to_string(N) + ": " +
                        extension_conflict(res).describe());
    return extension_matrix(res);
  };

  if (head == "bar") return extend(bar(catalog_get(rest)));
  if (head == "mix") {
    auto parts = split_list(rest, ',');
    if (parts.size() != 3) throw DomainError("mix selector needs bI,bJ,a");
    return extend(convex_mix(parts[0], parts[1], rat_from_string(parts[2])));
  }
  if (head == "param") {
    auto parts = split_list(rest, ',');
    if (parts.size() != 2)
      throw DomainError("param selector needs lambda,lambda'");
    return param_family_extension(rat_from_string(parts[0]),
                                  rat_from_string(parts[1]), N);
  }
  if (head == "asym") {
    auto res = asymmetric_extend(rest, N);
    if (!res)
      throw DomainError("asymmetric extension not applicable to " + rest +
                        " (fourth column is not (0,0,0,1)^t)");
    return *res;
  }
  return extend(catalog_get(selector));
}

}  // namespace mtasep
