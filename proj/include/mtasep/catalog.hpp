#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mtasep/matrix.hpp"
#include "mtasep/rational.hpp"

namespace mtasep {

// A 4x4 two-particle interaction rule with rows/columns labelled
// 11,12,21,22. Columns always sum to 1; entries may be negative
// (such rules are algebraic only and rejected by the simulator).
struct TwoSpeciesMatrix {
  std::string label;
  RMat entries;  // 4x4

  bool stochastic() const;
  bool column_sums_are_one() const;
};

// All catalog labels, "b1".."b28".
const std::vector<std::string>& catalog_labels();

// Exact catalog lookup; accepts "b7" and zero-padded "b07".
// Throws UnknownLabelError.
const TwoSpeciesMatrix& catalog_get(const std::string& label);
const TwoSpeciesMatrix& catalog_get(int index);  // 1..28

// Species relabelling 1<->2: permutes rows and columns by 11<->22, 12<->21.
TwoSpeciesMatrix bar(const TwoSpeciesMatrix& m);

// An N^2 x N^2 two-particle rule over N species.
struct InteractionMatrix {
  int N = 2;
  RMat entries;  // N^2 x N^2
  std::string provenance;

  bool column_sums_are_one() const;
  bool stochastic() const;
};

// Conflict found while extending a 4x4 rule to N species: two pair
// blocks prescribe different values for the same cell.
struct ExtensionConflict {
  std::size_t row = 0, col = 0;   // cell in the N^2 x N^2 grid
  std::string row_label, col_label;
  Rational existing, incoming;
  std::pair<int, int> existing_pair{0, 0};  // species pair that wrote first
  std::pair<int, int> incoming_pair{0, 0};

  std::string describe() const;
};

using NaturalExtensionResult = std::variant<InteractionMatrix, ExtensionConflict>;

// Reinterprets the labels 11,12,21,22 as ii,ij,ji,jj for every pair
// i<j. Each pair block writes its 16 cells and additionally claims zero
// at every cell of its columns outside its own rows (a hidden state
// resolves inside its pair block); any disagreement is a conflict.
NaturalExtensionResult extend_natural(const TwoSpeciesMatrix& m, int N);

inline bool extension_ok(const NaturalExtensionResult& r) {
  return std::holds_alternative<InteractionMatrix>(r);
}
inline const InteractionMatrix& extension_matrix(const NaturalExtensionResult& r) {
  return std::get<InteractionMatrix>(r);
}
inline const ExtensionConflict& extension_conflict(const NaturalExtensionResult& r) {
  return std::get<ExtensionConflict>(r);
}

// Entrywise a*b^(i) + (1-a)*b^(j). Any catalog pair is allowed; whether
// the mixture is integrable is the classifier's business.
TwoSpeciesMatrix convex_mix(const std::string& label_i, const std::string& label_j,
                            const Rational& a);

// Two-parameter infection rule: diagonal (1, lambda, lambda', 1) with
// conversion weights 1-lambda at (22,12) and 1-lambda' at (22,21).
// Requires 0 <= lambda, lambda' <= 1.
TwoSpeciesMatrix param_family(const Rational& lambda, const Rational& lambda_prime);

// Direct N-species form of the infection rule: per pair i<j the block
// keeps ij with weight lambda (else converts to jj) and ji with weight
// lambda' (else converts to jj). Coincides with the natural extension
// of param_family (tested).
InteractionMatrix param_family_extension(const Rational& lambda,
                                         const Rational& lambda_prime, int N);

// (lambda, lambda') realizing the mixture a*b^(i)+(1-a)*b^(j) inside the
// two-parameter family, when the mixture is of that form.
std::optional<std::pair<Rational, Rational>> param_of_mixture(int i, int j,
                                                              const Rational& a);

// b^(l) with its first column replaced by (1,0,0,0)^t; only defined when
// the fourth column is (0,0,0,1)^t.
std::optional<TwoSpeciesMatrix> modified_c_matrix(const std::string& label);

// Builds an N-species rule from a selector string:
//   bK | bar:bK | mix:bI,bJ,a | param:lambda,lambda' | asym:bK
// Plain labels, bar and mix go through the natural extension (a
// DomainError explains any inconsistency).
InteractionMatrix matrix_from_selector(const std::string& selector, int N);

// N-species rule where the species-1 self-interaction keeps b^(l)'s
// first column (mapped onto pair-(1,2) labels) and every pair block is
// governed by c^(l). Empty when b^(l)'s fourth column is not (0,0,0,1)^t.
std::optional<InteractionMatrix> asymmetric_extend(const std::string& label, int N);

}  // namespace mtasep
