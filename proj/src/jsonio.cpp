#include "mtasep/jsonio.hpp"

#include "mtasep/species.hpp"
#include "mtasep/version.hpp"

namespace mtasep {

namespace {

Json rational_pair(const Rational& q) {
  const mpz_class num = q.get_num(), den = q.get_den();
  if (!num.fits_slong_p() || !den.fits_slong_p())
    throw DomainError("rational too large for JSON numerator/denominator");
  return Json::array({num.get_si(), den.get_si()});
}

Json rows_of(const RMat& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_pair(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Json matrix_to_json(const std::string& label, int N, const RMat& m) {
  return Json{{"label", label}, {"N", N}, {"rows", rows_of(m)}};
}

Json matrix_to_json(const TwoSpeciesMatrix& m) {
  return matrix_to_json(m.label, 2, m.entries);
}

Json matrix_to_json(const InteractionMatrix& m) {
  return matrix_to_json(m.provenance, m.N, m.entries);
}

InteractionMatrix matrix_from_json(const Json& doc) {
  const int N = doc.at("N").get<int>();
  if (N < 2) throw DomainError("matrix JSON: N must be >= 2");
  const auto& rows = doc.at("rows");
  const std::size_t dim = pow_sz(N, 2);
  if (rows.size() != dim) throw DomainError("matrix JSON: wrong row count");
  RMat m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto& row = rows.at(i);
    if (row.size() != dim) throw DomainError("matrix JSON: wrong column count");
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& cell = row.at(j);
      m(i, j) = rat(cell.at(0).get<long>(), cell.at(1).get<long>());
    }
  }
  InteractionMatrix out{N, std::move(m), doc.value("label", std::string("imported"))};
  if (!out.column_sums_are_one())
    throw DomainError("matrix JSON: columns do not sum to 1");
  return out;
}

Json verdict_to_json(const IntegrabilityVerdict& v) {
  Json j{{"subject", v.subject},
         {"rule", rule_name(v.rule)},
         {"seed", v.seed},
         {"samples", v.samples},
         {"passes_a", v.passes_a},
         {"passes_b", v.passes_b},
         {"passes_c", v.passes_c},
         {"integrable", v.integrable()}};
  if (v.witness) {
    const auto& w = *v.witness;
    j["witness"] = Json{{"relation", std::string(1, w.relation)},
                        {"xi", w.xi},
                        {"row", w.row},
                        {"col", w.col},
                        {"row_label", w.row_label},
                        {"col_label", w.col_label},
                        {"violation", w.violation},
                        {"sample_index", w.sample_index}};
  }
  return j;
}

Json kernel_to_json(const TransitionKernel& k) {
  Json entries = Json::array();
  for (const auto& v : k.matrix.data())
    entries.push_back(Json::array({v.real(), v.imag()}));
  return Json{{"X", k.X},
              {"Y", k.Y},
              {"t", k.t},
              {"rule", rule_name(k.rule)},
              {"matrix_label", k.matrix_label},
              {"N", k.N},
              {"n", k.n},
              {"entries", std::move(entries)},
              {"quadrature", Json{{"r", k.quad.radius}, {"M", k.quad.nodes}}},
              {"max_imag", k.max_imag},
              {"version", kVersion}};
}

Json sim_to_json(const SimOutcome& s) {
  Json hist = Json::object();
  for (const auto& [key, count] : s.histogram) hist[key] = count;
  return Json{{"initial", s.initial.key()},
              {"histogram", std::move(hist)},
              {"trials", s.trials},
              {"t", s.t},
              {"rule", rule_name(s.rule)},
              {"seed", s.seed},
              {"version", kVersion}};
}

}  // namespace mtasep
