#pragma once

#include <json.hpp>

#include "mtasep/bethe.hpp"
#include "mtasep/catalog.hpp"
#include "mtasep/integrability.hpp"
#include "mtasep/simulator.hpp"

namespace mtasep {

using Json = nlohmann::json;

// {"label", "N", "rows": [[[num,den], ...] per row]} with exact entries.
Json matrix_to_json(const std::string& label, int N, const RMat& m);
Json matrix_to_json(const TwoSpeciesMatrix& m);
Json matrix_to_json(const InteractionMatrix& m);

// Validates shape and exact column sums of 1.
InteractionMatrix matrix_from_json(const Json& doc);

Json verdict_to_json(const IntegrabilityVerdict& v);
Json kernel_to_json(const TransitionKernel& k);
Json sim_to_json(const SimOutcome& s);

}  // namespace mtasep
