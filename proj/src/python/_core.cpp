#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mtasep/bethe.hpp"
#include "mtasep/integrability.hpp"
#include "mtasep/jsonio.hpp"
#include "mtasep/simulator.hpp"
#include "mtasep/version.hpp"

namespace py = pybind11;
using namespace mtasep;

namespace {

py::object json_to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null:
      return py::none();
    case Json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case Json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case Json::value_t::number_float:
      return py::float_(j.get<double>());
    case Json::value_t::string:
      return py::str(j.get<std::string>());
    case Json::value_t::array: {
      py::list out;
      for (const auto& v : j) out.append(json_to_py(v));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it)
        out[py::str(it.key())] = json_to_py(it.value());
      return out;
    }
    default:
      return py::none();
  }
}

Rule parse_rule(const std::string& s) {
  if (s == "backward") return Rule::Backward;
  if (s == "drop-push" || s == "droppush") return Rule::DropPush;
  throw DomainError("unknown rule '" + s + "' (backward | drop-push)");
}

py::object py_catalog_matrix(const std::string& label) {
  return json_to_py(matrix_to_json(catalog_get(label)));
}

py::object py_bar(const std::string& label) {
  return json_to_py(matrix_to_json(bar(catalog_get(label))));
}

py::object py_build_matrix(const std::string& selector, int N) {
  return json_to_py(matrix_to_json(matrix_from_selector(selector, N)));
}

py::object py_extend_natural(const std::string& label, int N) {
  auto res = extend_natural(catalog_get(label), N);
  Json doc;
  doc["ok"] = extension_ok(res);
  if (extension_ok(res)) {
    doc["matrix"] = matrix_to_json(extension_matrix(res));
  } else {
    const auto& c = extension_conflict(res);
    doc["conflict"] = Json{{"cell", Json::array({c.row_label, c.col_label})},
                           {"existing", to_string(c.existing)},
                           {"incoming", to_string(c.incoming)},
                           {"existing_pair", c.existing_pair},
                           {"incoming_pair", c.incoming_pair},
                           {"description", c.describe()}};
  }
  return json_to_py(doc);
}

py::object py_check_yang_baxter(const std::string& selector, int N,
                                const std::string& rule, int samples,
                                std::uint64_t seed) {
  auto B = matrix_from_selector(selector, N);
  return json_to_py(verdict_to_json(check_yang_baxter(B, samples, parse_rule(rule), seed)));
}

py::object py_classify(const std::string& sweep, const std::string& rule_arg,
                       int samples, std::uint64_t seed) {
  Rule rule = parse_rule(rule_arg);
  Json doc{{"sweep", sweep}, {"rule", rule_arg}, {"samples", samples}, {"seed", seed}};
  if (sweep == "natural") {
    auto cls = classify_natural_extensions(samples, seed, rule);
    doc["integrable"] = cls.integrable;
    doc["expected"] = known_natural_set();
    doc["match"] = cls.integrable == known_natural_set();
  } else if (sweep == "convex") {
    auto cls = classify_convex_mixtures({rat(1, 4), rat(1, 2), rat(3, 4)}, samples,
                                        seed, rule);
    Json pairs = Json::array();
    for (const auto& [i, j] : cls.integrable) pairs.push_back(Json::array({i, j}));
    doc["integrable_pairs"] = std::move(pairs);
    doc["match"] = cls.integrable == known_convex_pairs();
  } else if (sweep == "param") {
    auto cls = classify_param_family(param_grid(5), samples, seed, rule);
    doc["match"] = cls.all_pass();
  } else if (sweep == "asymmetric") {
    auto cls = classify_asymmetric_extensions(samples, seed, rule);
    doc["integrable"] = cls.integrable;
    doc["expected"] = known_asymmetric_set();
    doc["match"] = cls.integrable == known_asymmetric_set();
  } else {
    throw DomainError("unknown sweep '" + sweep + "'");
  }
  return json_to_py(doc);
}

py::object py_kernel(const std::string& selector, int N, const std::string& rule_arg,
                     const std::vector<long>& Y, const std::vector<long>& X,
                     double t, double r, int M) {
  Rule rule = parse_rule(rule_arg);
  auto B = matrix_from_selector(selector, N);
  QuadratureSpec quad = default_quadrature(rule);
  if (r > 0) quad.radius = r;
  if (M > 0) quad.nodes = M;
  return json_to_py(kernel_to_json(kernel(B, rule, Y, X, t, quad)));
}

py::object py_conservation(const std::string& selector, int N,
                           const std::string& rule_arg, const std::vector<long>& Y,
                           double t) {
  Rule rule = parse_rule(rule_arg);
  auto B = matrix_from_selector(selector, N);
  auto totals = conservation_totals(B, rule, Y, t, default_quadrature(rule));
  py::list out;
  for (double v : totals) out.append(v);
  return out;
}

py::object py_simulate(const std::string& selector, int N,
                       const std::string& rule_arg, const std::vector<long>& positions,
                       const std::vector<int>& species, double t, long trials,
                       std::uint64_t seed) {
  Rule rule = parse_rule(rule_arg);
  auto B = matrix_from_selector(selector, N);
  Configuration initial{positions, species};
  return json_to_py(sim_to_json(simulate(initial, B, rule, t, trials, seed)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "integrable multispecies exclusion processes: catalog, "
            "Yang-Baxter checks, Bethe-ansatz kernels, simulation";
  m.attr("__version__") = kVersion;

  py::register_exception<UnknownLabelError>(m, "UnknownLabelError");
  py::register_exception<NonStochasticError>(m, "NonStochasticError");

  m.def("catalog_labels", [] { return catalog_labels(); },
        "all two-species rule labels");
  m.def("catalog_matrix", &py_catalog_matrix, py::arg("label"),
        "one 4x4 rule as {'label','N','rows'} with exact [num,den] entries");
  m.def("bar_matrix", &py_bar, py::arg("label"),
        "the rule with species labels 1 and 2 interchanged");
  m.def("build_matrix", &py_build_matrix, py::arg("selector"), py::arg("N"),
        "N-species rule from a selector (bK, bar:bK, mix:bI,bJ,a, "
        "param:l,l', asym:bK)");
  m.def("extend_natural", &py_extend_natural, py::arg("label"), py::arg("N"),
        "natural extension, or the conflict that obstructs it");
  m.def("check_yang_baxter", &py_check_yang_baxter, py::arg("selector"),
        py::arg("N") = 3, py::arg("rule") = "backward", py::arg("samples") = 5,
        py::arg("seed") = 42,
        "exact-rational verdict on relations (a), (b), (c)");
  m.def("classify", &py_classify, py::arg("sweep"), py::arg("rule") = "backward",
        py::arg("samples") = 5, py::arg("seed") = 42,
        "run one of the sweeps: natural | convex | param | asymmetric");
  m.def("kernel", &py_kernel, py::arg("selector"), py::arg("N"), py::arg("rule"),
        py::arg("Y"), py::arg("X"), py::arg("t"), py::arg("r") = 0.0,
        py::arg("M") = 0, "transition kernel by contour quadrature");
  m.def("conservation", &py_conservation, py::arg("selector"), py::arg("N"),
        py::arg("rule"), py::arg("Y"), py::arg("t"),
        "windowed kernel column sums (each should be 1)");
  m.def("simulate", &py_simulate, py::arg("selector"), py::arg("N"),
        py::arg("rule"), py::arg("positions"), py::arg("species"), py::arg("t"),
        py::arg("trials"), py::arg("seed"),
        "continuous-time simulation histogram");
}
