// Command-line surface: catalog inspection/export, integrability
// classification sweeps, transition-kernel computation, and Monte-Carlo
// cross-validation of kernels.
//
// Exit codes: 0 success, 1 result mismatch (classification deviates from
// the certified sets, or a |z| exceeds the threshold), 2 usage error,
// 3 numerical failure (singularities, poles, non-convergence).

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mtasep/bethe.hpp"
#include "mtasep/integrability.hpp"
#include "mtasep/jsonio.hpp"
#include "mtasep/simulator.hpp"
#include "mtasep/species.hpp"
#include "mtasep/version.hpp"

using namespace mtasep;

namespace {

struct MismatchExit {};  // result disagrees with the certified sets

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(tok);
  return out;
}

std::vector<long> parse_positions(const std::string& s) {
  std::vector<long> out;
  for (const auto& tok : split(s, ',')) out.push_back(std::stol(tok));
  return out;
}

Rule parse_rule(const std::string& s) {
  if (s == "backward") return Rule::Backward;
  if (s == "drop-push" || s == "droppush") return Rule::DropPush;
  throw DomainError("unknown rule '" + s + "' (backward | drop-push)");
}


void emit(const Json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw DomainError("cannot open output file " + out_path);
    f << doc.dump(2) << "\n";
  }
}

std::string fmt6(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

void print_matrix_table(const std::string& label, int N, const RMat& m) {
  std::cout << label << "  (" << m.rows() << "x" << m.cols() << ")\n";
  std::cout << "      ";
  for (std::size_t j = 0; j < m.cols(); ++j)
    std::cout << std::setw(6) << word_string(j, N, 2);
  std::cout << "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::cout << std::setw(6) << word_string(i, N, 2);
    for (std::size_t j = 0; j < m.cols(); ++j)
      std::cout << std::setw(6) << to_string(m(i, j));
    std::cout << "\n";
  }
}

Json run_config(std::initializer_list<std::pair<std::string, Json>> fields) {
  Json cfg{{"version", kVersion}};
  for (const auto& [k, v] : fields) cfg[k] = v;
  return cfg;
}

// ---- classify ----

int cmd_classify(const std::string& what, Rule rule, int samples,
                 std::uint64_t seed, const std::string& a_values_arg,
                 int grid_points, const std::string& out_path,
                 const std::string& format) {
  Json doc;
  doc["config"] = run_config({{"command", "classify"},
                              {"sweep", what},
                              {"rule", rule_name(rule)},
                              {"samples", samples},
                              {"seed", seed}});
  bool match = true;
  std::ostringstream table;

  if (what == "natural") {
    auto cls = classify_natural_extensions(samples, seed, rule);
    match = cls.integrable == known_natural_set();
    Json verdicts = Json::array();
    for (const auto& [l, v] : cls.verdicts) verdicts.push_back(verdict_to_json(v));
    Json inconsistent = Json::array();
    for (const auto& [l, c] : cls.inconsistent)
      inconsistent.push_back(Json{{"label", "b" + std::to_string(l)},
                                  {"conflict", c.describe()}});
    doc["integrable"] = cls.integrable;
    doc["expected"] = known_natural_set();
    doc["verdicts"] = std::move(verdicts);
    doc["inconsistent"] = std::move(inconsistent);
    table << "natural extensions (" << rule_name(rule) << "): ";
    for (int l : cls.integrable) table << "b" << l << " ";
  } else if (what == "convex") {
    std::vector<Rational> weights;
    for (const auto& tok : split(a_values_arg, ','))
      weights.push_back(rat_from_string(tok));
    auto cls = classify_convex_mixtures(weights, samples, seed, rule);
    match = cls.integrable == known_convex_pairs();
    Json pairs = Json::array();
    for (const auto& [i, j] : cls.integrable)
      pairs.push_back(Json::array({i, j}));
    Json verdicts = Json::array();
    for (const auto& [pr, vs] : cls.verdicts)
      for (const auto& v : vs) verdicts.push_back(verdict_to_json(v));
    doc["config"]["a_values"] = a_values_arg;
    doc["integrable_pairs"] = std::move(pairs);
    doc["verdicts"] = std::move(verdicts);
    table << "convex mixtures (" << rule_name(rule) << "): ";
    for (const auto& [i, j] : cls.integrable) table << "(" << i << "," << j << ") ";
  } else if (what == "param") {
    auto cls = classify_param_family(param_grid(grid_points), samples, seed, rule);
    match = cls.all_pass();
    Json points = Json::array();
    for (const auto& [pt, v] : cls.points)
      points.push_back(Json{{"lambda", to_string(pt.first)},
                            {"lambda_prime", to_string(pt.second)},
                            {"integrable", v.integrable()}});
    doc["config"]["grid_points"] = grid_points;
    doc["points"] = std::move(points);
    table << "param family (" << rule_name(rule) << "): " << cls.points.size()
          << " grid points, " << (match ? "all pass" : "FAILURES");
  } else if (what == "asymmetric") {
    auto cls = classify_asymmetric_extensions(samples, seed, rule);
    match = cls.integrable == known_asymmetric_set();
    Json verdicts = Json::array();
    for (const auto& [l, v] : cls.verdicts) verdicts.push_back(verdict_to_json(v));
    doc["integrable"] = cls.integrable;
    doc["expected"] = known_asymmetric_set();
    doc["not_applicable"] = cls.not_applicable;
    doc["verdicts"] = std::move(verdicts);
    table << "asymmetric extensions (" << rule_name(rule) << "): ";
    for (int l : cls.integrable) table << "b" << l << " ";
  } else {
    throw DomainError("unknown sweep '" + what + "'");
  }

  doc["match"] = match;
  if (format == "table") {
    std::cout << table.str() << "\n"
              << (match ? "MATCH with the certified sets" : "MISMATCH") << "\n";
  } else {
    emit(doc, out_path);
  }
  if (!match) throw MismatchExit{};
  return 0;
}

// ---- kernel ----

int cmd_kernel(const std::string& selector, int N, Rule rule,
               const std::string& y_arg, const std::string& x_arg, double t,
               double radius, int nodes, const std::string& species_in,
               bool conserve, const std::string& out_path,
               const std::string& format) {
  auto B = matrix_from_selector(selector, N);
  QuadratureSpec quad = default_quadrature(rule);
  if (radius > 0) quad.radius = radius;
  if (nodes > 0) quad.nodes = nodes;
  auto Y = parse_positions(y_arg);

  if (conserve) {
    auto totals = conservation_totals(B, rule, Y, t, quad);
    Json doc;
    doc["config"] = run_config({{"command", "kernel"},
                                {"matrix", selector},
                                {"N", N},
                                {"rule", rule_name(rule)},
                                {"Y", Y},
                                {"t", t},
                                {"r", quad.radius},
                                {"M", quad.nodes},
                                {"conserve", true}});
    Json per_column = Json::object();
    for (std::size_t nu = 0; nu < totals.size(); ++nu)
      per_column[word_string(nu, N, static_cast<int>(Y.size()))] = totals[nu];
    doc["totals"] = std::move(per_column);
    emit(doc, out_path);
    return 0;
  }

  auto X = parse_positions(x_arg);
  auto K = kernel(B, rule, Y, X, t, quad);
  if (format == "json") {
    Json doc = kernel_to_json(K);
    doc["config"] = run_config({{"command", "kernel"},
                                {"matrix", selector},
                                {"N", N}});
    emit(doc, out_path);
    return 0;
  }

  const std::size_t dim = K.matrix.rows();
  const int n = K.n;
  if (format == "csv") {
    std::ostringstream csv;
    csv << "pi,nu,re,im\n";
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        csv << word_string(i, N, n) << "," << word_string(j, N, n) << ","
            << std::setprecision(17) << K.matrix(i, j).real() << ","
            << K.matrix(i, j).imag() << "\n";
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream f(out_path);
      f << csv.str();
    }
    return 0;
  }

  // table: one block, 6 significant digits, optionally a single column
  std::cout << "kernel " << selector << " rule=" << rule_name(rule) << " t=" << t
            << " max_imag=" << fmt6(K.max_imag) << "\n";
  for (std::size_t j = 0; j < dim; ++j) {
    std::string nu = word_string(j, N, n);
    if (!species_in.empty() && nu != species_in) continue;
    for (std::size_t i = 0; i < dim; ++i) {
      double re = K.matrix(i, j).real();
      if (std::abs(re) < 1e-15) continue;
      std::cout << "  P[" << word_string(i, N, n) << " <- " << nu
                << "] = " << fmt6(re) << "\n";
    }
  }
  return 0;
}

// ---- validate ----

int cmd_validate(const std::string& selector, int N, Rule rule,
                 const std::string& y_arg, const std::string& species_in,
                 double t, long trials, int top, double threshold,
                 std::uint64_t seed, double radius, int nodes,
                 const std::string& out_path, const std::string& format) {
  auto B = matrix_from_selector(selector, N);
  auto Y = parse_positions(y_arg);
  const int n = static_cast<int>(Y.size());
  Configuration initial;
  initial.positions = Y;
  for (char c : species_in) initial.species.push_back(c - '0');
  if (!initial.valid(N)) throw DomainError("invalid initial configuration");

  QuadratureSpec quad = default_quadrature(rule);
  if (radius > 0) quad.radius = radius;
  if (nodes > 0) quad.nodes = nodes;

  const std::size_t nu = word_rank(initial.species, N);
  auto window = reachable_window(Y, t);
  auto kernels = kernel_batch(B, rule, Y, window, t, quad);

  struct Entry {
    std::string key;
    double p;
  };
  std::vector<Entry> entries;
  const std::size_t dim = pow_sz(N, n);
  for (std::size_t w = 0; w < window.size(); ++w)
    for (std::size_t row = 0; row < dim; ++row) {
      double p = kernels[w].matrix(row, nu).real();
      if (p < 1e-12) continue;
      Configuration c;
      c.positions = window[w];
      c.species = word_unrank(row, N, n);
      entries.push_back({c.key(), p});
    }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.p > b.p; });
  if (static_cast<int>(entries.size()) > top) entries.resize(static_cast<std::size_t>(top));

  auto sim = simulate(initial, B, rule, t, trials, seed);

  Json rows = Json::array();
  bool ok = true;
  std::ostringstream table;
  table << "state                p_kernel     p_mc         z\n";
  for (const auto& e : entries) {
    auto it = sim.histogram.find(e.key);
    double hits = it == sim.histogram.end() ? 0.0 : double(it->second);
    double phat = hits / double(trials);
    double se = std::sqrt(e.p * (1.0 - e.p) / double(trials));
    double z = se > 0 ? (phat - e.p) / se : 0.0;
    ok = ok && std::abs(z) <= threshold;
    rows.push_back(Json{{"state", e.key},
                        {"p_kernel", e.p},
                        {"p_mc", phat},
                        {"z", z}});
    table << std::left << std::setw(20) << e.key << " " << std::setw(12)
          << fmt6(e.p) << " " << std::setw(12) << fmt6(phat) << " " << fmt6(z)
          << "\n";
  }

  Json doc;
  doc["config"] = run_config({{"command", "validate"},
                              {"matrix", selector},
                              {"N", N},
                              {"rule", rule_name(rule)},
                              {"initial", initial.key()},
                              {"t", t},
                              {"trials", trials},
                              {"top", top},
                              {"threshold", threshold},
                              {"seed", seed},
                              {"r", quad.radius},
                              {"M", quad.nodes}});
  doc["comparison"] = std::move(rows);
  doc["all_within_threshold"] = ok;
  if (format == "table") {
    std::cout << table.str();
    std::cout << (ok ? "all |z| within threshold" : "THRESHOLD EXCEEDED") << "\n";
  } else {
    emit(doc, out_path);
  }
  if (!ok) throw MismatchExit{};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multispecies exclusion-process integrability toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // catalog
  auto* cat = app.add_subcommand("catalog", "inspect or export the 4x4 rule catalog");
  cat->require_subcommand(1);
  auto* cat_list = cat->add_subcommand("list", "print all labels");
  std::string show_label;
  auto* cat_show = cat->add_subcommand("show", "print one rule");
  cat_show->add_option("label", show_label)->required();
  std::string cat_show_format = "table";
  cat_show->add_option("--format", cat_show_format)
      ->check(CLI::IsMember({"table", "json"}));
  std::string export_path, import_path;
  auto* cat_export = cat->add_subcommand("export", "write the catalog as JSON");
  cat_export->add_option("path", export_path)->required();
  auto* cat_import = cat->add_subcommand("import", "read, validate, reprint a matrix document");
  cat_import->add_option("path", import_path)->required();

  // classify
  std::string sweep, rule_arg = "backward", a_values = "1/4,1/2,3/4";
  int samples = 5, grid_points = 5;
  std::uint64_t seed = 42;
  std::string out_path, format = "json";
  auto* cls = app.add_subcommand("classify", "run an integrability sweep at N=3");
  cls->add_option("sweep", sweep, "natural | convex | param | asymmetric")->required();
  cls->add_option("--rule", rule_arg, "backward | drop-push");
  cls->add_option("--samples", samples, "exact spectral samples per verdict");
  cls->add_option("--seed", seed);
  cls->add_option("--a-values", a_values, "mixture weights, comma separated");
  cls->add_option("--grid-points", grid_points, "param grid points per axis");
  cls->add_option("--out", out_path);
  cls->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  // kernel
  std::string k_matrix, k_Y = "0,1", k_X, k_species;
  int k_N = 2, k_M = 0;
  double k_t = 1.0, k_r = 0.0;
  bool k_conserve = false;
  std::string k_out, k_format = "json", k_rule = "backward";
  auto* ker = app.add_subcommand("kernel", "evaluate a transition kernel by contour quadrature");
  ker->add_option("--matrix", k_matrix, "bK | bar:bK | mix:bI,bJ,a | param:l,l' | asym:bK")->required();
  ker->add_option("--N", k_N, "species count");
  ker->add_option("--rule", k_rule);
  ker->add_option("--Y", k_Y, "initial positions, comma separated")->required();
  ker->add_option("--X", k_X, "final positions, comma separated");
  ker->add_option("--t", k_t);
  ker->add_option("--r", k_r, "contour radius (default per rule)");
  ker->add_option("--M", k_M, "quadrature nodes per circle");
  ker->add_option("--species-in", k_species, "restrict table output to one initial word");
  ker->add_flag("--conserve", k_conserve, "sum kernel entries over the reachable window");
  ker->add_option("--out", k_out);
  ker->add_option("--format", k_format)->check(CLI::IsMember({"json", "csv", "table"}));

  // validate
  std::string v_matrix, v_Y = "0,1", v_species = "21", v_out, v_format = "table",
              v_rule = "backward";
  int v_N = 2, v_top = 20, v_M = 0;
  double v_t = 1.0, v_threshold = 4.0, v_r = 0.0;
  long v_trials = 100000;
  std::uint64_t v_seed = 7;
  auto* val = app.add_subcommand("validate", "cross-check a kernel against simulation");
  val->add_option("--matrix", v_matrix)->required();
  val->add_option("--N", v_N);
  val->add_option("--rule", v_rule);
  val->add_option("--Y", v_Y);
  val->add_option("--species-in", v_species, "initial species word");
  val->add_option("--t", v_t);
  val->add_option("--trials", v_trials);
  val->add_option("--top", v_top, "number of kernel-ranked states to compare");
  val->add_option("--threshold", v_threshold, "|z| limit");
  val->add_option("--seed", v_seed);
  val->add_option("--r", v_r);
  val->add_option("--M", v_M);
  val->add_option("--out", v_out);
  val->add_option("--format", v_format)->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cat_list) {
      for (const auto& label : catalog_labels()) std::cout << label << "\n";
      return 0;
    }
    if (*cat_show) {
      const auto& m = catalog_get(show_label);
      if (cat_show_format == "json")
        std::cout << matrix_to_json(m).dump(2) << "\n";
      else
        print_matrix_table(m.label, 2, m.entries);
      return 0;
    }
    if (*cat_export) {
      Json doc = Json::array();
      for (const auto& label : catalog_labels())
        doc.push_back(matrix_to_json(catalog_get(label)));
      emit(doc, export_path);
      return 0;
    }
    if (*cat_import) {
      std::ifstream f(import_path);
      if (!f) throw DomainError("cannot open " + import_path);
      Json doc = Json::parse(f);
      if (doc.is_array()) {
        for (const auto& entry : doc) (void)matrix_from_json(entry);
        std::cout << doc.dump(2) << "\n";
      } else {
        auto m = matrix_from_json(doc);
        std::cout << matrix_to_json(m).dump(2) << "\n";
      }
      return 0;
    }
    if (*cls)
      return cmd_classify(sweep, parse_rule(rule_arg), samples, seed, a_values,
                          grid_points, out_path, format);
    if (*ker)
      return cmd_kernel(k_matrix, k_N, parse_rule(k_rule), k_Y, k_X, k_t, k_r,
                        k_M, k_species, k_conserve, k_out, k_format);
    if (*val)
      return cmd_validate(v_matrix, v_N, parse_rule(v_rule), v_Y, v_species, v_t,
                          v_trials, v_top, v_threshold, v_seed, v_r, v_M, v_out,
                          v_format);
  } catch (const MismatchExit&) {
    return 1;
  } catch (const UnknownLabelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
