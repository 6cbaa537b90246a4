// Command line front end: polygon maps, limit measurements, integer
// searches, symbolic calculus and the acceptance suite.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "pentalab/acceptance.hpp"
#include "pentalab/errors.hpp"
#include "pentalab/gauge.hpp"
#include "pentalab/json_io.hpp"
#include "pentalab/limits.hpp"
#include "pentalab/psdo.hpp"
#include "pentalab/version.hpp"

using namespace pentalab;
using nlohmann::json;

namespace {

IndexSchema builtin_schema(const std::string& name) {
  if (name == "pentagram") return pentagram_schema();
  if (name == "syst2" || name == "crossed-diagonals") return crossed_diagonal_schema();
  fail(errc::bad_input, "unknown builtin schema '" + name + "' (pentagram, syst2)");
}

int cmd_map(const std::string& polygon_path, const std::string& schema_path,
            const std::string& builtin, int iters, bool check_equivalence, double tol,
            const std::string& out_path) {
  LiftedPolygon p = polygon_from_json(read_file(polygon_path));
  IndexSchema s = builtin.empty() ? schema_from_json(read_file(schema_path))
                                  : builtin_schema(builtin);
  LiftedPolygon current = p;
  bool projective_only = false;
  for (int i = 0; i < iters; ++i) {
    MapResult r = apply_schema(current, s);
    current = r.polygon;
    projective_only = projective_only || r.projective_only;
  }
  json report;
  report["version"] = PENTALAB_VERSION;
  report["schema"] = s.name;
  report["iters"] = iters;
  report["projective_only"] = projective_only;
  if (check_equivalence) {
    bool found = false;
    for (int shift = 0; shift < p.period() && !found; ++shift) {
      auto eq = projective_equivalence(shift_polygon(current, shift), p, tol);
      if (eq) {
        found = true;
        report["equivalent"] = true;
        report["shift"] = shift;
        report["residual"] = eq->residual;
      }
    }
    if (!found) report["equivalent"] = false;
    std::printf("equivalent: %s\n", found ? "yes" : "no");
    if (found)
      std::printf("shift %d, residual %.3e\n", report["shift"].get<int>(),
                  report["residual"].get<double>());
  }
  if (!out_path.empty()) {
    write_file(out_path, polygon_to_json(current));
    std::printf("wrote %s\n", out_path.c_str());
  }
  if (check_equivalence && !report["equivalent"].get<bool>()) return 1;
  return 0;
}

std::vector<double> parse_epsilons(const std::string& text, int expected_order) {
  if (text.empty()) return default_epsilons(expected_order);
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

int cmd_limit(const std::string& flavor, const std::string& schema_path, int m,
              const std::string& offsets_text, long a, long b, long c, double x,
              const std::string& eps_text, int curve_index, const std::string& out_path,
              const std::string& csv_path) {
  IndexSchema schema;
  int expected_order = 2;
  if (!schema_path.empty()) {
    schema = schema_from_json(read_file(schema_path));
    m = schema.dim;
  } else if (flavor == "seg-hyper") {
    std::vector<int> offsets;
    std::stringstream ss(offsets_text);
    std::string item;
    while (std::getline(ss, item, ',')) offsets.push_back(std::stoi(item));
    if (offsets.empty()) fail(errc::bad_input, "seg-hyper needs --offsets");
    schema = segment_hyperplane_schema(m, offsets);
  } else if (flavor == "syst2") {
    m = 2;
    schema = crossed_diagonal_schema();
  } else if (flavor == "rp3-ansatz") {
    m = 3;
    expected_order = 3;
    schema = rp3_ansatz_schema(a, b, c);
  } else if (flavor == "rp4") {
    m = 4;
    expected_order = 3;
    schema = rp4_plane_two_hyper_schema({7, -1, -7}, {3, -1, -3}, {6, -3, -4});
  } else {
    fail(errc::bad_input, "unknown flavor '" + flavor + "'");
  }

  auto curves = curve_library(m);
  if (curve_index < 0 || curve_index >= int(curves.size()))
    fail(errc::bad_input, "curve index out of range");
  const SmoothLiftedCurve& curve = curves[curve_index];

  LimitReport rep = fit_limit(curve, schema, x, parse_epsilons(eps_text, expected_order));
  std::printf("schema %s on %s at x=%.3f\n", schema.name.c_str(), curve.id().c_str(), x);
  std::printf("fitted order %.4f (R^2 %.6f), dominant component %d\n", rep.fitted_order,
              rep.fit_r2, rep.dominant_index);
  std::printf("extrapolated coefficients:");
  for (double v : rep.extrapolated_coeffs) std::printf(" %.8g", v);
  std::printf("\nnormalization oracle %.8g (deviation %.2e), drift %.2e\n", rep.r0_oracle,
              rep.r0_deviation, rep.tangential_drift);
  if (!out_path.empty()) write_file(out_path, limit_report_to_json(rep));
  if (!csv_path.empty()) write_file(csv_path, limit_report_to_csv(rep));
  return 0;
}

int cmd_search(const std::string& which, int max_abs, const std::string& q_text, int threads,
               const std::string& out_path) {
  if (which == "rp3") {
    Rat q = rat_parse(q_text.empty() ? "1/8" : q_text);
    auto hits = rp3_search(max_abs, q, threads);
    std::printf("rp3 search max_abs=%d q=%s threads=%d: %zu solutions\n", max_abs,
                rat_str(q).c_str(), threads, hits.size());
    for (const auto& h : hits)
      std::printf("  (%ld,%ld,%ld) (%ld,%ld,%ld) (%ld,%ld,%ld)\n", h.m[0], h.m[1], h.m[2],
                  h.n[0], h.n[1], h.n[2], h.r[0], h.r[1], h.r[2]);
    if (!out_path.empty()) write_file(out_path, rp3_results_to_json(hits, max_abs, q, threads));
  } else if (which == "rp4") {
    auto hits = rp4_search(max_abs, threads);
    std::printf("rp4 search max_abs=%d threads=%d: %zu solutions\n", max_abs, threads,
                hits.size());
    for (const auto& h : hits)
      std::printf("  m=(%ld,%ld,%ld) n=(%ld,%ld,%ld) r=(%ld,%ld,%ld)\n", h.m[0], h.m[1], h.m[2],
                  h.n[0], h.n[1], h.n[2], h.r[0], h.r[1], h.r[2]);
    if (!out_path.empty()) write_file(out_path, rp4_results_to_json(hits, max_abs, threads));
  } else {
    fail(errc::bad_input, "search target must be rp3 or rp4");
  }
  return 0;
}

int cmd_psdo(int order, const std::string& exponent, int depth, const std::string& out_path) {
  auto slash = exponent.find('/');
  if (slash == std::string::npos) fail(errc::bad_input, "exponent must look like R/S");
  int r = std::stoi(exponent.substr(0, slash));
  int s = std::stoi(exponent.substr(slash + 1));
  if (s != order)
    fail(errc::bad_input, "exponent denominator must equal the operator order");
  DiffPoly density = hamiltonian_density(order, r, depth > 0 ? std::optional<int>(depth)
                                                             : std::nullopt);
  std::printf("res(L^{%d/%d}) = %s\n", r, s, density.str().c_str());
  std::printf("variational derivative (descending):\n");
  for (int i = order - 2; i >= 0; --i)
    std::printf("  d/dk%d: %s\n", i, density.euler(JetVar::k, i).str().c_str());
  if (!out_path.empty()) write_file(out_path, diffpoly_to_json(density));
  return 0;
}

int cmd_gauge(int n) {
  std::printf("gauge matrix g (n=%d):\n%s", n, gauge_matrix(n).str().c_str());
  std::printf("dictionary:\n");
  auto dict = kappa_dictionary(n);
  for (int i = 0; i < n; ++i) std::printf("  k%d = %s\n", i, dict[i].str().c_str());
  std::printf("inverse dictionary:\n");
  auto inv = inverse_kappa_dictionary(n);
  for (int i = 0; i < n; ++i) std::printf("  kappa%d = %s\n", i, inv[i].str().c_str());
  bool zero = gauge_residual(n).is_zero();
  std::printf("gauge residual identically zero: %s\n", zero ? "yes" : "NO");
  std::printf("frechet matrix (rows k, columns kappa, descending):\n%s",
              change_of_variables_adjoint(n).str().c_str());
  return zero ? 0 : 1;
}

int cmd_verify_all(const AcceptanceConfig& config, bool detail, const std::string& out_path) {
  auto results = run_all_criteria(config);
  std::string text = format_results(results, detail);
  std::fputs(text.c_str(), stdout);
  if (!out_path.empty()) {
    json j;
    j["version"] = PENTALAB_VERSION;
    j["seed"] = config.seed;
    j["threads"] = config.threads;
    j["tolerance_scale"] = config.tolerance_scale;
    json rs = json::array();
    for (const auto& r : results) {
      json e;
      e["id"] = r.id;
      e["title"] = r.title;
      e["pass"] = r.pass;
      e["seconds"] = r.seconds;
      e["detail"] = r.detail;
      rs.push_back(e);
    }
    j["results"] = rs;
    write_file(out_path, j.dump(2));
  }
  for (const auto& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized pentagram maps, AGD limits and index searches"};
  app.set_version_flag("--version", PENTALAB_VERSION);
  app.require_subcommand(1);

  // map
  auto* map = app.add_subcommand("map", "apply a schema map to a polygon file");
  std::string polygon_path, schema_path, builtin, out_path;
  int iters = 1;
  bool check_equivalence = false;
  double tol = 1e-9;
  map->add_option("--polygon", polygon_path, "polygon JSON file")->required();
  map->add_option("--schema", schema_path, "schema JSON file");
  map->add_option("--builtin", builtin, "builtin schema name (pentagram, syst2)");
  map->add_option("--iters", iters, "number of applications");
  map->add_flag("--check-equivalence", check_equivalence,
                "test projective equivalence with the input");
  map->add_option("--tol", tol, "equivalence residual tolerance");
  map->add_option("--out", out_path, "write the image polygon JSON here");

  // limit
  auto* limit = app.add_subcommand("limit", "measure a continuous limit");
  std::string flavor = "seg-hyper", offsets_text, eps_text, limit_csv;
  std::string limit_out, limit_schema;
  int limit_m = 3, curve_index = 0;
  long pa = -2, pb = 3, pc = -5;
  double x0 = 0.2;
  limit->add_option("--flavor", flavor, "seg-hyper | syst2 | rp3-ansatz | rp4");
  limit->add_option("--schema", limit_schema, "schema JSON file (overrides --flavor)");
  limit->add_option("--m", limit_m, "projective dimension (seg-hyper)");
  limit->add_option("--offsets", offsets_text, "comma separated hyperplane offsets");
  limit->add_option("--a", pa, "rp3 ansatz a");
  limit->add_option("--b", pb, "rp3 ansatz b");
  limit->add_option("--c", pc, "rp3 ansatz c");
  limit->add_option("--x", x0, "base point");
  limit->add_option("--epsilons", eps_text, "comma separated sampling meshes");
  limit->add_option("--curve", curve_index, "index into the built-in curve family");
  limit->add_option("--out", limit_out, "limit report JSON path");
  limit->add_option("--csv", limit_csv, "limit report CSV path");

  // search
  auto* search = app.add_subcommand("search", "exhaustive index searches");
  std::string which = "rp3", q_text, search_out;
  int max_abs = 6, threads = 4;
  search->add_option("target", which, "rp3 or rp4")->required();
  search->add_option("--max-abs", max_abs, "offset magnitude bound");
  search->add_option("--q", q_text, "required q (rp3), e.g. 1/8");
  search->add_option("--threads", threads, "worker threads");
  search->add_option("--out", search_out, "results JSON path");

  // psdo
  auto* psdo = app.add_subcommand("psdo", "residue densities of fractional powers");
  int order = 4, depth = 0;
  std::string exponent = "3/4", psdo_out;
  psdo->add_option("--order", order, "operator order");
  psdo->add_option("--exponent", exponent, "fractional exponent R/S with S = order");
  psdo->add_option("--depth", depth, "root truncation depth (default order+3)");
  psdo->add_option("--out", psdo_out, "density JSON path");

  // gauge
  auto* gauge = app.add_subcommand("gauge", "gauge matrix, dictionary and residual");
  int gauge_n = 3;
  gauge->add_option("--n", gauge_n, "projective dimension (2..8)");

  // verify-all
  auto* verify = app.add_subcommand("verify-all", "run the acceptance criteria");
  AcceptanceConfig config;
  bool detail = false;
  std::string verify_out;
  verify->add_option("--threads", config.threads, "worker threads for the searches");
  verify->add_option("--seed", config.seed, "seed for randomized properties");
  verify->add_option("--rp3-empty-max-abs", config.rp3_empty_max_abs, "");
  verify->add_option("--rp3-max-abs", config.rp3_hit_max_abs, "");
  verify->add_option("--rp4-empty-max-abs", config.rp4_empty_max_abs, "");
  verify->add_option("--rp4-max-abs", config.rp4_hit_max_abs, "");
  verify->add_option("--tolerance-scale", config.tolerance_scale,
                     "scales all tolerances (negative controls)");
  verify->add_flag("--detail", detail, "print detail lines for passing criteria too");
  verify->add_option("--out", verify_out, "write a JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*map)
      return cmd_map(polygon_path, schema_path, builtin, iters, check_equivalence, tol, out_path);
    if (*limit)
      return cmd_limit(flavor, limit_schema, limit_m, offsets_text, pa, pb, pc, x0, eps_text,
                       curve_index, limit_out, limit_csv);
    if (*search) return cmd_search(which, max_abs, q_text, threads, search_out);
    if (*psdo) return cmd_psdo(order, exponent, depth, psdo_out);
    if (*gauge) return cmd_gauge(gauge_n);
    if (*verify) return cmd_verify_all(config, detail, verify_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
