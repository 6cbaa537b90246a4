#include "pentalab/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pentalab/errors.hpp"

namespace pentalab {

using nlohmann::json;

std::string polygon_to_json(const LiftedPolygon& p) {
  json j;
  j["dim"] = p.dim;
  j["period"] = p.period();
  json verts = json::array();
  for (int i = 0; i < p.period(); ++i) {
    json v = json::array();
    for (int r = 0; r <= p.dim; ++r) v.push_back(p.vertices(r, i));
    verts.push_back(v);
  }
  j["vertices"] = verts;
  json mono = json::array();
  for (int r = 0; r <= p.dim; ++r) {
    json row = json::array();
    for (int c = 0; c <= p.dim; ++c) row.push_back(p.monodromy(r, c));
    mono.push_back(row);
  }
  j["monodromy"] = mono;
  j["normalized"] = p.normalized;
  return j.dump(2);
}

LiftedPolygon polygon_from_json(const std::string& text) {
  json j = json::parse(text);
  int dim = j.at("dim").get<int>();
  if (j.contains("affine_vertices")) {
    std::vector<Eigen::VectorXd> pts;
    for (const auto& v : j.at("affine_vertices")) {
      Eigen::VectorXd a(dim);
      for (int i = 0; i < dim; ++i) a[i] = v.at(i).get<double>();
      pts.push_back(a);
    }
    LiftedPolygon raw = LiftedPolygon::from_affine(dim, pts);
    try {
      return discrete_normalize(raw);
    } catch (const Error& e) {
      if (e.code() == errc::non_liftable) return raw;
      throw;
    }
  }
  const auto& verts = j.at("vertices");
  Eigen::MatrixXd v(dim + 1, verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (int r = 0; r <= dim; ++r) v(r, i) = verts.at(i).at(r).get<double>();
  Eigen::MatrixXd mono = Eigen::MatrixXd::Identity(dim + 1, dim + 1);
  if (j.contains("monodromy")) {
    for (int r = 0; r <= dim; ++r)
      for (int c = 0; c <= dim; ++c) mono(r, c) = j.at("monodromy").at(r).at(c).get<double>();
  }
  bool normalized = j.value("normalized", false);
  return LiftedPolygon::make(dim, std::move(v), std::move(mono), normalized);
}

std::string schema_to_json(const IndexSchema& s) {
  json j;
  j["dim"] = s.dim;
  j["subspaces"] = s.subspaces;
  j["name"] = s.name;
  return j.dump(2);
}

IndexSchema schema_from_json(const std::string& text) {
  json j = json::parse(text);
  IndexSchema s;
  s.dim = j.at("dim").get<int>();
  s.subspaces = j.at("subspaces").get<std::vector<std::vector<int>>>();
  s.name = j.value("name", std::string("schema"));
  s.validate();
  return s;
}

std::string diffpoly_to_json(const DiffPoly& p) {
  json terms = json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    json term;
    term["coeff"] = rat_str(coeff);
    json factors = json::array();
    for (const auto& [packed, exp] : mono) {
      JetVar v = JetVar::unpack(packed);
      for (std::uint32_t e = 0; e < exp; ++e)
        factors.push_back(json::array(
            {v.family == JetVar::k ? "k" : "kappa", int(v.index), int(v.order)}));
    }
    term["monomial"] = factors;
    terms.push_back(term);
  }
  json j;
  j["terms"] = terms;
  return j.dump(2);
}

DiffPoly diffpoly_from_json(const std::string& text) {
  json j = json::parse(text);
  DiffPoly out;
  for (const auto& term : j.at("terms")) {
    DiffPoly t = DiffPoly::constant(rat_parse(term.at("coeff").get<std::string>()));
    for (const auto& f : term.at("monomial")) {
      std::string fam = f.at(0).get<std::string>();
      JetVar::Family family;
      if (fam == "k")
        family = JetVar::k;
      else if (fam == "kappa")
        family = JetVar::kappa;
      else
        fail(errc::bad_input, "unknown jet family '" + fam + "'");
      t = t * DiffPoly::var(family, f.at(1).get<int>(), f.at(2).get<int>());
    }
    out += t;
  }
  return out;
}

static json report_json(const LimitReport& r) {
  json j;
  j["schema"] = r.schema_name;
  j["curve"] = r.curve_id;
  j["x"] = r.x;
  j["epsilons"] = r.epsilons;
  j["frame_coeffs"] = r.frame_coeffs;
  j["dominant_index"] = r.dominant_index;
  j["fitted_order"] = r.fitted_order;
  j["fit_r2"] = r.fit_r2;
  j["rounded_order"] = r.rounded_order;
  j["extrapolated_coeffs"] = r.extrapolated_coeffs;
  j["order_components"] = r.order_components;
  j["predicted_coeffs"] = r.predicted_coeffs;
  j["prediction_scale"] = r.prediction_scale;
  j["discrepancy"] = r.discrepancy;
  j["r0_oracle"] = r.r0_oracle;
  j["r0_deviation"] = r.r0_deviation;
  j["tangential_drift"] = r.tangential_drift;
  return j;
}

std::string limit_report_to_json(const LimitReport& r) { return report_json(r).dump(2); }

std::string limit_report_to_csv(const LimitReport& r) {
  std::ostringstream out;
  out << "row,eps";
  for (std::size_t j = 0; j < r.frame_coeffs.front().size(); ++j) out << ",c" << j;
  out << "\n";
  out.precision(17);
  for (std::size_t i = 0; i < r.epsilons.size(); ++i) {
    out << "sample," << r.epsilons[i];
    for (double c : r.frame_coeffs[i]) out << "," << c;
    out << "\n";
  }
  out << "extrapolated,";
  for (double c : r.extrapolated_coeffs) out << "," << c;
  out << "\n";
  if (!r.predicted_coeffs.empty()) {
    out << "predicted,";
    for (double c : r.predicted_coeffs) out << "," << c;
    out << "\n";
  }
  out << "summary,fitted_order," << r.fitted_order << ",r2," << r.fit_r2 << ",r0_oracle,"
      << r.r0_oracle << ",r0_deviation," << r.r0_deviation << ",drift," << r.tangential_drift
      << "\n";
  return out.str();
}

std::string rp3_results_to_json(const std::vector<Rp3Candidate>& hits, int max_abs, const Rat& q,
                                int threads) {
  json j;
  j["search"] = "rp3";
  j["max_abs"] = max_abs;
  j["require_q"] = rat_str(q);
  j["threads"] = threads;
  json list = json::array();
  for (const auto& h : hits) {
    json e;
    e["m"] = h.m;
    e["n"] = h.n;
    e["r"] = h.r;
    e["q"] = h.q ? rat_str(*h.q) : "";
    e["gamma3"] = rat_str(h.gamma3);
    e["c1_holds"] = h.c1_holds;
    e["rank_full"] = h.rank_full;
    e["sum_squares_equal"] = h.sum_squares_equal;
    list.push_back(e);
  }
  j["solutions"] = list;
  return j.dump(2);
}

std::string rp4_results_to_json(const std::vector<Rp4Check>& hits, int max_abs, int threads) {
  json j;
  j["search"] = "rp4";
  j["max_abs"] = max_abs;
  j["threads"] = threads;
  json list = json::array();
  for (const auto& h : hits) {
    json e;
    e["m"] = h.m;
    e["n"] = h.n;
    e["r"] = h.r;
    e["condition1"] = h.condition1;
    e["rank_full"] = h.rank_full;
    e["det_identity"] = h.det_identity;
    e["det_identity_printed_sign"] = h.det_identity_printed_sign;
    e["det_lhs"] = rat_str(h.det_lhs);
    e["det_rhs"] = rat_str(h.det_rhs);
    list.push_back(e);
  }
  j["solutions"] = list;
  return j.dump(2);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(errc::bad_input, "cannot write '" + path + "'");
  out << text;
}

}  // namespace pentalab
