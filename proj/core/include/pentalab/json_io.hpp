#pragma once

#include <string>
#include <vector>

#include "pentalab/dioph.hpp"
#include "pentalab/limits.hpp"
#include "pentalab/polygon.hpp"
#include "pentalab/psdo.hpp"
#include "pentalab/schema.hpp"

namespace pentalab {

/// Polygon files: {"dim", "period", "vertices", "monodromy", "normalized"};
/// the affine variant {"dim", "affine_vertices"} is lifted on load.
std::string polygon_to_json(const LiftedPolygon& p);
LiftedPolygon polygon_from_json(const std::string& text);

std::string schema_to_json(const IndexSchema& s);
IndexSchema schema_from_json(const std::string& text);

/// {"terms": [{"coeff": "num/den", "monomial": [["k", i, j], ...]}, ...]}
std::string diffpoly_to_json(const DiffPoly& p);
DiffPoly diffpoly_from_json(const std::string& text);

std::string limit_report_to_json(const LimitReport& r);
std::string limit_report_to_csv(const LimitReport& r);

std::string rp3_results_to_json(const std::vector<Rp3Candidate>& hits, int max_abs,
                                const Rat& q, int threads);
std::string rp4_results_to_json(const std::vector<Rp4Check>& hits, int max_abs, int threads);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pentalab
