#pragma once

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace pentalab {

/// Angle between the lines spanned by u and v, in [0, pi/2]. Computed from
/// the orthogonal component so values near zero keep full precision.
double angular_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// One period of lifted vertices in R^{m+1} plus the monodromy. Columns of
/// `vertices` are the period; the bi-infinite sequence continues through
/// V_{i+N} = monodromy * V_i.
struct LiftedPolygon {
  int dim = 2;                 // m: ambient projective dimension
  Eigen::MatrixXd vertices;    // (m+1) x N
  Eigen::MatrixXd monodromy;   // (m+1) x (m+1), unit determinant
  bool normalized = false;

  int period() const { return int(vertices.cols()); }

  /// Monodromy-extended vertex for any integer index.
  Eigen::VectorXd vertex(long i) const;

  /// det(V_i, ..., V_{i+m}).
  double lift_determinant(long i) const;

  /// Checked constructor: rescales the monodromy to unit determinant.
  static LiftedPolygon make(int dim, Eigen::MatrixXd vertices, Eigen::MatrixXd monodromy,
                            bool normalized = false);

  /// Closed polygon from affine vertices (rows of size m), lifted as (1, a).
  static LiftedPolygon from_affine(int dim, const std::vector<Eigen::VectorXd>& affine);
};

/// Transform vertices by g and conjugate the monodromy; the normalized flag
/// is dropped (g need not preserve the lift scaling).
LiftedPolygon transform(const Eigen::MatrixXd& g, const LiftedPolygon& p);

/// Relabel so vertex i of the output is vertex i+shift of the input,
/// extending through the monodromy at the wrap.
LiftedPolygon shift_polygon(const LiftedPolygon& p, int shift);

/// Rescale vertices by positive scalars so every det(V_i, ..., V_{i+m}) = 1.
/// The consistency products around the period obstruct this for some inputs;
/// those fail with NonLiftable.
LiftedPolygon discrete_normalize(const LiftedPolygon& p);

struct ProjectiveEquivalence {
  Eigen::MatrixXd transform;  // unit determinant up to sign
  double residual = 0.0;      // max angular distance over matched vertices
};

/// Least-squares projective transform matching vertices by index; returned
/// only when the residual beats tol.
std::optional<ProjectiveEquivalence> projective_equivalence(const LiftedPolygon& p,
                                                            const LiftedPolygon& q, double tol);

/// Common line of the given spans (each a matrix whose columns span a
/// subspace of R^{m+1}); unit vector with the first nonzero component
/// positive. UnexpectedDimension unless the intersection is one-dimensional.
Eigen::VectorXd span_intersection(const std::vector<Eigen::MatrixXd>& spans);

/// Random determinant-one matrix with entries O(1); deterministic in rng.
Eigen::MatrixXd random_sl(int size, std::mt19937_64& rng);

/// Convex n-gon from a jittered regular polygon, closed (identity
/// monodromy), lifted and normalized.
LiftedPolygon random_convex_polygon(int nverts, std::mt19937_64& rng);

LiftedPolygon regular_polygon(int nverts);

}  // namespace pentalab
