#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "pentalab/jet.hpp"

namespace pentalab {

using MatXl = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VecXl = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

/// Affine curve R -> R^m delivered as truncated Taylor expansions of each
/// component at any base point.
struct AffineCurveJet {
  int dim = 2;
  std::string id;
  std::function<JetVec(long double, std::size_t)> eval;
};

/// Jet-producing wrapper around a plain value evaluator: derivatives by
/// central differences at two step sizes with Richardson combination.
/// Disagreement between the two estimates beyond 1e-5 relative raises
/// StepTooCoarse.
AffineCurveJet fd_affine_curve(int dim, const std::string& id,
                               std::function<Eigen::VectorXd(double)> values, double step);

/// Normalized lift jet (Gamma(x), ..., up to the requested order) of an
/// affine curve: Gamma = W^{-1/(m+1)} (1, gamma), W = det(gamma', ...,
/// gamma^(m)). DegenerateCurve when |W| <= 1e-12 or the sign cannot be
/// normalized in even frame dimension.
JetVec lift_affine_curve(const AffineCurveJet& curve, long double x, std::size_t order);

/// A projective curve carried by its normalized lift, with closed-form jets.
class SmoothLiftedCurve {
 public:
  explicit SmoothLiftedCurve(AffineCurveJet affine) : affine_(std::move(affine)) {}

  int dim() const { return affine_.dim; }
  const std::string& id() const { return affine_.id; }

  /// Component jets of Gamma at x, truncated at `order`.
  JetVec lift_jets(long double x, std::size_t order) const;

  /// Frame matrix with columns Gamma, Gamma', ..., Gamma^(m) at x.
  MatXl frame(long double x) const;

  /// Wilczynski invariants as jets: Gamma^(m+1) + sum k_i Gamma^(i) = 0.
  /// The Gamma^(m) coefficient of the solve is checked against zero.
  JetVec wilczynski_jets(long double x, std::size_t order) const;

  Eigen::VectorXd wilczynski(double x) const;

 private:
  AffineCurveJet affine_;
};

/// Convenience wrapper matching the operation signature.
inline Eigen::VectorXd wilczynski_invariants(const SmoothLiftedCurve& curve, double x) {
  return curve.wilczynski(x);
}

/// Nondegenerate closed-form test curves per dimension. The first entry is
/// the preferred probe curve; all have verified nonvanishing lift
/// determinant on |x| <= 2.
std::vector<SmoothLiftedCurve> curve_library(int m);

/// The conic lift (1, cos x, sin x) with invariants k = (0, 1).
SmoothLiftedCurve circle_curve();

}  // namespace pentalab
