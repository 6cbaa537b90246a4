#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pentalab/curve.hpp"
#include "pentalab/gauge.hpp"
#include "pentalab/schema.hpp"

namespace pentalab {

/// Measured epsilon-expansion of a schema map around one site.
struct LimitReport {
  std::string schema_name;
  std::string curve_id;
  double x = 0.0;
  std::vector<double> epsilons;

  /// Per-epsilon frame coefficients of Gamma_eps - Gamma (rows follow
  /// `epsilons`; columns are the Gamma^(i) components).
  std::vector<std::vector<double>> frame_coeffs;

  int dominant_index = 0;
  double fitted_order = 0.0;
  double fit_r2 = 0.0;
  int rounded_order = 0;

  /// Richardson limits of coeff / eps^rounded_order per component.
  std::vector<double> extrapolated_coeffs;

  /// Least-squares split c_j(eps) = sum_t order_components[j][t-1] eps^t.
  std::vector<std::vector<double>> order_components;

  /// Predicted field evaluated at the measured invariants (component 0 is the
  /// normalization oracle value); empty when no prediction was supplied.
  std::vector<double> predicted_coeffs;
  double prediction_scale = 0.0;
  double discrepancy = -1.0;

  /// Normalization-forced Gamma coefficient for the measured field shape and
  /// the relative deviation of the measured Gamma coefficient from it.
  double r0_oracle = 0.0;
  double r0_deviation = -1.0;

  /// Order-one tangential component: nonzero when the output labeling drifts
  /// along the curve (asymmetric offset choices).
  double tangential_drift = 0.0;
};

/// Normalized lift of the mapped curve at parameter x for sampling mesh eps.
/// The whole computation runs on closed-form jets in frame-scaled
/// coordinates, so the small-epsilon cancellations are done analytically.
VecXl gamma_epsilon(const SmoothLiftedCurve& curve, const IndexSchema& schema, long double x,
                    long double eps);

/// Coefficients of v over the frame (Gamma, ..., Gamma^(m)) at x.
VecXl frame_decompose(const VecXl& v, const SmoothLiftedCurve& curve, long double x);

/// The Gamma-coefficient c_0 that makes d/dt det(Gamma, ..., Gamma^(m)) = 0
/// under Gamma_t = sum c_i Gamma^(i), for the explicit part (i >= 1) of the
/// field; evaluated at x with the curve's invariants.
long double normalization_coefficient(const SmoothLiftedCurve& curve, long double x,
                                      const LiftVectorField& field);

/// Constant-coefficient field helper (coefficients independent of the
/// invariants).
LiftVectorField constant_field(int dim, const std::vector<double>& coeffs);

LimitReport fit_limit(const SmoothLiftedCurve& curve, const IndexSchema& schema, double x,
                      const std::vector<double>& epsilons,
                      const LiftVectorField* predicted = nullptr);

/// Default ladders: second order {1e-2, 5e-3, 2.5e-3, 1.25e-3}; third order
/// runs larger steps because the eps^3 signals sit near 1e-7.
std::vector<double> default_epsilons(int expected_order);

}  // namespace pentalab
