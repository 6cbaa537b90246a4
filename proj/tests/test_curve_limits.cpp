#include <doctest.h>

#include <random>

#include "pentalab/errors.hpp"
#include "pentalab/limits.hpp"
#include "pentalab/polygon.hpp"

using namespace pentalab;

namespace {

AffineCurveJet parabola() {
  return AffineCurveJet{2, "parabola", [](long double x, std::size_t order) {
                          Jet xv = Jet::variable(x, order);
                          return JetVec{xv, 0.5L * (xv * xv)};
                        }};
}

AffineCurveJet line() {
  return AffineCurveJet{2, "line", [](long double x, std::size_t order) {
                          Jet xv = Jet::variable(x, order);
                          return JetVec{xv, xv};
                        }};
}

/// Affine chart of g . Gamma for testing invariance of the Wilczynski
/// coefficients under the projective action.
AffineCurveJet transformed_chart(const SmoothLiftedCurve& curve, const Eigen::MatrixXd& g) {
  int m = curve.dim();
  return AffineCurveJet{m, curve.id() + "-moved", [curve, g, m](long double x, std::size_t order) {
                          JetVec lift = curve.lift_jets(x, order);
                          JetVec moved(m + 1, Jet::constant(0.0L, order));
                          for (int r = 0; r <= m; ++r)
                            for (int c = 0; c <= m; ++c)
                              moved[r] += (long double)g(r, c) * lift[c];
                          JetVec chart(m);
                          for (int r = 0; r < m; ++r) chart[r] = moved[r + 1] / moved[0];
                          return chart;
                        }};
}

}  // namespace

TEST_CASE("lift of the parabola is the moment curve") {
  JetVec lift = lift_affine_curve(parabola(), 0.4L, 3);
  CHECK(double(lift[0].value()) == doctest::Approx(1.0));
  CHECK(double(lift[1].value()) == doctest::Approx(0.4));
  CHECK(double(lift[2].value()) == doctest::Approx(0.08));
  SmoothLiftedCurve c(parabola());
  Eigen::VectorXd k = c.wilczynski(0.4);
  CHECK(std::abs(k[0]) < 1e-12);
  CHECK(std::abs(k[1]) < 1e-12);
}

TEST_CASE("degenerate curve is rejected") {
  CHECK_THROWS_AS(lift_affine_curve(line(), 0.0L, 2), Error);
}

TEST_CASE("circle invariants") {
  SmoothLiftedCurve c = circle_curve();
  Eigen::VectorXd k = c.wilczynski(0.9);
  CHECK(std::abs(k[0]) < 1e-12);
  CHECK(k[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("library curves are nondegenerate with unit frame determinant") {
  for (int m = 2; m <= 5; ++m) {
    for (const SmoothLiftedCurve& c : curve_library(m)) {
      for (double x : {-0.8, -0.3, 0.0, 0.2, 0.7}) {
        MatXl f = c.frame(x);
        double det = double(f.cast<double>().eval().determinant());
        CHECK_MESSAGE(det == doctest::Approx(1.0).epsilon(1e-8), c.id(), " at x=", x);
      }
      // criterion probes sit at x = 0.2 and need k_{m-1} != 0
      Eigen::VectorXd k = c.wilczynski(0.2);
      CHECK_MESSAGE(std::abs(k[m - 1]) > 1e-3, c.id());
    }
  }
}

TEST_CASE("wilczynski invariants are projective invariants") {
  std::mt19937_64 rng(41);
  for (int m : {2, 3}) {
    SmoothLiftedCurve c = curve_library(m).front();
    Eigen::MatrixXd g = random_sl(m + 1, rng);
    SmoothLiftedCurve moved(transformed_chart(c, g));
    Eigen::VectorXd k0 = c.wilczynski(0.3);
    Eigen::VectorXd k1 = moved.wilczynski(0.3);
    for (int i = 0; i < m; ++i) CHECK(k1[i] == doctest::Approx(k0[i]).epsilon(1e-6));
  }
}

TEST_CASE("finite difference curves cross-validate their steps") {
  auto values = [](double x) {
    Eigen::VectorXd v(2);
    v << std::cos(x), std::sin(x);
    return v;
  };
  AffineCurveJet fd = fd_affine_curve(2, "fd-circle", values, 1e-2);
  JetVec jets = fd.eval(0.3L, 3);
  CHECK(double(jets[0].derivative(1)) == doctest::Approx(-std::sin(0.3)).epsilon(1e-7));
  CHECK(double(jets[1].derivative(2)) == doctest::Approx(-std::sin(0.3)).epsilon(1e-5));

  auto rough = [](double x) {
    Eigen::VectorXd v(2);
    v << std::cos(40.0 * x), std::sin(40.0 * x);
    return v;
  };
  AffineCurveJet bad = fd_affine_curve(2, "fd-rough", rough, 0.25);
  CHECK_THROWS_AS(bad.eval(0.0L, 3), Error);
}

TEST_CASE("frame decomposition") {
  SmoothLiftedCurve c = curve_library(3).front();
  MatXl f = c.frame(0.4);
  SUBCASE("frame vectors decompose to unit coefficients") {
    VecXl v = f.col(2);
    VecXl coef = frame_decompose(v, c, 0.4);
    for (int i = 0; i <= 3; ++i)
      CHECK(double(coef[i]) == doctest::Approx(i == 2 ? 1.0 : 0.0).epsilon(1e-12));
  }
  SUBCASE("combination") {
    VecXl v = f.col(0) + 3.0L * f.col(1);
    VecXl coef = frame_decompose(v, c, 0.4);
    CHECK(double(coef[0]) == doctest::Approx(1.0));
    CHECK(double(coef[1]) == doctest::Approx(3.0));
    CHECK(std::abs(double(coef[2])) < 1e-12);
  }
  SUBCASE("random reconstruction") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> gauss;
    VecXl v(4);
    for (int i = 0; i < 4; ++i) v[i] = gauss(rng);
    VecXl coef = frame_decompose(v, c, 0.4);
    CHECK(double((f * coef - v).norm()) < 1e-10);
  }
}

TEST_CASE("pentagram image of the circle expands as expected") {
  SmoothLiftedCurve c = circle_curve();
  long double eps = 1e-3L;
  VecXl ge = gamma_epsilon(c, pentagram_schema(), 0.3L, eps);
  JetVec lift = c.lift_jets(0.3L, 0);
  VecXl base(3);
  for (int i = 0; i < 3; ++i) base[i] = lift[i].value();
  VecXl coef = frame_decompose(ge - base, c, 0.3L);
  // Gamma_eps - Gamma = (eps/2) Gamma' + eps^2 ((1/4) Gamma + (1/2) Gamma'') + ...
  CHECK(double(coef[1]) == doctest::Approx(double(eps) / 2).epsilon(1e-5));
  CHECK(double(coef[0]) == doctest::Approx(double(eps * eps) / 4).epsilon(1e-4));
  CHECK(double(coef[2]) == doctest::Approx(double(eps * eps) / 2).epsilon(1e-4));
}

TEST_CASE("normalization oracle") {
  SmoothLiftedCurve c = curve_library(3).front();
  SUBCASE("pure translation field needs no correction") {
    long double r0 = normalization_coefficient(c, 0.2L, constant_field(3, {0.0, 1.0}));
    CHECK(std::abs(double(r0)) < 1e-12);
  }
  SUBCASE("second-order field reproduces the forced coefficient") {
    // Gamma_t = Gamma'' + c0 Gamma keeps the determinant iff
    // c0 = 2 k_{m-1} / (m+1).
    Eigen::VectorXd k = c.wilczynski(0.2);
    long double r0 = normalization_coefficient(c, 0.2L, constant_field(3, {0.0, 0.0, 1.0}));
    CHECK(double(r0) == doctest::Approx(2.0 * k[2] / 4.0).epsilon(1e-10));
  }
  SUBCASE("agd field on the cubic lift") {
    LiftVectorField f;
    f.dim = 3;
    f.coeffs.assign(4, DiffPoly());
    f.coeffs[3] = dp_constant(-1);
    f.coeffs[1] = rat(-3, 4) * dp_k(2);
    long double r0 = normalization_coefficient(c, 0.2L, f);
    CHECK(std::isfinite(double(r0)));
  }
}

TEST_CASE("fit rejects non-geometric ladders") {
  SmoothLiftedCurve c = circle_curve();
  CHECK_THROWS_AS(fit_limit(c, pentagram_schema(), 0.3, {1e-2, 5e-3, 2e-3, 1e-3}), Error);
  CHECK_THROWS_AS(fit_limit(c, pentagram_schema(), 0.3, {1e-2, 5e-3}), Error);
}

TEST_CASE("wildly scaled components overflow the frame conditioning") {
  AffineCurveJet skew{2, "skew", [](long double x, std::size_t order) {
                        Jet xv = Jet::variable(x, order);
                        return JetVec{cos(xv), 1.0e9L * sin(xv)};
                      }};
  SmoothLiftedCurve c(skew);
  CHECK_THROWS_AS(c.wilczynski(0.3), Error);
}

TEST_CASE("mixed-order samples are rejected as having no clean order") {
  // At step sizes this coarse the tangential and cubic parts of the drift
  // compete and the log-log fit degrades below the R^2 gate.
  std::vector<double> eps{0.5, 0.25, 0.125, 0.0625};
  CHECK_THROWS_AS(fit_limit(circle_curve(), segment_hyperplane_schema(2, {7}), 0.3, eps), Error);
}

TEST_CASE("coincident subspaces report unexpected dimension") {
  IndexSchema degenerate;
  degenerate.dim = 3;
  degenerate.subspaces = {{-2, 1, 3}, {-2, 1, 3}, {0, 2, -1}};
  degenerate.name = "coincident-planes";
  degenerate.validate();  // passes the counting rule but not the geometry
  SmoothLiftedCurve c = curve_library(3).front();
  CHECK_THROWS_AS(gamma_epsilon(c, degenerate, 0.2L, 1e-2L), Error);
}
