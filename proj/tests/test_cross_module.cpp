#include <doctest.h>

#include "pentalab/dioph.hpp"
#include "pentalab/limits.hpp"

using namespace pentalab;

// Exact search output fed back into the numerical lab: every rp3 hit with
// q = 1/8 must measure a third-order limit whose G'/G''' ratio is (3/4) k2.
TEST_CASE("rp3 search hits realize the expected third-order flow") {
  auto hits = rp3_search(6, rat(1, 8), 4);
  REQUIRE(hits.size() >= 1);
  SmoothLiftedCurve curve = curve_library(3).front();
  double x = 0.2;
  double k2 = curve.wilczynski(x)[2];
  for (const auto& h : hits) {
    IndexSchema schema;
    schema.dim = 3;
    schema.subspaces = {{int(h.m[0]), int(h.m[1]), int(h.m[2])},
                        {int(h.n[0]), int(h.n[1]), int(h.n[2])},
                        {int(h.r[0]), int(h.r[1]), int(h.r[2])}};
    schema.name = "rp3-hit";
    LimitReport rep = fit_limit(curve, schema, x, default_epsilons(3));
    CHECK(std::abs(rep.fitted_order - 3.0) < 0.1);
    double ratio = rep.extrapolated_coeffs[1] / rep.extrapolated_coeffs[3];
    CHECK(ratio == doctest::Approx(0.75 * k2).epsilon(1e-2));
    // gamma3 agrees with the exact prediction M1/6
    CHECK(rep.extrapolated_coeffs[3] ==
          doctest::Approx(rat_double(h.gamma3)).epsilon(1e-6));
  }
}

// Replacing the segment {-1,+1} by {-r,+r} scales the second-order field by
// r^2/2 (the segment's Taylor geometry), not by r!. The two agree for
// r <= 2 and separate at r = 3.
TEST_CASE("wide-segment variants scale the limit by r^2/2") {
  SmoothLiftedCurve curve = curve_library(3).front();
  for (int r : {2, 3}) {
    IndexSchema s;
    s.dim = 3;
    s.subspaces = {{-r, r}, r == 2 ? std::vector<int>{0, -3, 3} : std::vector<int>{0, -2, 2}};
    s.name = "wide-segment";
    LimitReport rep = fit_limit(curve, s, 0.2, default_epsilons(2));
    CHECK(rep.fitted_order == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(rep.extrapolated_coeffs[2] == doctest::Approx(r * r / 2.0).epsilon(1e-5));
    CHECK(rep.r0_deviation < 1e-2);
  }
}

// The exact two-subspace elimination in RP^4 predicts gamma1/gamma3 =
// (3/10) k3; the measured limit of the corresponding map agrees.
TEST_CASE("two-subspace RP4 maps measure the exact 3/10 ratio") {
  Triple m{1, 5, -6}, n{2, 3, -5};
  CHECK(rp4_two_subspace_ratio(m, n) == rat(3, 10));

  IndexSchema schema;
  schema.dim = 4;
  schema.subspaces = {{1, 5, -6}, {2, 3, -5}};
  schema.name = "rp4-two-subspace";
  schema.validate();
  SmoothLiftedCurve curve = curve_library(4).front();
  double x = 0.2;
  double k3 = curve.wilczynski(x)[3];
  LimitReport rep = fit_limit(curve, schema, x, default_epsilons(3));
  CHECK(std::abs(rep.fitted_order - 3.0) < 0.1);
  double ratio = rep.extrapolated_coeffs[1] / rep.extrapolated_coeffs[3];
  CHECK(ratio == doctest::Approx(0.3 * k3).epsilon(1e-2));
  // gamma3 = M1/6 = -30/6
  CHECK(rep.extrapolated_coeffs[3] == doctest::Approx(-5.0).epsilon(1e-4));
}
