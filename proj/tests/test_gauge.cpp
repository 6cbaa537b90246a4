#include <doctest.h>

#include "pentalab/errors.hpp"
#include "pentalab/gauge.hpp"
#include "pentalab/psdo.hpp"

using namespace pentalab;

TEST_CASE("companion matrix shape") {
  SymbolicMatrix k2 = companion_matrix(2);
  REQUIRE(k2.rows() == 3);
  CHECK(k2.at(0, 2).coeff(0) == -dp_k(0));
  CHECK(k2.at(1, 2).coeff(0) == -dp_k(1));
  CHECK(k2.at(2, 2).is_zero());
  CHECK(k2.at(1, 0).coeff(0) == dp_constant(1));
  // trace vanishes
  DiffPoly tr;
  for (int i = 0; i < 3; ++i) tr += k2.at(i, i).coeff(0);
  CHECK(tr.is_zero());
  CHECK(companion_matrix(3).rows() == 4);
}

TEST_CASE("gauge is unipotent with k_{n-1} on the second superdiagonal") {
  for (int n = 2; n <= 5; ++n) {
    SymbolicMatrix g = gauge_matrix(n);
    for (int i = 0; i < g.rows(); ++i) {
      CHECK(g.at(i, i).coeff(0) == dp_constant(1));
      if (i + 1 < g.cols()) CHECK(g.at(i, i + 1).is_zero());
      if (i + 2 < g.cols()) CHECK(g.at(i, i + 2).coeff(0) == dp_k(n - 1));
    }
  }
}

TEST_CASE("explicit gauge entries for n = 3") {
  SymbolicMatrix g = gauge_matrix(3);
  CHECK(g.at(0, 2).coeff(0) == dp_k(2));
  CHECK(g.at(0, 3).coeff(0) == dp_k(1) - dp_k(2, 1));
  CHECK(g.at(1, 3).coeff(0) == dp_k(2));
}

TEST_CASE("dictionaries invert each other") {
  for (int n = 2; n <= 5; ++n) {
    auto k_in_kappa = kappa_dictionary(n);
    auto kappa_in_k = inverse_kappa_dictionary(n);
    for (int i = 0; i < n; ++i) {
      DiffPoly round = k_in_kappa[i].substitute(JetVar::kappa, kappa_in_k);
      CHECK(round == dp_k(i));
    }
  }
}

TEST_CASE("gauge residual vanishes for all supported n") {
  for (int n = 2; n <= 6; ++n) CHECK(gauge_residual(n).is_zero());
}

TEST_CASE("negative control: a perturbed dictionary breaks the residual") {
  // k1 = -kappa1 - kappa2' (instead of the solved -kappa1 - 2 kappa2')
  // must not satisfy the gauge relation.
  auto dict = kappa_dictionary(3);
  dict[1] = -dp_kappa(1) - dp_kappa(2, 1);
  SymbolicMatrix khat = companion_matrix(3);
  SymbolicMatrix kform = kappa_form_matrix(3);
  SymbolicMatrix g = gauge_matrix(3);
  int s = 4;
  SymbolicMatrix gk(s, s), gx(s, s), kh(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      DiffPoly e = g.at(i, j).coeff(0).substitute(JetVar::k, dict);
      gk.at(i, j) = DiffOp::from_poly(e);
      gx.at(i, j) = DiffOp::from_poly(e.total_derivative());
      kh.at(i, j) = DiffOp::from_poly(khat.at(i, j).coeff(0).substitute(JetVar::k, dict));
    }
  SymbolicMatrix resid = sym_sub(sym_add(gx, sym_mul(kh, gk)), sym_mul(gk, kform));
  CHECK_FALSE(resid.is_zero());
}

TEST_CASE("frechet matrix is lower triangular with -1 diagonal") {
  for (int n : {3, 4}) {
    SymbolicMatrix f = change_of_variables_adjoint(n);
    for (int i = 0; i < n; ++i) {
      CHECK(f.at(i, i).coeff(0) == dp_constant(-1));
      CHECK(f.at(i, i).degree() == 0);
      for (int j = i + 1; j < n; ++j) CHECK(f.at(i, j).is_zero());
    }
  }
  // First column of the n=4 Frechet matrix: (-1, -3D, -3D^2, -D^3).
  SymbolicMatrix f = change_of_variables_adjoint(4);
  CHECK(f.at(1, 0) == DiffOp::from_poly(dp_constant(-3)) * DiffOp::d(1));
  CHECK(f.at(2, 0) == DiffOp::from_poly(dp_constant(-3)) * DiffOp::d(2));
  CHECK(f.at(3, 0) == -DiffOp::d(3));
}

TEST_CASE("adjoint applied to a constant basis vector flips its sign") {
  for (int n : {3, 4}) {
    SymbolicMatrix f = change_of_variables_adjoint(n);
    std::vector<DiffPoly> e2(n);
    e2[1] = dp_constant(1);
    std::vector<DiffPoly> out = apply_adjoint(f, e2);
    for (int i = 0; i < n; ++i) {
      if (i == 1)
        CHECK(out[i] == dp_constant(-1));
      else
        CHECK(out[i].is_zero());
    }
  }
}

TEST_CASE("lift realization is linear in the density") {
  DiffPoly h1 = dp_k(0) - rat(1, 8) * (dp_k(2) * dp_k(2));
  DiffPoly h2 = dp_k(1) * dp_k(2);
  LiftVectorField a = lift_realization(3, h1);
  LiftVectorField b = lift_realization(3, h2);
  LiftVectorField ab = lift_realization(3, rat(3) * h1 + h2);
  for (int i = 1; i <= 3; ++i) CHECK(ab.coeffs[i] == rat(3) * a.coeffs[i] + b.coeffs[i]);
}

TEST_CASE("second order realization of the 2/n density") {
  for (int n : {4, 5}) {
    DiffPoly density = hamiltonian_density(n, 2);
    LiftVectorField f = lift_realization(n - 1, density);
    CHECK(f.coeffs[2] == DiffPoly::constant(rat(-2, n)));
    CHECK(f.coeffs[1].is_zero());
    for (int j = 3; j < n; ++j) CHECK(f.coeffs[j].is_zero());
  }
}

TEST_CASE("rejects unsupported dimensions") {
  CHECK_THROWS_AS(gauge_matrix(1), Error);
  CHECK_THROWS_AS(kappa_dictionary(100), Error);
}

TEST_CASE("diffop adjoint is an involution") {
  DiffOp op = DiffOp::from_poly(dp_k(2)) * DiffOp::d(2) + DiffOp::from_poly(dp_k(1, 1)) * DiffOp::d(1);
  CHECK(op.adjoint().adjoint() == op);
  // adjoint of multiplication operator is itself
  DiffOp mult = DiffOp::from_poly(dp_k(0));
  CHECK(mult.adjoint() == mult);
}
