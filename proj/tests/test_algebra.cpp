#include <doctest.h>

#include <random>

#include "pentalab/diffpoly.hpp"
#include "pentalab/errors.hpp"
#include "pentalab/jet.hpp"
#include "pentalab/psdo.hpp"
#include "pentalab/rational.hpp"

using namespace pentalab;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_str(rat_parse("3/6")) == "1/2");
  CHECK(rat_str(rat_parse("-14")) == "-14");
  CHECK(rat_parse("2/4") == rat(1, 2));
  CHECK_THROWS_AS(rat_parse("1/0"), Error);
  CHECK_THROWS_AS(rat_parse("abc"), Error);
  CHECK(rat_binomial(-1, 3) == rat(-1));
  CHECK(rat_binomial(4, 2) == rat(6));
  CHECK(rat_binomial(-2, 2) == rat(3));
}

TEST_CASE("jet arithmetic matches closed forms") {
  Jet x = Jet::variable(0.7L, 6);
  Jet s = sin(x), c = cos(x);
  CHECK(double(s.derivative(0)) == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
  CHECK(double(s.derivative(1)) == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
  CHECK(double(s.derivative(2)) == doctest::Approx(-std::sin(0.7)).epsilon(1e-14));
  CHECK(double(s.derivative(5)) == doctest::Approx(std::cos(0.7)).epsilon(1e-13));
  Jet q = s * s + c * c;
  CHECK(double(q.value()) == doctest::Approx(1.0).epsilon(1e-16));
  for (int t = 1; t <= 6; ++t) CHECK(std::abs(double(q.derivative(t))) < 1e-14);

  Jet p = pow(2.0L + s, 0.5L);
  // (2+sin x)^(1/2) derivative: cos x / (2 sqrt(2+sin x))
  double want = std::cos(0.7) / (2.0 * std::sqrt(2.0 + std::sin(0.7)));
  CHECK(double(p.derivative(1)) == doctest::Approx(want).epsilon(1e-14));

  Jet inv = Jet::constant(1.0L, 5) / (2.0L + s);
  CHECK(double(inv.value()) == doctest::Approx(1.0 / (2.0 + std::sin(0.7))).epsilon(1e-15));

  CHECK(double(jet_d(s, 2).value()) == doctest::Approx(-std::sin(0.7)).epsilon(1e-14));
}

TEST_CASE("jet determinant and solve") {
  Jet x = Jet::variable(0.25L, 4);
  std::vector<JetVec> m{{cos(x), sin(x)}, {-1.0L * sin(x), cos(x)}};
  Jet det = jet_det(m);
  CHECK(double(det.value()) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(std::abs(double(det.derivative(1))) < 1e-15);

  JetVec b{cos(x) + 2.0L * sin(x), cos(x) - 1.0L * sin(x)};
  JetVec sol = jet_solve(m, b);
  // columns (cos, -sin), (sin, cos): solution of [c s; -s c] z = b
  JetVec back{m[0][0] * sol[0] + m[0][1] * sol[1], m[1][0] * sol[0] + m[1][1] * sol[1]};
  for (int t = 0; t <= 3; ++t) {
    CHECK(double(back[0].coeff(t)) == doctest::Approx(double(b[0].coeff(t))).epsilon(1e-13));
    CHECK(double(back[1].coeff(t)) == doctest::Approx(double(b[1].coeff(t))).epsilon(1e-13));
  }
}

TEST_CASE("differential polynomial derivative rules") {
  CHECK(dp_k(2).total_derivative() == dp_k(2, 1));
  CHECK((dp_k(2) * dp_k(2)).total_derivative() == rat(2) * (dp_k(2) * dp_k(2, 1)));
  CHECK(dp_constant(1).total_derivative().is_zero());

  DiffPoly p = dp_k(2) * dp_k(2);
  CHECK(p.euler(JetVar::k, 2) == rat(2) * dp_k(2));
  CHECK(p.euler(JetVar::k, 1).is_zero());
  CHECK(dp_k(2, 1).euler(JetVar::k, 2).is_zero());
}

TEST_CASE("euler operator annihilates total derivatives") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> idx(0, 3), ord(0, 2), coeff(-4, 4), nt(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    DiffPoly q;
    for (int t = 0; t < nt(rng); ++t) {
      DiffPoly term = dp_constant(coeff(rng));
      term = term * dp_k(idx(rng), ord(rng));
      if (trial % 2) term = term * dp_k(idx(rng), ord(rng));
      q += term;
    }
    DiffPoly dq = q.total_derivative();
    for (int i = 0; i <= 3; ++i) CHECK(dq.euler(JetVar::k, i).is_zero());
  }
}

TEST_CASE("substitution composes through derivatives") {
  // k0 -> -kappa0 - kappa1' then derivative consistency
  std::vector<DiffPoly> images{-dp_kappa(0) - dp_kappa(1, 1), -dp_kappa(1)};
  DiffPoly p = dp_k(0, 1);
  DiffPoly q = p.substitute(JetVar::k, images);
  CHECK(q == (-dp_kappa(0) - dp_kappa(1, 1)).total_derivative());
}

TEST_CASE("deterministic printer") {
  DiffPoly p = rat(-3, 8) * (dp_k(2) * dp_k(2)) + rat(5, 4) * dp_k(2, 2);
  CHECK(p.str() == "-3/8*k2^2 + 5/4*k2''");
}

TEST_CASE("psdo composition basics") {
  PseudoDiffOp d = PseudoDiffOp::d_power(1);
  PseudoDiffOp f = PseudoDiffOp::from_coeff(0, dp_k(2));
  PseudoDiffOp df = d * f;
  CHECK(df.coeff(1) == dp_k(2));
  CHECK(df.coeff(0) == dp_k(2, 1));

  // D^-1 o f = f D^-1 - f' D^-2 + f'' D^-3 - ...
  PseudoDiffOp dinv = PseudoDiffOp::d_power(-1);
  PseudoDiffOp comp = psdo_mul(dinv, f, -4);
  CHECK(comp.coeff(-1) == dp_k(2));
  CHECK(comp.coeff(-2) == -dp_k(2, 1));
  CHECK(comp.coeff(-3) == dp_k(2, 2));
  CHECK_THROWS_AS((void)comp.coeff(-5), Error);
}

TEST_CASE("root identity R^s = L down to the floor") {
  for (int s : {3, 4, 5}) {
    PseudoDiffOp L = PseudoDiffOp::wilczynski_operator(s);
    for (int depth : {3, 5}) {
      PseudoDiffOp root = psdo_root(L, s, depth);
      PseudoDiffOp power = psdo_pow(root, s, root.floor());
      PseudoDiffOp diff = power - L;
      for (const auto& [order, coeff] : diff.coeffs()) {
        if (order < diff.floor()) continue;
        CHECK_MESSAGE(coeff.is_zero(), "order ", order, " at s=", s, " depth=", depth);
      }
    }
  }
}

TEST_CASE("root input validation") {
  PseudoDiffOp bad = rat(2) * PseudoDiffOp::wilczynski_operator(3);
  CHECK_THROWS_AS(psdo_root(bad, 3, 3), Error);
  PseudoDiffOp unnorm = PseudoDiffOp::wilczynski_operator(3) + PseudoDiffOp::from_coeff(2, dp_k(1));
  CHECK_THROWS_AS(psdo_root(unnorm, 3, 3), Error);
}

TEST_CASE("cubic residue density") {
  // res(L^{2/3}) for L = D^3 + k1 D + k0 integrates to (2/3) k0.
  DiffPoly res = hamiltonian_density(3, 2);
  CHECK(density_equivalent(res, rat(2, 3) * dp_k(0)));
  CHECK_FALSE(density_equivalent(res, rat(2, 3) * dp_k(0) + dp_constant(1)));
}

TEST_CASE("quartic residue density is stable under deeper truncation") {
  DiffPoly shallow = hamiltonian_density(4, 3);
  DiffPoly deep = hamiltonian_density(4, 3, 10);
  CHECK(shallow == deep);
}
