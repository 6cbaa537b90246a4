#include "pentalab/curve.hpp"

#include <cmath>

#include "pentalab/errors.hpp"

namespace pentalab {

AffineCurveJet fd_affine_curve(int dim, const std::string& id,
                               std::function<Eigen::VectorXd(double)> values, double step) {
  auto eval = [dim, values, step, id](long double x, std::size_t order) -> JetVec {
    // Central differences with half-integer offsets:
    // f^(t)(x) ~ h^-t sum_j (-1)^j C(t,j) f(x + (t/2 - j) h), O(h^2).
    auto stencil = [&](double h, std::size_t t, int comp) -> double {
      double acc = 0.0;
      double binom = 1.0;
      for (std::size_t j = 0; j <= t; ++j) {
        double off = (double(t) / 2.0 - double(j)) * h;
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sign * binom * values(double(x) + off)[comp];
        binom = binom * double(t - j) / double(j + 1);
      }
      return acc / std::pow(h, double(t));
    };
    JetVec out;
    for (int comp = 0; comp < dim; ++comp) {
      Jet jet(order);
      double fact = 1.0;
      for (std::size_t t = 0; t <= order; ++t) {
        if (t >= 2) fact *= double(t);
        double coarse = stencil(step, t, comp);
        double fine = stencil(step / 2.0, t, comp);
        double combined = (4.0 * fine - coarse) / 3.0;
        double scale = std::max({std::abs(coarse), std::abs(fine), 1.0});
        if (t > 0 && std::abs(fine - coarse) > 1e-5 * scale * 4.0)
          fail(errc::step_too_coarse,
               "derivative " + std::to_string(t) + " of '" + id + "' disagrees across steps");
        jet.coeff_ref(t) = static_cast<long double>(combined) / static_cast<long double>(fact);
      }
      out.push_back(jet);
    }
    return out;
  };
  return AffineCurveJet{dim, id, eval};
}

JetVec lift_affine_curve(const AffineCurveJet& curve, long double x, std::size_t order) {
  int m = curve.dim;
  JetVec gamma = curve.eval(x, order + m);
  if (int(gamma.size()) != m) fail(errc::bad_input, "affine curve dimension mismatch");

  std::vector<JetVec> wmat(m, JetVec(m));
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) wmat[r][c] = jet_d(gamma[r], c + 1);
  Jet w = jet_det(wmat);
  if (std::abs(double(w.value())) <= 1e-12)
    fail(errc::degenerate_curve, "lift determinant vanishes on '" + curve.id + "'");

  long double sign = 1.0L;
  Jet wpos = w;
  if (w.value() < 0.0L) {
    if ((m + 1) % 2 == 0)
      fail(errc::degenerate_curve,
           "negative lift determinant cannot be normalized in even frame dimension");
    sign = -1.0L;
    wpos = -w;
  }
  Jet scale = sign * pow(wpos, -1.0L / static_cast<long double>(m + 1));

  JetVec lifted(m + 1);
  lifted[0] = scale;
  for (int r = 0; r < m; ++r) lifted[r + 1] = scale * gamma[r];
  return lifted;
}

JetVec SmoothLiftedCurve::lift_jets(long double x, std::size_t order) const {
  return lift_affine_curve(affine_, x, order);
}

MatXl SmoothLiftedCurve::frame(long double x) const {
  int m = dim();
  JetVec lift = lift_jets(x, m);
  MatXl f(m + 1, m + 1);
  for (int r = 0; r <= m; ++r)
    for (int i = 0; i <= m; ++i) f(r, i) = lift[r].derivative(i);
  return f;
}

JetVec SmoothLiftedCurve::wilczynski_jets(long double x, std::size_t order) const {
  int m = dim();
  JetVec lift = lift_jets(x, order + m + 1);

  // Columns Gamma^(i) as jets, unknowns c with Gamma^(m+1) = -sum c_i
  // Gamma^(i); c_m is analytically zero and checked.
  std::vector<JetVec> a(m + 1, JetVec(m + 1));
  JetVec b(m + 1);
  for (int r = 0; r <= m; ++r) {
    for (int i = 0; i <= m; ++i) a[r][i] = jet_d(lift[r], i);
    b[r] = -jet_d(lift[r], m + 1);
  }

  {
    Eigen::MatrixXd frame_val(m + 1, m + 1);
    for (int r = 0; r <= m; ++r)
      for (int i = 0; i <= m; ++i) frame_val(r, i) = double(a[r][i].value());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(frame_val);
    double cond = svd.singularValues()[0] / svd.singularValues()[m];
    if (!(cond < 1e8)) fail(errc::ill_conditioned_frame, "frame condition number " + std::to_string(cond));
  }

  JetVec c = jet_solve(a, b);
  if (std::abs(double(c[m].value())) > 1e-6)
    fail(errc::ill_conditioned_frame, "top frame coefficient did not vanish");
  c.pop_back();
  return c;
}

Eigen::VectorXd SmoothLiftedCurve::wilczynski(double x) const {
  JetVec k = wilczynski_jets(x, 0);
  Eigen::VectorXd out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = double(k[i].value());
  return out;
}

namespace {

AffineCurveJet closed_form_curve(int m, const std::string& id,
                                 std::function<JetVec(const Jet&)> components) {
  auto eval = [m, id, components](long double x, std::size_t order) -> JetVec {
    JetVec out = components(Jet::variable(x, order));
    if (int(out.size()) != m) fail(errc::bad_input, "curve component count mismatch");
    return out;
  };
  return AffineCurveJet{m, id, eval};
}

}  // namespace

SmoothLiftedCurve circle_curve() {
  return SmoothLiftedCurve(closed_form_curve(
      2, "circle", [](const Jet& x) { return JetVec{cos(x), sin(x)}; }));
}

std::vector<SmoothLiftedCurve> curve_library(int m) {
  std::vector<SmoothLiftedCurve> out;
  switch (m) {
    case 2:
      out.push_back(circle_curve());
      out.push_back(SmoothLiftedCurve(closed_form_curve(2, "wobbly-m2", [](const Jet& x) {
        return JetVec{cos(x) + 0.12L * cos(2.0L * x), sin(x) + 0.10L * sin(2.0L * x)};
      })));
      out.push_back(SmoothLiftedCurve(closed_form_curve(2, "trig-exp-m2", [](const Jet& x) {
        return JetVec{cos(x) + 0.1L * exp(0.5L * x), sin(x)};
      })));
      break;
    case 3:
      // The exponential tail keeps det(gamma', gamma'', gamma''') bounded
      // away from zero for every x.
      out.push_back(SmoothLiftedCurve(closed_form_curve(3, "trig-exp-m3", [](const Jet& x) {
        return JetVec{cos(x), sin(x), 0.8L * exp(0.5L * x)};
      })));
      out.push_back(SmoothLiftedCurve(closed_form_curve(3, "trig-exp-m3b", [](const Jet& x) {
        return JetVec{cos(x), sin(x), 0.6L * exp(0.7L * x)};
      })));
      break;
    case 4:
      out.push_back(SmoothLiftedCurve(closed_form_curve(4, "harmonic-m4", [](const Jet& x) {
        return JetVec{cos(x), sin(x), 0.7L * cos(2.0L * x), 0.7L * sin(2.0L * x)};
      })));
      out.push_back(SmoothLiftedCurve(closed_form_curve(4, "harmonic-m4b", [](const Jet& x) {
        return JetVec{cos(x), sin(x), 0.5L * cos(2.0L * x), 0.8L * sin(2.0L * x)};
      })));
      break;
    case 5:
      out.push_back(SmoothLiftedCurve(closed_form_curve(5, "trig-exp-m5", [](const Jet& x) {
        return JetVec{cos(x), sin(x), 0.7L * cos(2.0L * x), 0.7L * sin(2.0L * x),
                      0.5L * exp(0.5L * x)};
      })));
      out.push_back(SmoothLiftedCurve(closed_form_curve(5, "trig-exp-m5b", [](const Jet& x) {
        return JetVec{cos(x), sin(x), 0.6L * cos(2.0L * x), 0.8L * sin(2.0L * x),
                      0.4L * exp(0.8L * x)};
      })));
      break;
    default:
      fail(errc::unsupported_dimension, "no built-in curves for m = " + std::to_string(m));
  }
  return out;
}

}  // namespace pentalab
