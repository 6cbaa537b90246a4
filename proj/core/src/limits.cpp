#include "pentalab/limits.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "pentalab/errors.hpp"

namespace pentalab {

namespace {

/// Vector orthogonal to n-1 rows in R^n: signed maximal minors.
JetVec generalized_cross(const std::vector<JetVec>& rows) {
  int n = int(rows.size()) + 1;
  JetVec out(n);
  for (int drop = 0; drop < n; ++drop) {
    std::vector<JetVec> sub(n - 1, JetVec(n - 1));
    for (int r = 0; r < n - 1; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == drop) continue;
        sub[r][cc++] = rows[r][c];
      }
    }
    Jet minor = jet_det(sub);
    out[drop] = (drop % 2 == 0) ? minor : -minor;
  }
  return out;
}

long double jetvec_scale(const std::vector<JetVec>& rows) {
  long double top = 0.0L;
  for (const auto& r : rows)
    for (const auto& j : r) top = std::max(top, std::fabs(j.value()));
  return top;
}

/// Nullvector of a rows x cols jet matrix with expected nullity one; pivoted
/// elimination on constant parts.
JetVec jet_nullvector(std::vector<JetVec> a) {
  int rows = int(a.size());
  int cols = int(a[0].size());
  std::size_t order = a[0][0].order();
  std::vector<int> pivot_col;
  std::vector<int> col_of_row;
  std::vector<bool> used(cols, false);
  int rank = 0;
  long double scale = jetvec_scale(a);
  for (int r = 0; r < rows && rank < cols; ++r) {
    // Pick the largest remaining entry in this row's eliminated system.
    int best = -1;
    long double best_mag = 0.0L;
    for (int c = 0; c < cols; ++c) {
      if (used[c]) continue;
      long double mag = std::fabs(a[r][c].value());
      if (mag > best_mag) {
        best_mag = mag;
        best = c;
      }
    }
    if (best < 0 || best_mag < 1e-13L * scale) continue;  // dependent row
    used[best] = true;
    pivot_col.push_back(best);
    col_of_row.push_back(r);
    for (int rr = 0; rr < rows; ++rr) {
      if (rr == r) continue;
      if (std::fabs(a[rr][best].value()) == 0.0L) continue;
      Jet f = a[rr][best] / a[r][best];
      for (int c = 0; c < cols; ++c) a[rr][c] -= f * a[r][c];
    }
    ++rank;
  }
  if (rank != cols - 1)
    fail(errc::unexpected_dimension,
         "numerical intersection dimension is " + std::to_string(cols - rank));
  int free_col = -1;
  for (int c = 0; c < cols; ++c)
    if (!used[c]) free_col = c;
  JetVec x(cols, Jet::constant(0.0L, order));
  x[free_col] = Jet::constant(1.0L, order);
  for (int t = 0; t < rank; ++t) {
    int r = col_of_row[t], pc = pivot_col[t];
    x[pc] = -(a[r][free_col] / a[r][pc]);
  }
  return x;
}

struct FramePipeline {
  int m;
  std::vector<JetVec> frame_cols;  // frame_cols[i][comp]: jets of Gamma^(i) components
  std::vector<std::vector<JetVec>> mat;  // square system per component row
};

}  // namespace

VecXl gamma_epsilon(const SmoothLiftedCurve& curve, const IndexSchema& schema, long double x,
                    long double eps) {
  schema.validate();
  int m = curve.dim();
  if (schema.dim != m) fail(errc::bad_input, "schema and curve dimensions differ");
  const std::size_t order = std::size_t(m) + 2;

  JetVec lift = curve.lift_jets(x, order + m);
  std::vector<JetVec> frame_cols(m + 1, JetVec(m + 1));
  for (int i = 0; i <= m; ++i)
    for (int comp = 0; comp <= m; ++comp) frame_cols[i][comp] = jet_d(lift[comp], i);

  // Frame-coordinate solve for one sampled point, scaled row r by eps^-r so
  // the intersection runs on O(1) quantities.
  std::vector<JetVec> fm(m + 1, JetVec(m + 1));
  for (int comp = 0; comp <= m; ++comp)
    for (int i = 0; i <= m; ++i) fm[comp][i] = frame_cols[i][comp];

  auto scaled_coords = [&](int offset) -> JetVec {
    JetVec point = curve.lift_jets(x + offset * eps, order);
    JetVec coords = jet_solve(fm, point);
    long double s = 1.0L;
    for (int r = 0; r <= m; ++r) {
      coords[r] = (1.0L / s) * coords[r];
      s *= eps;
    }
    return coords;
  };

  std::map<int, JetVec> coord_cache;
  for (const auto& sub : schema.subspaces)
    for (int o : sub)
      if (!coord_cache.count(o)) coord_cache.emplace(o, scaled_coords(o));

  // Intersection in scaled coordinates.
  JetVec s_scaled;
  bool all_hyperplanes = true;
  for (const auto& sub : schema.subspaces)
    if (int(sub.size()) != m) all_hyperplanes = false;

  if (all_hyperplanes && int(schema.subspaces.size()) == m) {
    std::vector<JetVec> normals;
    for (const auto& sub : schema.subspaces) {
      std::vector<JetVec> pts;
      for (int o : sub) pts.push_back(coord_cache.at(o));
      JetVec nrm = generalized_cross(pts);
      long double mag = 0.0L, in_scale = jetvec_scale(pts);
      for (const auto& j : nrm) mag = std::max(mag, std::fabs(j.value()));
      if (mag < 1e-9L * std::pow(in_scale, (long double)m))
        fail(errc::unexpected_dimension, "degenerate subspace span");
      normals.push_back(std::move(nrm));
    }
    s_scaled = generalized_cross(normals);
  } else if (schema.subspaces.size() == 2) {
    // Parametric: nullvector of the (m+1) x (m+2) block matrix [A1 | -A2].
    const auto& s1 = schema.subspaces[0];
    const auto& s2 = schema.subspaces[1];
    int cols = int(s1.size() + s2.size());
    std::vector<JetVec> block(m + 1, JetVec(cols));
    for (int r = 0; r <= m; ++r) {
      int c = 0;
      for (int o : s1) block[r][c++] = coord_cache.at(o)[r];
      for (int o : s2) block[r][c++] = -coord_cache.at(o)[r];
    }
    JetVec z = generalized_cross(block);  // rows of block are m+1 vectors in R^{m+2}
    s_scaled.assign(m + 1, Jet::constant(0.0L, order));
    for (std::size_t c = 0; c < s1.size(); ++c)
      for (int r = 0; r <= m; ++r) s_scaled[r] += z[c] * coord_cache.at(s1[c])[r];
  } else {
    // General stacked system: v = A_1 c_1 and A_1 c_1 - A_j c_j = 0.
    int cols = 0;
    for (const auto& sub : schema.subspaces) cols += int(sub.size());
    int rows = (int(schema.subspaces.size()) - 1) * (m + 1);
    std::vector<JetVec> stacked(rows, JetVec(cols, Jet::constant(0.0L, order)));
    const auto& first = schema.subspaces[0];
    for (std::size_t blockrow = 1; blockrow < schema.subspaces.size(); ++blockrow) {
      int rbase = int(blockrow - 1) * (m + 1);
      for (int r = 0; r <= m; ++r) {
        int c = 0;
        for (int o : first) stacked[rbase + r][c++] = coord_cache.at(o)[r];
        for (std::size_t bb = 1; bb < schema.subspaces.size(); ++bb) {
          for (int o : schema.subspaces[bb]) {
            if (bb == blockrow) stacked[rbase + r][c] = -coord_cache.at(o)[r];
            ++c;
          }
        }
      }
    }
    JetVec z = jet_nullvector(stacked);
    s_scaled.assign(m + 1, Jet::constant(0.0L, order));
    for (std::size_t c = 0; c < first.size(); ++c)
      for (int r = 0; r <= m; ++r) s_scaled[r] += z[c] * coord_cache.at(first[c])[r];
  }

  {
    long double mag = 0.0L;
    for (const auto& j : s_scaled) mag = std::max(mag, std::fabs(j.value()));
    if (!(mag > 1e-9L)) fail(errc::unexpected_dimension, "intersection vanishes numerically");
  }

  // Back to ambient coordinates: v = sum_r eps^r s_r Gamma^(r).
  JetVec v(m + 1, Jet::constant(0.0L, order));
  long double s = 1.0L;
  for (int r = 0; r <= m; ++r) {
    for (int comp = 0; comp <= m; ++comp) v[comp] += (s * s_scaled[r]) * frame_cols[r][comp];
    s *= eps;
  }

  // Affine chart with the largest component; lift of the output curve.
  int chart = 0;
  long double best = 0.0L;
  for (int comp = 0; comp <= m; ++comp) {
    long double mag = std::fabs(v[comp].value());
    if (mag > best) {
      best = mag;
      chart = comp;
    }
  }
  long double vscale = 0.0L;
  for (const auto& j : v) vscale = std::max(vscale, std::fabs(j.value()));
  if (best < 1e-9L * vscale) fail(errc::chart_failure, "no usable affine chart");

  std::vector<Jet> u;
  for (int comp = 0; comp <= m; ++comp) {
    if (comp == chart) continue;
    u.push_back(v[comp] / v[chart]);
  }

  MatXl deriv(m, m);
  for (int r = 1; r <= m; ++r)
    for (int c = 0; c < m; ++c) deriv(r - 1, c) = jet_d(u[c], r).value();
  long double w = deriv.determinant();
  // Cofactor expansion along the constant chart row of det(sigma, sigma', ...).
  if (chart % 2 == 1) w = -w;
  if (std::fabs(w) < 1e-300L) fail(errc::degenerate_curve, "image curve is degenerate");

  long double scale;
  if (w > 0.0L) {
    scale = std::pow(w, -1.0L / (m + 1));
  } else if ((m + 1) % 2 == 1) {
    scale = -std::pow(-w, -1.0L / (m + 1));
  } else {
    fail(errc::degenerate_curve, "image lift determinant negative in even frame dimension");
  }

  VecXl out(m + 1);
  for (int comp = 0; comp <= m; ++comp) out[comp] = scale * (v[comp].value() / v[chart].value());

  // In even frame dimension both signs are normalized; take the branch near
  // the input lift.
  if ((m + 1) % 2 == 0) {
    VecXl base(m + 1);
    for (int comp = 0; comp <= m; ++comp) base[comp] = lift[comp].value();
    if ((out + base).norm() < (out - base).norm()) out = -out;
  }
  return out;
}

VecXl frame_decompose(const VecXl& v, const SmoothLiftedCurve& curve, long double x) {
  MatXl f = curve.frame(x);
  int s = int(f.rows());
  Eigen::MatrixXd fd = f.cast<double>();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(fd);
  double cond = svd.singularValues()[0] / svd.singularValues()[s - 1];
  if (!(cond < 1e8)) fail(errc::ill_conditioned_frame, "frame condition " + std::to_string(cond));
  VecXl c = f.fullPivLu().solve(v);
  long double resid = (f * c - v).norm();
  if (resid > 1e-10L * (1.0L + v.norm()))
    fail(errc::ill_conditioned_frame, "frame decomposition residual too large");
  return c;
}

LiftVectorField constant_field(int dim, const std::vector<double>& coeffs) {
  LiftVectorField f;
  f.dim = dim;
  f.r0_symbolic = true;
  f.coeffs.assign(dim + 1, DiffPoly());
  for (std::size_t i = 1; i < coeffs.size() && int(i) <= dim; ++i)
    f.coeffs[i] = DiffPoly::constant(Rat(coeffs[i]));
  return f;
}

long double normalization_coefficient(const SmoothLiftedCurve& curve, long double x,
                                      const LiftVectorField& field) {
  int m = curve.dim();
  if (field.dim != m) fail(errc::bad_input, "field dimension mismatch");
  const std::size_t order = std::size_t(m) + 1;

  JetVec lift = curve.lift_jets(x, order + m + 1);
  JetVec kjets = curve.wilczynski_jets(x, order + 1);
  auto lookup = [&](JetVar v) -> Jet {
    if (v.family != JetVar::k || int(v.index) >= m)
      fail(errc::bad_input, "field references unknown invariant " + v.str());
    return jet_d(kjets[v.index], v.order);
  };

  // G = sum_{i>=1} c_i Gamma^(i) as component jets.
  JetVec g(m + 1, Jet::constant(0.0L, order));
  for (int i = 1; i <= m; ++i) {
    if (field.coeffs[i].is_zero()) continue;
    Jet ci = field.coeffs[i].evaluate_jet(lookup, order);
    for (int comp = 0; comp <= m; ++comp) g[comp] += ci * jet_d(lift[comp], i);
  }

  MatXl frame(m + 1, m + 1);
  for (int comp = 0; comp <= m; ++comp)
    for (int i = 0; i <= m; ++i) frame(comp, i) = lift[comp].derivative(i);

  long double acc = 0.0L;
  for (int slot = 0; slot <= m; ++slot) {
    MatXl rep = frame;
    for (int comp = 0; comp <= m; ++comp) rep(comp, slot) = jet_d(g[comp], slot).value();
    acc += rep.determinant();
  }
  return -acc / (m + 1);
}

std::vector<double> default_epsilons(int expected_order) {
  if (expected_order >= 3) return {4e-2, 2e-2, 1e-2, 5e-3};
  return {1e-2, 5e-3, 2.5e-3, 1.25e-3};
}

LimitReport fit_limit(const SmoothLiftedCurve& curve, const IndexSchema& schema, double x,
                      const std::vector<double>& epsilons, const LiftVectorField* predicted) {
  if (epsilons.size() < 4) fail(errc::bad_input, "need at least 4 epsilons");
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    if (!(epsilons[i] < epsilons[i - 1])) fail(errc::bad_input, "epsilons must decrease");
  double ratio = epsilons[1] / epsilons[0];
  for (std::size_t i = 1; i + 1 < epsilons.size(); ++i)
    if (std::abs(epsilons[i + 1] / epsilons[i] - ratio) > 1e-9)
      fail(errc::bad_input, "epsilons must be in geometric progression");

  int m = curve.dim();
  LimitReport rep;
  rep.schema_name = schema.name;
  rep.curve_id = curve.id();
  rep.x = x;
  rep.epsilons = epsilons;

  JetVec lift = curve.lift_jets(x, 0);
  VecXl base(m + 1);
  for (int comp = 0; comp <= m; ++comp) base[comp] = lift[comp].value();

  std::vector<VecXl> coeffs;
  for (double eps : epsilons) {
    VecXl ge = gamma_epsilon(curve, schema, x, eps);
    VecXl c = frame_decompose(ge - base, curve, x);
    coeffs.push_back(c);
    rep.frame_coeffs.push_back(std::vector<double>(m + 1));
    for (int i = 0; i <= m; ++i) rep.frame_coeffs.back()[i] = double(c[i]);
  }

  int ne = int(epsilons.size());
  int dom = 0;
  long double dommag = 0.0L;
  for (int i = 0; i <= m; ++i) {
    long double mag = std::fabs(coeffs[ne - 1][i]);
    if (mag > dommag) {
      dommag = mag;
      dom = i;
    }
  }
  rep.dominant_index = dom;

  // Log-log slope and R^2 on the dominant coefficient.
  {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (int i = 0; i < ne; ++i) {
      double lx = std::log(epsilons[i]);
      double mag = std::abs(double(coeffs[i][dom]));
      if (mag <= 0.0) fail(errc::no_clean_order, "dominant coefficient vanished");
      double ly = std::log(mag);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      syy += ly * ly;
    }
    double n = ne;
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double r2num = (n * sxy - sx * sy) * (n * sxy - sx * sy);
    double r2den = (n * sxx - sx * sx) * (n * syy - sy * sy);
    rep.fitted_order = slope;
    rep.fit_r2 = r2den > 0 ? r2num / r2den : 1.0;
    if (rep.fit_r2 < 0.999)
      fail(errc::no_clean_order, "log-log fit R^2 = " + std::to_string(rep.fit_r2));
  }
  rep.rounded_order = std::max(1, int(std::lround(rep.fitted_order)));

  // Richardson on coeff / eps^p over the geometric ladder.
  {
    long double q = ratio;
    rep.extrapolated_coeffs.assign(m + 1, 0.0);
    for (int j = 0; j <= m; ++j) {
      std::vector<long double> t(ne);
      for (int i = 0; i < ne; ++i)
        t[i] = coeffs[i][j] / std::pow((long double)epsilons[i], (long double)rep.rounded_order);
      for (int k = 1; k < ne; ++k) {
        long double qk = std::pow(q, (long double)k);
        for (int i = 0; i + k < ne; ++i) t[i] = (t[i + 1] - qk * t[i]) / (1.0L - qk);
      }
      rep.extrapolated_coeffs[j] = double(t[0]);
    }
  }

  // Order-resolved least squares c_j(eps) = sum_t b_t eps^t.
  {
    int deg = std::min(ne, rep.rounded_order + 2);
    MatXl a(ne, deg);
    for (int i = 0; i < ne; ++i) {
      long double p = 1.0L;
      for (int t = 0; t < deg; ++t) {
        p *= epsilons[i] / epsilons[0];
        a(i, t) = p;
      }
    }
    rep.order_components.assign(m + 1, std::vector<double>(deg, 0.0));
    for (int j = 0; j <= m; ++j) {
      VecXl rhs(ne);
      for (int i = 0; i < ne; ++i) rhs[i] = coeffs[i][j];
      VecXl sol = a.colPivHouseholderQr().solve(rhs);
      long double p = 1.0L;
      for (int t = 0; t < deg; ++t) {
        p *= epsilons[0];
        rep.order_components[j][t] = double(sol[t] / p);
      }
    }
    rep.tangential_drift = rep.order_components.size() > 1 ? rep.order_components[1][0] : 0.0;
  }

  // Prediction and the normalization oracle.
  if (predicted) {
    Eigen::VectorXd kv = curve.wilczynski(x);
    auto lookup = [&](JetVar v) -> Jet {
      if (v.family != JetVar::k) fail(errc::bad_input, "prediction uses unknown family");
      if (v.order > 0) fail(errc::bad_input, "prediction needs invariant jets; use the oracle");
      return Jet::constant(kv[v.index], 0);
    };
    rep.predicted_coeffs.assign(m + 1, 0.0);
    for (int i = 1; i <= m; ++i)
      rep.predicted_coeffs[i] = double(predicted->coeffs[i].evaluate_jet(lookup, 0).value());
    rep.r0_oracle = double(normalization_coefficient(curve, x, *predicted));
    rep.predicted_coeffs[0] = rep.r0_oracle;

    double num = 0.0, den = 0.0;
    for (int i = 0; i <= m; ++i) {
      num += rep.extrapolated_coeffs[i] * rep.predicted_coeffs[i];
      den += rep.predicted_coeffs[i] * rep.predicted_coeffs[i];
    }
    rep.prediction_scale = den > 0 ? num / den : 0.0;
    double top = 0.0;
    for (int i = 0; i <= m; ++i)
      top = std::max(top,
                     std::abs(rep.extrapolated_coeffs[i] - rep.prediction_scale * rep.predicted_coeffs[i]));
    double ref = 0.0;
    for (int i = 0; i <= m; ++i) ref = std::max(ref, std::abs(rep.extrapolated_coeffs[i]));
    rep.discrepancy = ref > 0 ? top / ref : top;
    double oracle_scaled = rep.prediction_scale * rep.r0_oracle;
    rep.r0_deviation = std::abs(rep.extrapolated_coeffs[0] - oracle_scaled) /
                       std::max(std::abs(oracle_scaled), 1e-300);
  } else {
    std::vector<double> cf(rep.extrapolated_coeffs.begin(), rep.extrapolated_coeffs.end());
    LiftVectorField f = constant_field(m, cf);
    rep.r0_oracle = double(normalization_coefficient(curve, x, f));
    rep.r0_deviation = std::abs(rep.extrapolated_coeffs[0] - rep.r0_oracle) /
                       std::max(std::abs(rep.r0_oracle), 1e-300);
  }
  return rep;
}

}  // namespace pentalab
