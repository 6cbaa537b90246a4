#include "pentalab/polygon.hpp"

#include <cmath>

#include "pentalab/errors.hpp"

namespace pentalab {

double angular_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  double nu = u.norm(), nv = v.norm();
  if (nu == 0.0 || nv == 0.0) fail(errc::bad_input, "zero vector has no direction");
  Eigen::VectorXd a = u / nu, b = v / nv;
  Eigen::VectorXd perp = a - a.dot(b) * b;
  double s = std::min(1.0, perp.norm());
  return std::asin(s);
}

Eigen::VectorXd LiftedPolygon::vertex(long i) const {
  long n = period();
  long q = i >= 0 ? i / n : -((-i + n - 1) / n);
  long r = i - q * n;
  Eigen::VectorXd v = vertices.col(r);
  if (q > 0) {
    for (long t = 0; t < q; ++t) v = monodromy * v;
  } else if (q < 0) {
    Eigen::MatrixXd inv = monodromy.inverse();
    for (long t = 0; t < -q; ++t) v = inv * v;
  }
  return v;
}

double LiftedPolygon::lift_determinant(long i) const {
  Eigen::MatrixXd f(dim + 1, dim + 1);
  for (int j = 0; j <= dim; ++j) f.col(j) = vertex(i + j);
  return f.determinant();
}

LiftedPolygon LiftedPolygon::make(int dim, Eigen::MatrixXd verts, Eigen::MatrixXd monodromy,
                                  bool normalized) {
  if (dim < 2) fail(errc::bad_input, "dim must be >= 2");
  if (verts.rows() != dim + 1) fail(errc::bad_input, "vertices must have m+1 rows");
  if (verts.cols() < dim + 2) fail(errc::bad_input, "period must be >= m+2");
  if (monodromy.rows() != dim + 1 || monodromy.cols() != dim + 1)
    fail(errc::bad_input, "monodromy must be (m+1)x(m+1)");
  double det = monodromy.determinant();
  if (std::abs(det) < 1e-12) fail(errc::bad_input, "singular monodromy");
  if (std::abs(det - 1.0) > 1e-12) {
    if (det < 0.0 && dim % 2 != 0)
      fail(errc::bad_input, "negative monodromy determinant cannot be rescaled to 1");
    double s = det < 0.0 ? -std::pow(-det, -1.0 / (dim + 1)) : std::pow(det, -1.0 / (dim + 1));
    monodromy *= s;
  }
  LiftedPolygon p;
  p.dim = dim;
  p.vertices = std::move(verts);
  p.monodromy = std::move(monodromy);
  p.normalized = normalized;
  return p;
}

LiftedPolygon LiftedPolygon::from_affine(int dim, const std::vector<Eigen::VectorXd>& affine) {
  if (affine.empty()) fail(errc::bad_input, "no vertices");
  Eigen::MatrixXd verts(dim + 1, affine.size());
  for (std::size_t i = 0; i < affine.size(); ++i) {
    if (affine[i].size() != dim) fail(errc::bad_input, "affine vertex of wrong dimension");
    verts(0, i) = 1.0;
    verts.col(i).tail(dim) = affine[i];
  }
  return make(dim, std::move(verts), Eigen::MatrixXd::Identity(dim + 1, dim + 1));
}

LiftedPolygon transform(const Eigen::MatrixXd& g, const LiftedPolygon& p) {
  LiftedPolygon out = p;
  out.vertices = g * p.vertices;
  out.monodromy = g * p.monodromy * g.inverse();
  out.normalized = false;
  return out;
}

LiftedPolygon shift_polygon(const LiftedPolygon& p, int shift) {
  LiftedPolygon out = p;
  for (int i = 0; i < p.period(); ++i) out.vertices.col(i) = p.vertex(i + shift);
  return out;
}

LiftedPolygon discrete_normalize(const LiftedPolygon& p) {
  int n = p.period();
  int m = p.dim;
  Eigen::VectorXd dets(n);
  for (int i = 0; i < n; ++i) {
    dets[i] = p.lift_determinant(i);
    if (std::abs(dets[i]) < 1e-14)
      fail(errc::non_liftable, "vanishing lift determinant at vertex " + std::to_string(i));
  }

  LiftedPolygon work = p;
  if ((dets.array() < 0.0).all()) {
    if ((m + 1) % 2 == 1) {
      work.vertices = -work.vertices;  // same projective polygon
      dets = -dets;
    } else {
      fail(errc::non_liftable, "all lift determinants negative in even frame dimension");
    }
  } else if ((dets.array() < 0.0).any()) {
    fail(errc::non_liftable, "lift determinant sign pattern is not constant over the period");
  }

  // Positive rescaling V_i -> lambda_i V_i needs prod_{j=0..m} lambda_{i+j}
  // = 1/d_i cyclically. The residue-class products modulo gcd(N, m+1) are the
  // obstruction.
  int g = std::gcd(n, m + 1);
  Eigen::VectorXd b(n);
  for (int i = 0; i < n; ++i) b[i] = -std::log(dets[i]);
  if (g > 1) {
    std::vector<double> cls(g, 0.0);
    for (int i = 0; i < n; ++i) cls[i % g] += b[i];
    for (int r = 1; r < g; ++r) {
      if (std::abs(cls[r] - cls[0]) > 1e-9 * (1.0 + std::abs(cls[0])))
        fail(errc::non_liftable,
             "inconsistent determinant products around the period: class " + std::to_string(r) +
                 " product ratio " + std::to_string(std::exp(cls[r] - cls[0])));
    }
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) a(i, (i + j) % n) += 1.0;
  Eigen::VectorXd x = a.completeOrthogonalDecomposition().solve(b);
  double resid = (a * x - b).lpNorm<Eigen::Infinity>();
  if (resid > 1e-9 * (1.0 + b.lpNorm<Eigen::Infinity>()))
    fail(errc::non_liftable, "rescaling system inconsistent, residual " + std::to_string(resid));

  LiftedPolygon out = work;
  for (int i = 0; i < n; ++i) out.vertices.col(i) *= std::exp(x[i]);
  out.normalized = true;
  return out;
}

std::optional<ProjectiveEquivalence> projective_equivalence(const LiftedPolygon& p,
                                                            const LiftedPolygon& q, double tol) {
  if (p.dim != q.dim || p.period() != q.period())
    fail(errc::bad_input, "polygons must share dimension and period");
  int s = p.dim + 1;
  int n = p.period();

  // g V_i parallel to W_i: project g V_i onto the orthocomplement of W_i and
  // stack the linear constraints on vec(g).
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * p.dim, s * s);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd w = q.vertices.col(i).normalized();
    // Orthonormal basis of w^perp from a thin QR of [w | I].
    Eigen::MatrixXd basis(s, s);
    basis.col(0) = w;
    basis.block(0, 1, s, s - 1) = Eigen::MatrixXd::Identity(s, s).leftCols(s - 1);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis);
    Eigen::MatrixXd qmat = qr.householderQ();
    const Eigen::VectorXd& v = p.vertices.col(i);
    for (int t = 0; t < p.dim; ++t) {
      Eigen::VectorXd u = qmat.col(t + 1);
      for (int r = 0; r < s; ++r)
        for (int c = 0; c < s; ++c) a(i * p.dim + t, r * s + c) = u[r] * v[c];
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  Eigen::VectorXd gvec = svd.matrixV().col(s * s - 1);
  Eigen::MatrixXd g(s, s);
  for (int r = 0; r < s; ++r)
    for (int c = 0; c < s; ++c) g(r, c) = gvec[r * s + c];

  double det = g.determinant();
  if (std::abs(det) < 1e-300) return std::nullopt;
  double scale = std::pow(std::abs(det), -1.0 / s);
  g *= scale;
  if (g.determinant() < 0.0 && s % 2 == 1) g = -g;

  double residual = 0.0;
  for (int i = 0; i < n; ++i)
    residual = std::max(residual, angular_distance(g * p.vertices.col(i), q.vertices.col(i)));
  if (residual >= tol) return std::nullopt;
  return ProjectiveEquivalence{g, residual};
}

Eigen::VectorXd span_intersection(const std::vector<Eigen::MatrixXd>& spans) {
  if (spans.empty()) fail(errc::bad_input, "no spans");
  int s = int(spans[0].rows());
  int normal_count = 0;
  for (const auto& b : spans) {
    if (b.rows() != s) fail(errc::bad_input, "span dimension mismatch");
    normal_count += s - int(b.cols());
  }
  if (normal_count < s - 1)
    fail(errc::unexpected_dimension, "expected intersection dimension exceeds one");

  Eigen::MatrixXd normals(normal_count, s);
  int row = 0;
  for (const auto& b : spans) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeThinV);
    int k = int(b.cols());
    double smax = svd.singularValues()[0];
    if (svd.singularValues()[k - 1] < 1e-9 * smax)
      fail(errc::unexpected_dimension, "span basis is numerically dependent");
    for (int t = k; t < s; ++t) normals.row(row++) = svd.matrixU().col(t).transpose();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(normals, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv[0];
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] >= 1e-9 * smax) ++rank;
  int nullity = s - rank;
  if (nullity != 1)
    fail(errc::unexpected_dimension,
         "numerical intersection dimension is " + std::to_string(nullity));

  Eigen::VectorXd v = svd.matrixV().col(s - 1);
  for (int i = 0; i < s; ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

Eigen::MatrixXd random_sl(int size, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::MatrixXd g(size, size);
    for (int r = 0; r < size; ++r)
      for (int c = 0; c < size; ++c) g(r, c) = gauss(rng);
    double det = g.determinant();
    if (std::abs(det) < 1e-3) continue;
    if (det < 0.0) {
      if (size % 2 == 1) {
        g = -g;
      } else {
        g.col(0) *= -1.0;
      }
      det = g.determinant();
    }
    return g * std::pow(det, -1.0 / size);
  }
  fail(errc::bad_input, "could not draw a well-conditioned transform");
}

LiftedPolygon regular_polygon(int nverts) {
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < nverts; ++i) {
    double th = 2.0 * M_PI * i / nverts;
    Eigen::VectorXd a(2);
    a << std::cos(th), std::sin(th);
    pts.push_back(a);
  }
  LiftedPolygon raw = LiftedPolygon::from_affine(2, pts);
  return nverts % 3 != 0 ? discrete_normalize(raw) : raw;
}

LiftedPolygon random_convex_polygon(int nverts, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int attempt = 0; attempt < 256; ++attempt) {
    std::vector<Eigen::VectorXd> pts;
    for (int i = 0; i < nverts; ++i) {
      double th = 2.0 * M_PI * i / nverts + 0.25 * unif(rng) * 2.0 * M_PI / nverts;
      double rad = 1.0 + 0.35 * unif(rng);
      Eigen::VectorXd a(2);
      a << rad * std::cos(th), rad * std::sin(th);
      pts.push_back(a);
    }
    bool convex = true;
    for (int i = 0; i < nverts && convex; ++i) {
      Eigen::VectorXd d1 = pts[(i + 1) % nverts] - pts[i];
      Eigen::VectorXd d2 = pts[(i + 2) % nverts] - pts[(i + 1) % nverts];
      double cross = d1[0] * d2[1] - d1[1] * d2[0];
      if (cross <= 1e-6) convex = false;
    }
    if (!convex) continue;
    LiftedPolygon raw = LiftedPolygon::from_affine(2, pts);
    if (nverts % 3 != 0) return discrete_normalize(raw);
    // Closed N-gons with 3 | N generically admit no unit-determinant lift.
    return raw;
  }
  fail(errc::bad_input, "convex polygon sampling failed");
}

}  // namespace pentalab
