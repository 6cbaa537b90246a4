#include "pentalab/gauge.hpp"

#include <sstream>

#include "pentalab/errors.hpp"

namespace pentalab {

DiffOp DiffOp::from_poly(const DiffPoly& p) {
  DiffOp op;
  if (!p.is_zero()) op.c_ = {p};
  return op;
}

DiffOp DiffOp::d(int power) {
  DiffOp op;
  op.c_.assign(power + 1, DiffPoly());
  op.c_[power] = DiffPoly::constant(1);
  return op;
}

bool DiffOp::is_zero() const {
  for (const auto& p : c_)
    if (!p.is_zero()) return false;
  return true;
}

const DiffPoly& DiffOp::coeff(int j) const {
  static const DiffPoly zero;
  if (j < 0 || j >= int(c_.size())) return zero;
  return c_[j];
}

void DiffOp::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  trim();
  return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
  trim();
  return *this;
}

DiffOp DiffOp::operator-() const {
  DiffOp r = *this;
  for (auto& p : r.c_) p = -p;
  return r;
}

DiffOp operator*(const DiffOp& a, const DiffOp& b) {
  DiffOp r;
  if (a.c_.empty() || b.c_.empty()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, DiffPoly());
  for (int i = 0; i < int(a.c_.size()); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; j < int(b.c_.size()); ++j) {
      if (b.c_[j].is_zero()) continue;
      // D^i o q D^j = sum_t binom(i,t) q^(t) D^(i+j-t)
      DiffPoly deriv = b.c_[j];
      for (int t = 0; t <= i; ++t) {
        Rat binom = rat_binomial(i, t);
        r.c_[i + j - t] += binom * (a.c_[i] * deriv);
        if (t < i) deriv = deriv.total_derivative();
      }
    }
  }
  r.trim();
  return r;
}

bool operator==(const DiffOp& a, const DiffOp& b) {
  int top = std::max(a.degree(), b.degree());
  for (int j = 0; j <= top; ++j)
    if (!(a.coeff(j) == b.coeff(j))) return false;
  return true;
}

DiffOp DiffOp::adjoint() const {
  DiffOp r;
  for (int j = 0; j < int(c_.size()); ++j) {
    if (c_[j].is_zero()) continue;
    DiffOp term = DiffOp::d(j) * DiffOp::from_poly(c_[j]);
    if (j % 2 == 1) term = -term;
    r += term;
  }
  return r;
}

DiffPoly DiffOp::apply(const DiffPoly& f) const {
  DiffPoly out;
  DiffPoly deriv = f;
  for (int j = 0; j < int(c_.size()); ++j) {
    if (!c_[j].is_zero()) out += c_[j] * deriv;
    if (j + 1 < int(c_.size())) deriv = deriv.total_derivative();
  }
  return out;
}

std::string DiffOp::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int j = int(c_.size()) - 1; j >= 0; --j) {
    if (c_[j].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    if (j == 0) {
      out << c_[j].str();
    } else {
      out << "(" << c_[j].str() << ")*D";
      if (j > 1) out << "^" << j;
    }
  }
  return out.str();
}

bool SymbolicMatrix::is_zero() const {
  for (const auto& row : e)
    for (const auto& op : row)
      if (!op.is_zero()) return false;
  return true;
}

std::string SymbolicMatrix::str() const {
  std::ostringstream out;
  for (const auto& row : e) {
    out << "[ ";
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << " | ";
      out << row[c].str();
    }
    out << " ]\n";
  }
  return out.str();
}

SymbolicMatrix sym_mul(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  SymbolicMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j)
      for (int l = 0; l < a.cols(); ++l) r.e[i][j] += a.e[i][l] * b.e[l][j];
  return r;
}

SymbolicMatrix sym_sub(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  SymbolicMatrix r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.e[i][j] -= b.e[i][j];
  return r;
}

SymbolicMatrix sym_add(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  SymbolicMatrix r = a;
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j) r.e[i][j] += b.e[i][j];
  return r;
}

static void check_dim(int n) {
  if (n < 2 || n > 8) fail(errc::unsupported_dimension, "n must be in [2, 8]");
}

SymbolicMatrix companion_matrix(int n) {
  check_dim(n);
  int s = n + 1;
  SymbolicMatrix m(s, s);
  for (int i = 1; i < s; ++i) m.e[i][i - 1] = DiffOp::from_poly(DiffPoly::constant(1));
  for (int i = 0; i <= s - 2; ++i) m.e[i][s - 1] = DiffOp::from_poly(-dp_k(i));
  return m;
}

SymbolicMatrix kappa_form_matrix(int n) {
  check_dim(n);
  int s = n + 1;
  SymbolicMatrix m(s, s);
  for (int i = 1; i < s; ++i) m.e[i][i - 1] = DiffOp::from_poly(DiffPoly::constant(1));
  for (int j = 1; j < s; ++j) m.e[0][j] = DiffOp::from_poly(dp_kappa(s - 1 - j));
  return m;
}

namespace {

struct GaugeSolution {
  std::vector<std::vector<DiffPoly>> g;   // unipotent upper triangular, entries in k
  std::vector<DiffPoly> kappa_in_k;       // kappa_i as polynomial in k
  std::vector<DiffPoly> k_in_kappa;       // k_i as polynomial in kappa
};

// Row-by-row solve of g_x + companion*g = g*kappa_form. The subdiagonal
// structure determines each row of g from the one below it; the top row then
// reads off the kappa invariants.
GaugeSolution solve_gauge(int n) {
  check_dim(n);
  int s = n + 1;
  std::vector<std::vector<DiffPoly>> g(s, std::vector<DiffPoly>(s));
  g[s - 1][s - 1] = DiffPoly::constant(1);
  for (int i = s - 1; i >= 1; --i) {
    for (int j = 0; j < s; ++j) {
      DiffPoly v;
      if (j + 1 < s) v += g[i][j + 1];
      v -= g[i][j].total_derivative();
      if (i <= s - 2 && j == s - 1) v += dp_k(i);
      g[i - 1][j] = v;
    }
  }
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < i; ++j)
      if (!g[i][j].is_zero()) fail(errc::unsupported_dimension, "gauge solve lost triangularity");
    if (!(g[i][i] == DiffPoly::constant(1)))
      fail(errc::unsupported_dimension, "gauge solve lost unipotency");
  }

  std::vector<DiffPoly> kappa_in_k(n);
  for (int j = 1; j < s; ++j) {
    DiffPoly v = g[0][j].total_derivative();
    if (j + 1 < s) v -= g[0][j + 1];
    if (j == s - 1) v -= dp_k(0);
    kappa_in_k[s - 1 - j] = v;
  }

  // kappa_i = -k_i + R_i(k_{i+1..}); invert from the top index down.
  std::vector<DiffPoly> k_in_kappa(n);
  std::vector<DiffPoly> images(n);
  for (int t = 0; t < n; ++t) images[t] = dp_k(t);
  for (int i = n - 1; i >= 0; --i) {
    DiffPoly rest = kappa_in_k[i] + dp_k(i);        // R_i, only k_{i+1..} appear
    rest = rest.substitute(JetVar::k, images);      // known higher k -> kappa
    k_in_kappa[i] = rest - dp_kappa(i);
    images[i] = k_in_kappa[i];
  }
  return GaugeSolution{g, kappa_in_k, k_in_kappa};
}

}  // namespace

SymbolicMatrix gauge_matrix(int n) {
  GaugeSolution sol = solve_gauge(n);
  int s = n + 1;
  SymbolicMatrix m(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) m.e[i][j] = DiffOp::from_poly(sol.g[i][j]);
  return m;
}

std::vector<DiffPoly> kappa_dictionary(int n) { return solve_gauge(n).k_in_kappa; }

std::vector<DiffPoly> inverse_kappa_dictionary(int n) { return solve_gauge(n).kappa_in_k; }

SymbolicMatrix gauge_residual(int n) {
  GaugeSolution sol = solve_gauge(n);
  std::vector<DiffPoly> dict = sol.k_in_kappa;
  int s = n + 1;

  SymbolicMatrix khat_k = companion_matrix(n);
  SymbolicMatrix kform = kappa_form_matrix(n);

  SymbolicMatrix g_kappa(s, s), gx_kappa(s, s), khat_kappa(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      DiffPoly gk = sol.g[i][j].substitute(JetVar::k, dict);
      g_kappa.e[i][j] = DiffOp::from_poly(gk);
      gx_kappa.e[i][j] = DiffOp::from_poly(gk.total_derivative());
      khat_kappa.e[i][j] =
          DiffOp::from_poly(khat_k.e[i][j].coeff(0).substitute(JetVar::k, dict));
    }

  return sym_sub(sym_add(gx_kappa, sym_mul(khat_kappa, g_kappa)), sym_mul(g_kappa, kform));
}

SymbolicMatrix change_of_variables_adjoint(int n) {
  std::vector<DiffPoly> dict = kappa_dictionary(n);
  SymbolicMatrix f(n, n);
  for (int row = 0; row < n; ++row) {
    int ki = n - 1 - row;
    const DiffPoly& image = dict[ki];
    for (int col = 0; col < n; ++col) {
      int kj = n - 1 - col;
      DiffOp op;
      int top = image.max_order(JetVar::kappa);
      for (int t = 0; t <= top; ++t) {
        DiffPoly part = image.partial(JetVar{JetVar::kappa, std::uint8_t(kj), std::uint16_t(t)});
        if (!part.is_zero()) op += DiffOp::from_poly(part) * DiffOp::d(t);
      }
      f.e[row][col] = op;
    }
  }
  return f;
}

std::vector<DiffPoly> apply_adjoint(const SymbolicMatrix& frechet,
                                    const std::vector<DiffPoly>& v) {
  int n = frechet.rows();
  std::vector<DiffPoly> out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += frechet.e[j][i].adjoint().apply(v[j]);
  return out;
}

std::vector<DiffPoly> descending_gradient(const DiffPoly& p, JetVar::Family f, int n) {
  std::vector<DiffPoly> out(n);
  for (int j = 0; j < n; ++j) out[j] = p.euler(f, n - 1 - j);
  return out;
}

LiftVectorField lift_realization(int n, const DiffPoly& density) {
  GaugeSolution sol = solve_gauge(n);
  int s = n + 1;

  std::vector<DiffPoly> dk = descending_gradient(density, JetVar::k, n);
  for (auto& p : dk) p = p.substitute(JetVar::k, sol.k_in_kappa);

  SymbolicMatrix frechet = change_of_variables_adjoint(n);
  std::vector<DiffPoly> dkappa = apply_adjoint(frechet, dk);
  for (auto& p : dkappa) p = p.substitute(JetVar::kappa, sol.kappa_in_k);

  LiftVectorField field;
  field.dim = n;
  field.coeffs.assign(s, DiffPoly());
  field.r0_symbolic = true;
  // Gamma_t = rho (r0; delta_kappa H) with rho = wilczynski_frame * g; column
  // t+1 of g pairs with component t of the gradient.
  for (int j = 0; j < s; ++j)
    for (int t = 0; t < n; ++t) field.coeffs[j] += sol.g[j][t + 1] * dkappa[t];
  return field;
}

std::string LiftVectorField::str() const {
  std::ostringstream out;
  bool first = true;
  for (int i = int(coeffs.size()) - 1; i >= 1; --i) {
    if (coeffs[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    out << "(" << coeffs[i].str() << ")*G";
    if (i <= 3)
      out << std::string(i, '\'');
    else
      out << "^(" << i << ")";
  }
  if (r0_symbolic) {
    if (!first) out << " + ";
    out << "(r0";
    if (!coeffs.empty() && !coeffs[0].is_zero()) out << " + " << coeffs[0].str();
    out << ")*G";
  } else if (!coeffs.empty() && !coeffs[0].is_zero()) {
    if (!first) out << " + ";
    out << "(" << coeffs[0].str() << ")*G";
  }
  return out.str();
}

}  // namespace pentalab
