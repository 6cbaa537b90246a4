#pragma once

#include <string>
#include <vector>

#include "pentalab/diffpoly.hpp"

namespace pentalab {

/// Differential operator sum p_j D^j with polynomial coefficients, j >= 0.
class DiffOp {
 public:
  DiffOp() = default;

  static DiffOp from_poly(const DiffPoly& p);
  static DiffOp d(int power = 1);

  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const;
  const DiffPoly& coeff(int j) const;

  DiffOp& operator+=(const DiffOp& o);
  DiffOp& operator-=(const DiffOp& o);
  DiffOp operator-() const;
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  /// Composition.
  friend DiffOp operator*(const DiffOp& a, const DiffOp& b);

  friend bool operator==(const DiffOp& a, const DiffOp& b);

  /// Formal adjoint: sum (-D)^j o p_j.
  DiffOp adjoint() const;

  /// Apply to a differential polynomial.
  DiffPoly apply(const DiffPoly& f) const;

  std::string str() const;

 private:
  void trim();
  std::vector<DiffPoly> c_;
};

/// Dense matrix of differential-operator entries.
struct SymbolicMatrix {
  std::vector<std::vector<DiffOp>> e;

  SymbolicMatrix() = default;
  SymbolicMatrix(int rows, int cols) : e(rows, std::vector<DiffOp>(cols)) {}
  int rows() const { return int(e.size()); }
  int cols() const { return e.empty() ? 0 : int(e[0].size()); }
  DiffOp& at(int r, int c) { return e[r][c]; }
  const DiffOp& at(int r, int c) const { return e[r][c]; }
  bool is_zero() const;
  std::string str() const;
};

SymbolicMatrix sym_mul(const SymbolicMatrix& a, const SymbolicMatrix& b);
SymbolicMatrix sym_sub(const SymbolicMatrix& a, const SymbolicMatrix& b);
SymbolicMatrix sym_add(const SymbolicMatrix& a, const SymbolicMatrix& b);

/// Companion Maurer-Cartan matrix carrying the Wilczynski invariants:
/// subdiagonal ones, last column (-k_0, ..., -k_{n-1}, 0). Size (n+1)^2.
SymbolicMatrix companion_matrix(int n);

/// Canonical first-row form with the kappa invariants.
SymbolicMatrix kappa_form_matrix(int n);

/// Invariant gauge g with g_x + companion*g = g*kappa_form, unipotent upper
/// triangular, entries differential polynomials in k. Solved exactly by the
/// bottom-up row recurrence; n is the projective dimension.
SymbolicMatrix gauge_matrix(int n);

/// k_i expressed in the kappa family (index i = 0..n-1).
std::vector<DiffPoly> kappa_dictionary(int n);

/// kappa_i expressed in the k family.
std::vector<DiffPoly> inverse_kappa_dictionary(int n);

/// g_x + companion*g - g*kappa_form with every k rewritten through the
/// dictionary; identically zero when g and the dictionary are consistent.
SymbolicMatrix gauge_residual(int n);

/// Frechet derivative matrix of the dictionary, rows k_{n-1}..k_0 against
/// columns kappa_{n-1}..kappa_0 (descending). Lower triangular with -1
/// diagonal. Its formal adjoint implements the change of variables for
/// variational derivatives.
SymbolicMatrix change_of_variables_adjoint(int n);

/// Apply the formal adjoint of the Frechet matrix to a descending vector.
std::vector<DiffPoly> apply_adjoint(const SymbolicMatrix& frechet,
                                    const std::vector<DiffPoly>& v);

/// Lifted curve evolution Gamma_t = sum c_i Gamma^(i). The Gamma coefficient
/// is pinned by the unit-determinant normalization, not by the algebra, so it
/// stays symbolic; `c0_explicit` keeps the algebraic part for reference.
struct LiftVectorField {
  int dim = 0;  // curves in RP^dim, frame size dim+1
  std::vector<DiffPoly> coeffs;  // index i multiplies Gamma^(i); coeffs[0] is the explicit part
  bool r0_symbolic = true;

  std::string str() const;
};

/// Realize an AGD Hamiltonian density (a differential polynomial in k for
/// curves in RP^n) as the lifted invariant evolution through the gauge:
/// delta_k -> delta_kappa by the adjoint change of variables, then contract
/// with the gauged frame columns.
LiftVectorField lift_realization(int n, const DiffPoly& density);

/// Variational derivative in descending component order (k_{n-1}, ..., k_0),
/// matching the matrix conventions above.
std::vector<DiffPoly> descending_gradient(const DiffPoly& p, JetVar::Family f, int n);

}  // namespace pentalab
