#pragma once

#include <map>
#include <optional>
#include <string>

#include "pentalab/diffpoly.hpp"

namespace pentalab {

/// Truncated formal series sum c_a D^a with DiffPoly coefficients.
///
/// `floor` marks the lowest reliable order: compositions against D^a with
/// a < 0 generate infinite descending tails, so every operator tracks how far
/// down its coefficients can be trusted. When `exact_below` is set the
/// operator is exact: everything under the floor is identically zero (plain
/// differential operators).
class PseudoDiffOp {
 public:
  PseudoDiffOp() = default;

  static PseudoDiffOp zero();
  static PseudoDiffOp d_power(int a);
  static PseudoDiffOp from_coeff(int order, const DiffPoly& c);

  /// Monic operator D^n + k_{n-2} D^{n-2} + ... + k_1 D + k_0.
  static PseudoDiffOp wilczynski_operator(int n);

  const std::map<int, DiffPoly>& coeffs() const { return coeffs_; }
  int floor() const { return floor_; }
  bool exact_below() const { return exact_below_; }
  int top() const;

  /// Reliable coefficient read; FloorUnderflow below the floor.
  const DiffPoly& coeff(int order) const;
  bool has_coeff(int order) const { return coeffs_.count(order) > 0; }

  PseudoDiffOp& operator+=(const PseudoDiffOp& o);
  PseudoDiffOp& operator-=(const PseudoDiffOp& o);
  friend PseudoDiffOp operator+(PseudoDiffOp a, const PseudoDiffOp& b) { return a += b; }
  friend PseudoDiffOp operator-(PseudoDiffOp a, const PseudoDiffOp& b) { return a -= b; }
  friend PseudoDiffOp operator*(const Rat& s, PseudoDiffOp a);

  void truncate(int new_floor);

  std::string str() const;

 private:
  void set(int order, const DiffPoly& c);
  friend PseudoDiffOp psdo_mul(const PseudoDiffOp&, const PseudoDiffOp&, std::optional<int>);
  friend PseudoDiffOp psdo_root(const PseudoDiffOp&, int, int);

  std::map<int, DiffPoly> coeffs_;
  int floor_ = 0;
  bool exact_below_ = true;
};

/// Composition with the law D^a o f = sum_j binom(a,j) f^(j) D^(a-j).
/// `want_floor` asks for coefficients down to that order; the result floor is
/// never deeper than what the operands can reliably provide.
PseudoDiffOp psdo_mul(const PseudoDiffOp& p, const PseudoDiffOp& q,
                      std::optional<int> want_floor = std::nullopt);

inline PseudoDiffOp operator*(const PseudoDiffOp& a, const PseudoDiffOp& b) {
  return psdo_mul(a, b);
}

PseudoDiffOp psdo_pow(const PseudoDiffOp& p, int e, std::optional<int> want_floor = std::nullopt);

/// Solve R = D + l_1 D^-1 + ... + l_depth D^-depth with R^order = L, for a
/// monic L of the given order with vanishing subleading coefficient. The l_i
/// come out as differential polynomials in the k's.
PseudoDiffOp psdo_root(const PseudoDiffOp& L, int order, int depth);

/// Coefficient of D^-1.
DiffPoly residue(const PseudoDiffOp& p);

/// res(L^{r/op_order}) for L = D^op_order + k_{op_order-2} D^{op_order-2} + ... + k_0.
/// Both operator-order conventions in use are reached by passing the order
/// explicitly.
DiffPoly hamiltonian_density(int op_order, int r, std::optional<int> depth = std::nullopt);

/// Densities equal modulo im D: variational derivatives agree for every
/// family member and the zero-jet constants match.
bool density_equivalent(const DiffPoly& a, const DiffPoly& b);

}  // namespace pentalab
