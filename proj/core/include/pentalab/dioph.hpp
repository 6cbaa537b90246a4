#pragma once

#include <array>
#include <optional>
#include <vector>

#include "pentalab/rational.hpp"

namespace pentalab {

using Triple = std::array<long, 3>;

/// Signed elementary-symmetric data of an integer tuple: M_i are the Cramer
/// quotients of the Vandermonde system with the s-th power row, equivalently
/// the coefficients expressing t^s through 1, t, ..., t^{s-1} at the tuple
/// entries. For s = 3: M_1 = product, M_2 = -(sum of pair products),
/// M_3 = sum.
struct SymmetricInvariants {
  std::vector<long> tuple;
  std::vector<Rat> M;  // M[i] holds M_{i+1}

  const Rat& m1() const { return M[0]; }
  const Rat& m2() const { return M[1]; }
  const Rat& m3() const { return M[2]; }
  /// M_4 = M_3 M_2 + M_1 and M_5 = M_3^2 + M_2 (three-entry tuples).
  Rat m4() const { return M[2] * M[1] + M[0]; }
  Rat m5() const { return M[2] * M[2] + M[1]; }
};

/// Characteristic-polynomial route; entries must be pairwise distinct.
SymmetricInvariants symmetric_invariants(const std::vector<long>& tuple);

/// Independent Vandermonde/Cramer route (exact rational elimination).
std::vector<Rat> cramer_invariants(const std::vector<long>& tuple);

/// power_dot(tuple, p) = sum_i t_i^p * x_i with x = A(tuple)^{-1} e_1; the
/// raw ingredient of the third-order coefficient systems.
Rat power_dot_inverse_e1(const std::vector<long>& tuple, int power);

struct Rp3Candidate {
  Triple m{}, n{}, r{};
  bool c1_holds = false;
  bool rank_full = false;
  bool system_invertible = false;
  bool sum_squares_equal = false;
  Rat gamma3;              // M_1 / 6
  std::optional<Rat> q;    // gamma_1 / (M_1 k_2), defined when solvable

  bool admissible(const Rat& require_q) const {
    return c1_holds && rank_full && q && *q == require_q;
  }
};

/// Exact checks and the gamma_1 solve for a three-plane map in RP^3.
Rp3Candidate rp3_candidate(const Triple& m, const Triple& n, const Triple& r);

/// (c - 1 + a(b-1)) / (b - c), the admissibility constraint of the
/// three-plane ansatz; exact, b != c.
Rat rp3_admissibility_ratio(long a, long b, long c);

/// Exhaustive search over unordered sets of three distinct offset triples
/// with entries in [-max_abs, max_abs] \ {0}, grouped by product, filtered on
/// q == require_q. Canonical sorted output, independent of thread count.
std::vector<Rp3Candidate> rp3_search(int max_abs, const Rat& require_q, int threads = 1);

struct Rp4Check {
  Triple m{}, n{}, r{};
  bool condition1 = false;      // M_1 M_3 = N_1 + N_4 M_1 and the r analog
  bool rank_full = false;       // 2x2 reduced matrix invertible
  bool det_identity = false;    // 20 det_lhs = 9 det_rhs (sign fixed by the solutions)
  bool det_identity_printed_sign = false;  // 20 det_lhs = -9 det_rhs
  Rat det_lhs, det_rhs;

  bool passes() const { return condition1 && rank_full && det_identity; }
};

/// Conditions for one plane and two 3-subspaces in RP^4; n and r are taken
/// through x_n, i.e. as 4-tuples (n_1, n_2, n_3, 0).
Rp4Check rp4_three_plane_check(const Triple& m, const Triple& n, const Triple& r);

/// Exhaustive rp4 search; {n, r} unordered, m distinguished.
std::vector<Rp4Check> rp4_search(int max_abs, int threads = 1);

/// Exact gamma_1/gamma_3 per k_3 for the two-3-subspace configuration in
/// RP^4. Preconditions: distinct nonzero entries, M_1 = N_1 != 0 and
/// M_3 = N_3; DegeneratePlanes when M_2 = N_2.
Rat rp4_two_subspace_ratio(const Triple& m, const Triple& n);

/// All sorted triples with distinct nonzero entries in [-max_abs, max_abs].
std::vector<Triple> enumerate_triples(int max_abs);

}  // namespace pentalab
