#include "pentalab/psdo.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <vector>

#include "pentalab/errors.hpp"

namespace pentalab {

PseudoDiffOp PseudoDiffOp::zero() { return PseudoDiffOp(); }

PseudoDiffOp PseudoDiffOp::d_power(int a) {
  PseudoDiffOp p;
  p.coeffs_[a] = DiffPoly::constant(1);
  p.floor_ = a;
  p.exact_below_ = true;
  return p;
}

PseudoDiffOp PseudoDiffOp::from_coeff(int order, const DiffPoly& c) {
  PseudoDiffOp p;
  if (!c.is_zero()) p.coeffs_[order] = c;
  p.floor_ = order;
  p.exact_below_ = true;
  return p;
}

PseudoDiffOp PseudoDiffOp::wilczynski_operator(int n) {
  if (n < 2) fail(errc::bad_input, "operator order must be >= 2");
  PseudoDiffOp L = d_power(n);
  for (int i = 0; i <= n - 2; ++i) L += from_coeff(i, dp_k(i));
  L.floor_ = 0;
  L.exact_below_ = true;
  return L;
}

int PseudoDiffOp::top() const { return coeffs_.empty() ? floor_ : coeffs_.rbegin()->first; }

const DiffPoly& PseudoDiffOp::coeff(int order) const {
  static const DiffPoly zero_poly;
  if (order < floor_ && !exact_below_)
    fail(errc::floor_underflow,
         "coefficient at order " + std::to_string(order) + " is below floor " +
             std::to_string(floor_));
  auto it = coeffs_.find(order);
  return it == coeffs_.end() ? zero_poly : it->second;
}

void PseudoDiffOp::set(int order, const DiffPoly& c) {
  if (c.is_zero())
    coeffs_.erase(order);
  else
    coeffs_[order] = c;
}

PseudoDiffOp& PseudoDiffOp::operator+=(const PseudoDiffOp& o) {
  // The sum is only reliable where both operands are.
  if (!o.exact_below_ && (exact_below_ || o.floor_ > floor_)) {
    floor_ = exact_below_ ? o.floor_ : std::max(floor_, o.floor_);
    exact_below_ = false;
  } else if (!exact_below_ && o.exact_below_) {
    // keep ours
  } else if (exact_below_ && o.exact_below_) {
    floor_ = std::min(floor_, o.floor_);
  }
  for (const auto& [a, c] : o.coeffs_) {
    auto it = coeffs_.find(a);
    if (it == coeffs_.end()) {
      coeffs_[a] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  truncate(floor_);
  return *this;
}

PseudoDiffOp& PseudoDiffOp::operator-=(const PseudoDiffOp& o) {
  PseudoDiffOp neg = Rat(-1) * o;
  return *this += neg;
}

PseudoDiffOp operator*(const Rat& s, PseudoDiffOp a) {
  if (s == 0) {
    PseudoDiffOp z;
    z.floor_ = a.floor_;
    z.exact_below_ = a.exact_below_;
    return z;
  }
  for (auto& [o, c] : a.coeffs_) c = s * c;
  return a;
}

void PseudoDiffOp::truncate(int new_floor) {
  if (new_floor > floor_ || !exact_below_) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
      if (it->first < new_floor)
        it = coeffs_.erase(it);
      else
        ++it;
    }
  }
  if (new_floor > floor_) {
    floor_ = new_floor;
    exact_below_ = false;
  }
}

PseudoDiffOp psdo_mul(const PseudoDiffOp& p, const PseudoDiffOp& q, std::optional<int> want_floor) {
  // Reliability: an unknown coefficient of p below its floor meets q's top
  // order (and vice versa), so nothing below these bounds can be trusted.
  int reliability = std::numeric_limits<int>::min();
  if (!p.exact_below()) reliability = std::max(reliability, p.floor() + q.top());
  if (!q.exact_below()) reliability = std::max(reliability, q.floor() + p.top());

  bool finite = true;  // composition terminates iff p has no negative orders
  for (const auto& [a, f] : p.coeffs())
    if (a < 0) finite = false;

  int cut;
  bool exact;
  if (reliability == std::numeric_limits<int>::min()) {
    // Both operands exact.
    if (finite) {
      cut = std::numeric_limits<int>::min();
      exact = true;
    } else {
      cut = want_floor.value_or(p.floor() + q.floor());
      exact = false;
    }
  } else {
    cut = want_floor ? std::max(*want_floor, reliability) : reliability;
    exact = false;
  }

  PseudoDiffOp r;
  for (const auto& [b, g] : q.coeffs()) {
    // Cache the total derivatives of this coefficient.
    std::vector<DiffPoly> dg{g};
    for (const auto& [a, f] : p.coeffs()) {
      int jmax;
      if (a >= 0)
        jmax = a;
      else if (cut == std::numeric_limits<int>::min())
        fail(errc::floor_underflow, "untruncated product with negative orders");
      else
        jmax = a + b - cut;
      for (int j = 0; j <= jmax; ++j) {
        int order = a + b - j;
        if (cut != std::numeric_limits<int>::min() && order < cut) break;
        while (int(dg.size()) <= j) dg.push_back(dg.back().total_derivative());
        Rat binom = rat_binomial(a, static_cast<unsigned long>(j));
        if (binom == 0) continue;
        DiffPoly term = binom * (f * dg[j]);
        if (term.is_zero()) continue;
        auto it = r.coeffs_.find(order);
        if (it == r.coeffs_.end()) {
          r.coeffs_[order] = term;
        } else {
          it->second += term;
          if (it->second.is_zero()) r.coeffs_.erase(it);
        }
      }
    }
  }
  if (exact) {
    r.exact_below_ = true;
    r.floor_ = r.coeffs_.empty() ? 0 : r.coeffs_.begin()->first;
  } else {
    r.exact_below_ = false;
    r.floor_ = cut;
  }
  return r;
}

PseudoDiffOp psdo_pow(const PseudoDiffOp& p, int e, std::optional<int> want_floor) {
  if (e < 0) fail(errc::bad_input, "negative power");
  if (e == 0) return PseudoDiffOp::d_power(0);
  PseudoDiffOp r = p;
  for (int i = 1; i < e; ++i) {
    // Later factors raise the floor by top() each, so earlier partial
    // products must reach correspondingly deeper.
    std::optional<int> w;
    if (want_floor) w = *want_floor - (e - 1 - i) * std::max(p.top(), 0);
    r = psdo_mul(r, p, w);
  }
  return r;
}

PseudoDiffOp psdo_root(const PseudoDiffOp& L, int order, int depth) {
  if (order < 1 || depth < 1) fail(errc::bad_input, "root order and depth must be positive");
  const DiffPoly one = DiffPoly::constant(1);
  if (!(L.has_coeff(order) && L.coeff(order) == one))
    fail(errc::not_monic, "leading coefficient at order " + std::to_string(order) + " must be 1");
  if (L.has_coeff(order - 1))
    fail(errc::missing_normalization,
         "coefficient at order " + std::to_string(order - 1) + " must vanish");

  int work_floor = order - 1 - depth;
  PseudoDiffOp root = PseudoDiffOp::d_power(1);
  for (int j = 1; j <= depth; ++j) {
    PseudoDiffOp power = psdo_pow(root, order, work_floor);
    int target = order - 1 - j;
    DiffPoly err = L.has_coeff(target) ? L.coeff(target) : DiffPoly();
    if (power.has_coeff(target)) err -= power.coeff(target);
    DiffPoly ell = rat(1, order) * err;
    if (!ell.is_zero()) root += PseudoDiffOp::from_coeff(-j, ell);
    // Intermediate roots are exact as written: D + l_1 D^-1 + ... + l_j D^-j.
    root.floor_ = -j;
    root.exact_below_ = true;
  }
  root.floor_ = -depth;
  root.exact_below_ = false;
  return root;
}

DiffPoly residue(const PseudoDiffOp& p) { return p.coeff(-1); }

DiffPoly hamiltonian_density(int op_order, int r, std::optional<int> depth_opt) {
  if (op_order < 2) fail(errc::bad_input, "operator order must be >= 2");
  if (r < 1 || r >= op_order)
    fail(errc::bad_input, "exponent numerator must satisfy 1 <= r < operator order");
  int depth = depth_opt.value_or(op_order + 3);
  PseudoDiffOp L = PseudoDiffOp::wilczynski_operator(op_order);
  PseudoDiffOp root = psdo_root(L, op_order, depth);
  PseudoDiffOp frac = psdo_pow(root, r, -2);
  return residue(frac);
}

bool density_equivalent(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly diff = a - b;
  if (diff.constant_term() != 0) return false;
  for (auto family : {JetVar::k, JetVar::kappa}) {
    int count = std::max(diff.max_index(family), -1) + 1;
    for (int i = 0; i < count; ++i)
      if (!diff.euler(family, i).is_zero()) return false;
  }
  return true;
}

std::string PseudoDiffOp::str() const {
  std::ostringstream out;
  bool first = true;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    out << "(" << it->second.str() << ")";
    if (it->first != 0) out << "*D^" << it->first;
  }
  if (first) out << "0";
  if (!exact_below_) out << " + O(D^" << (floor_ - 1) << ")";
  return out.str();
}

}  // namespace pentalab
