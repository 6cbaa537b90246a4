#pragma once

#include <cstddef>
#include <vector>

namespace pentalab {

/// Truncated Taylor series in (x - x0), extended precision coefficients.
/// c[t] holds f^(t)(x0)/t!. Closed-form curve derivatives, the intersection
/// pipeline and the normalization oracle all run on these, so no finite
/// differencing enters the limit measurements.
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::size_t order) : c_(order + 1, 0.0L) {}

  static Jet constant(long double v, std::size_t order);
  static Jet variable(long double x0, std::size_t order);

  std::size_t order() const { return c_.empty() ? 0 : c_.size() - 1; }
  long double coeff(std::size_t t) const { return t < c_.size() ? c_[t] : 0.0L; }
  long double& coeff_ref(std::size_t t) { return c_[t]; }
  long double value() const { return coeff(0); }

  /// t-th derivative value: c[t] * t!
  long double derivative(std::size_t t) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet operator-() const;

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);

  friend Jet operator*(long double s, Jet a);
  friend Jet operator*(Jet a, long double s) { return s * a; }
  friend Jet operator+(Jet a, long double s);
  friend Jet operator+(long double s, Jet a) { return a + s; }
  friend Jet operator-(Jet a, long double s) { return a + (-s); }
  friend Jet operator-(long double s, const Jet& a) { return (-a) + s; }

  friend Jet sin(const Jet& f);
  friend Jet cos(const Jet& f);
  friend Jet exp(const Jet& f);
  /// f^alpha for f(x0) > 0, real alpha.
  friend Jet pow(const Jet& f, long double alpha);

 private:
  std::vector<long double> c_;
};

using JetVec = std::vector<Jet>;

/// Derivative as a jet (one order shorter per application).
Jet jet_d(const Jet& f, int times = 1);

/// Determinant by fraction-free-ish Gaussian elimination with pivoting on the
/// constant term. Square matrices only; sizes here are <= 9.
Jet jet_det(std::vector<JetVec> m);

/// Solve A x = b with jet entries, pivoting on constant terms.
JetVec jet_solve(std::vector<JetVec> a, JetVec b);

}  // namespace pentalab
