#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pentalab/jet.hpp"
#include "pentalab/rational.hpp"

namespace pentalab {

/// Jet variable: an invariant family member k_i or kappa_i differentiated
/// j times. Packed so monomials order canonically.
struct JetVar {
  enum Family : std::uint8_t { k = 0, kappa = 1 };
  Family family = k;
  std::uint8_t index = 0;
  std::uint16_t order = 0;

  std::uint32_t packed() const {
    return (std::uint32_t(family) << 24) | (std::uint32_t(index) << 16) | order;
  }
  static JetVar unpack(std::uint32_t p) {
    return JetVar{Family((p >> 24) & 0xff), std::uint8_t((p >> 16) & 0xff),
                  std::uint16_t(p & 0xffff)};
  }
  friend auto operator<=>(const JetVar& a, const JetVar& b) = default;

  std::string str() const;
};

/// Monomial: sorted (variable, exponent) pairs, no zero exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

/// Polynomial in jet variables with exact rational coefficients. Canonical:
/// no zero coefficients stored, monomial factor lists sorted.
class DiffPoly {
 public:
  DiffPoly() = default;

  static DiffPoly constant(const Rat& c);
  static DiffPoly var(JetVar v);
  static DiffPoly var(JetVar::Family f, int index, int order = 0);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_term() const;
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  DiffPoly& operator+=(const DiffPoly& o);
  DiffPoly& operator-=(const DiffPoly& o);
  DiffPoly operator-() const;
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  friend DiffPoly operator*(const Rat& s, const DiffPoly& a);
  friend DiffPoly operator*(const DiffPoly& a, const Rat& s) { return s * a; }

  friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }

  /// Total x-derivative: Leibniz over factors, raises jet orders by one.
  DiffPoly total_derivative() const;
  DiffPoly total_derivative(int times) const;

  /// Formal partial derivative with respect to one jet variable.
  DiffPoly partial(JetVar v) const;

  /// Euler operator sum_j (-D)^j d/d(var with order j) for one family member.
  DiffPoly euler(JetVar::Family f, int index) const;

  /// Replace every base variable of family `from` by its image (order-0
  /// polynomials); derivatives map through total derivatives of the image.
  /// Variables without an image pass through unchanged.
  DiffPoly substitute(JetVar::Family from,
                      const std::vector<DiffPoly>& images) const;

  int max_order(JetVar::Family f) const;
  int max_index(JetVar::Family f) const;

  long double evaluate(const std::function<long double(JetVar)>& vals) const;
  Jet evaluate_jet(const std::function<Jet(JetVar)>& vals, std::size_t order) const;

  /// Deterministic printer, e.g. "-3/8*k2^2 + 5/4*k2''".
  std::string str() const;

 private:
  void add_term(const Monomial& m, const Rat& c);
  std::map<Monomial, Rat> terms_;
};

inline DiffPoly dp_total_derivative(const DiffPoly& p) { return p.total_derivative(); }

DiffPoly dp_constant(long num, long den = 1);
DiffPoly dp_k(int index, int order = 0);
DiffPoly dp_kappa(int index, int order = 0);

/// Component i is the Euler operator applied with respect to family member i,
/// for i = 0..count-1 (ascending index).
std::vector<DiffPoly> variational_derivative(const DiffPoly& p, JetVar::Family f, int count);

}  // namespace pentalab
