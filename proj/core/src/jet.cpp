#include "pentalab/jet.hpp"

#include <cmath>
#include <cstdlib>

#include "pentalab/errors.hpp"

namespace pentalab {

Jet Jet::constant(long double v, std::size_t order) {
  Jet j(order);
  j.c_[0] = v;
  return j;
}

Jet Jet::variable(long double x0, std::size_t order) {
  Jet j(order);
  j.c_[0] = x0;
  if (order >= 1) j.c_[1] = 1.0L;
  return j;
}

long double Jet::derivative(std::size_t t) const {
  long double f = 1.0L;
  for (std::size_t i = 2; i <= t; ++i) f *= static_cast<long double>(i);
  return coeff(t) * f;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0L);
  for (std::size_t t = 0; t < o.c_.size(); ++t) c_[t] += o.c_[t];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0L);
  for (std::size_t t = 0; t < o.c_.size(); ++t) c_[t] -= o.c_[t];
  return *this;
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& v : r.c_) v = -v;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  std::size_t order = std::max(a.order(), b.order());
  Jet r(order);
  for (std::size_t t = 0; t <= order; ++t) {
    long double acc = 0.0L;
    std::size_t lo = t > b.order() ? t - b.order() : 0;
    std::size_t hi = std::min(t, a.order());
    for (std::size_t j = lo; j <= hi; ++j) acc += a.c_[j] * b.c_[t - j];
    r.c_[t] = acc;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b.value() == 0.0L) fail(errc::division_by_zero, "jet division by zero constant term");
  std::size_t order = std::max(a.order(), b.order());
  Jet r(order);
  for (std::size_t t = 0; t <= order; ++t) {
    long double acc = a.coeff(t);
    for (std::size_t j = 1; j <= std::min(t, b.order()); ++j) acc -= b.c_[j] * r.c_[t - j];
    r.c_[t] = acc / b.c_[0];
  }
  return r;
}

Jet operator*(long double s, Jet a) {
  for (auto& v : a.c_) v *= s;
  return a;
}

Jet operator+(Jet a, long double s) {
  if (a.c_.empty()) a.c_.resize(1, 0.0L);
  a.c_[0] += s;
  return a;
}

// sin/cos run as a joint recurrence driven by S' = C f', C' = -S f'.
static void sin_cos(const Jet& f, Jet& s, Jet& c) {
  std::size_t order = f.order();
  s = Jet(order);
  c = Jet(order);
  s.coeff_ref(0) = std::sin(static_cast<long double>(f.value()));
  c.coeff_ref(0) = std::cos(static_cast<long double>(f.value()));
  for (std::size_t t = 0; t < order; ++t) {
    long double sa = 0.0L, ca = 0.0L;
    for (std::size_t j = 0; j <= t; ++j) {
      long double fp = static_cast<long double>(t + 1 - j) * f.coeff(t + 1 - j);
      sa += c.coeff(j) * fp;
      ca -= s.coeff(j) * fp;
    }
    s.coeff_ref(t + 1) = sa / static_cast<long double>(t + 1);
    c.coeff_ref(t + 1) = ca / static_cast<long double>(t + 1);
  }
}

Jet sin(const Jet& f) {
  Jet s, c;
  sin_cos(f, s, c);
  return s;
}

Jet cos(const Jet& f) {
  Jet s, c;
  sin_cos(f, s, c);
  return c;
}

Jet exp(const Jet& f) {
  std::size_t order = f.order();
  Jet r(order);
  r.coeff_ref(0) = std::exp(static_cast<long double>(f.value()));
  for (std::size_t t = 0; t < order; ++t) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j <= t; ++j)
      acc += r.coeff(j) * static_cast<long double>(t + 1 - j) * f.coeff(t + 1 - j);
    r.coeff_ref(t + 1) = acc / static_cast<long double>(t + 1);
  }
  return r;
}

Jet pow(const Jet& f, long double alpha) {
  if (f.value() <= 0.0L) fail(errc::degenerate_curve, "jet pow with nonpositive base");
  std::size_t order = f.order();
  Jet p(order);
  p.coeff_ref(0) = std::pow(static_cast<long double>(f.value()), alpha);
  // p' f = alpha p f'
  for (std::size_t t = 0; t < order; ++t) {
    long double acc = 0.0L;
    for (std::size_t j = 0; j <= t; ++j)
      acc += alpha * static_cast<long double>(j + 1) * f.coeff(j + 1) * p.coeff(t - j);
    for (std::size_t j = 1; j <= t; ++j)
      acc -= static_cast<long double>(j) * p.coeff(j) * f.coeff(t + 1 - j);
    p.coeff_ref(t + 1) = acc / (static_cast<long double>(t + 1) * f.coeff(0));
  }
  return p;
}

Jet jet_d(const Jet& f, int times) {
  Jet r = f;
  for (int t = 0; t < times; ++t) {
    std::size_t ord = r.order();
    Jet d(ord > 0 ? ord - 1 : 0);
    for (std::size_t i = 0; i + 1 <= ord; ++i)
      d.coeff_ref(i) = static_cast<long double>(i + 1) * r.coeff(i + 1);
    r = d;
  }
  return r;
}

Jet jet_det(std::vector<JetVec> m) {
  std::size_t n = m.size();
  if (n == 0) return Jet::constant(1.0L, 0);
  std::size_t order = m[0][0].order();
  Jet det = Jet::constant(1.0L, order);
  long double sign = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(static_cast<double>(m[r][col].value())) >
          std::fabs(static_cast<double>(m[piv][col].value())))
        piv = r;
    if (m[piv][col].value() == 0.0L) return Jet::constant(0.0L, order);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      sign = -sign;
    }
    det = det * m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      Jet factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return sign * det;
}

JetVec jet_solve(std::vector<JetVec> a, JetVec b) {
  std::size_t n = a.size();
  std::size_t order = b.empty() ? 0 : b[0].order();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(static_cast<double>(a[r][col].value())) >
          std::fabs(static_cast<double>(a[piv][col].value())))
        piv = r;
    if (a[piv][col].value() == 0.0L)
      fail(errc::ill_conditioned_frame, "singular jet system");
    if (piv != col) {
      std::swap(a[piv], a[col]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      Jet factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  JetVec x(n, Jet(order));
  for (std::size_t i = n; i-- > 0;) {
    Jet acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace pentalab
