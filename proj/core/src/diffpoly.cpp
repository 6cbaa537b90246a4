#include "pentalab/diffpoly.hpp"

#include <algorithm>
#include <sstream>

#include "pentalab/errors.hpp"

namespace pentalab {

std::string JetVar::str() const {
  std::string name = family == k ? "k" : "kappa";
  name += std::to_string(int(index));
  if (order > 0 && order <= 3) name += std::string(order, '\'');
  if (order > 3) name += "^(" + std::to_string(int(order)) + ")";
  return name;
}

DiffPoly DiffPoly::constant(const Rat& c) {
  DiffPoly p;
  if (c != 0) p.terms_[Monomial{}] = c;
  return p;
}

DiffPoly DiffPoly::var(JetVar v) {
  DiffPoly p;
  p.terms_[Monomial{{v.packed(), 1}}] = 1;
  return p;
}

DiffPoly DiffPoly::var(JetVar::Family f, int index, int order) {
  return var(JetVar{f, std::uint8_t(index), std::uint16_t(order)});
}

bool DiffPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Rat DiffPoly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rat(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

static Monomial mul_monomials(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first == b[j].first) {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i, ++j;
    } else if (a[i].first < b[j].first) {
      r.push_back(a[i++]);
    } else {
      r.push_back(b[j++]);
    }
  }
  for (; i < a.size(); ++i) r.push_back(a[i]);
  for (; j < b.size(); ++j) r.push_back(b[j]);
  return r;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  DiffPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(mul_monomials(ma, mb), ca * cb);
  return r;
}

DiffPoly operator*(const Rat& s, const DiffPoly& a) {
  DiffPoly r;
  if (s == 0) return r;
  for (const auto& [m, c] : a.terms_) r.terms_[m] = s * c;
  return r;
}

DiffPoly DiffPoly::total_derivative() const {
  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    for (std::size_t f = 0; f < m.size(); ++f) {
      JetVar v = JetVar::unpack(m[f].first);
      JetVar dv = v;
      dv.order += 1;
      Monomial nm;
      nm.reserve(m.size() + 1);
      for (std::size_t g = 0; g < m.size(); ++g) {
        if (g == f) {
          if (m[g].second > 1) nm.emplace_back(m[g].first, m[g].second - 1);
        } else {
          nm.push_back(m[g]);
        }
      }
      nm = mul_monomials(nm, Monomial{{dv.packed(), 1}});
      r.add_term(nm, c * Rat(long(m[f].second)));
    }
  }
  return r;
}

DiffPoly DiffPoly::total_derivative(int times) const {
  DiffPoly r = *this;
  for (int i = 0; i < times; ++i) r = r.total_derivative();
  return r;
}

DiffPoly DiffPoly::partial(JetVar v) const {
  DiffPoly r;
  std::uint32_t key = v.packed();
  for (const auto& [m, c] : terms_) {
    for (std::size_t f = 0; f < m.size(); ++f) {
      if (m[f].first != key) continue;
      Monomial nm;
      for (std::size_t g = 0; g < m.size(); ++g) {
        if (g == f) {
          if (m[g].second > 1) nm.emplace_back(m[g].first, m[g].second - 1);
        } else {
          nm.push_back(m[g]);
        }
      }
      r.add_term(nm, c * Rat(long(m[f].second)));
    }
  }
  return r;
}

DiffPoly DiffPoly::euler(JetVar::Family f, int index) const {
  DiffPoly r;
  int top = max_order(f);
  for (int j = 0; j <= top; ++j) {
    DiffPoly pj = partial(JetVar{f, std::uint8_t(index), std::uint16_t(j)});
    if (pj.is_zero()) continue;
    DiffPoly term = pj.total_derivative(j);
    if (j % 2 == 1) term = -term;
    r += term;
  }
  return r;
}

DiffPoly DiffPoly::substitute(JetVar::Family from, const std::vector<DiffPoly>& images) const {
  // Cache D^order(images[index]) as needed.
  std::map<std::pair<int, int>, DiffPoly> cache;
  auto image_of = [&](int index, int order) -> const DiffPoly& {
    for (int o = 0; o <= order; ++o) {
      auto key = std::make_pair(index, o);
      if (cache.find(key) == cache.end())
        cache.emplace(key, o == 0 ? images[index]
                                  : cache.at({index, o - 1}).total_derivative());
    }
    return cache.at({index, order});
  };

  DiffPoly r;
  for (const auto& [m, c] : terms_) {
    DiffPoly term = DiffPoly::constant(c);
    for (const auto& [packed, exp] : m) {
      JetVar v = JetVar::unpack(packed);
      DiffPoly factor;
      if (v.family == from && v.index < images.size()) {
        factor = image_of(v.index, v.order);
      } else {
        factor = DiffPoly::var(v);
      }
      for (std::uint32_t e = 0; e < exp; ++e) term = term * factor;
    }
    r += term;
  }
  return r;
}

int DiffPoly::max_order(JetVar::Family f) const {
  int top = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [packed, exp] : m) {
      JetVar v = JetVar::unpack(packed);
      if (v.family == f) top = std::max(top, int(v.order));
    }
  return top;
}

int DiffPoly::max_index(JetVar::Family f) const {
  int top = -1;
  for (const auto& [m, c] : terms_)
    for (const auto& [packed, exp] : m) {
      JetVar v = JetVar::unpack(packed);
      if (v.family == f) top = std::max(top, int(v.index));
    }
  return top;
}

long double DiffPoly::evaluate(const std::function<long double(JetVar)>& vals) const {
  long double acc = 0.0L;
  for (const auto& [m, c] : terms_) {
    long double t = rat_long_double(c);
    for (const auto& [packed, exp] : m) {
      long double v = vals(JetVar::unpack(packed));
      for (std::uint32_t e = 0; e < exp; ++e) t *= v;
    }
    acc += t;
  }
  return acc;
}

Jet DiffPoly::evaluate_jet(const std::function<Jet(JetVar)>& vals, std::size_t order) const {
  Jet acc = Jet::constant(0.0L, order);
  for (const auto& [m, c] : terms_) {
    Jet t = Jet::constant(rat_long_double(c), order);
    for (const auto& [packed, exp] : m) {
      Jet v = vals(JetVar::unpack(packed));
      for (std::uint32_t e = 0; e < exp; ++e) t = t * v;
    }
    acc += t;
  }
  return acc;
}

std::string DiffPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a < 0) {
        out << "-";
        a = -a;
      }
    } else {
      out << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    bool coeff_shown = false;
    if (m.empty() || a != 1) {
      out << rat_str(a);
      coeff_shown = true;
    }
    for (std::size_t f = 0; f < m.size(); ++f) {
      if (coeff_shown || f > 0) out << "*";
      out << JetVar::unpack(m[f].first).str();
      if (m[f].second > 1) out << "^" << m[f].second;
    }
  }
  return out.str();
}

DiffPoly dp_constant(long num, long den) { return DiffPoly::constant(rat(num, den)); }
DiffPoly dp_k(int index, int order) { return DiffPoly::var(JetVar::k, index, order); }
DiffPoly dp_kappa(int index, int order) { return DiffPoly::var(JetVar::kappa, index, order); }

std::vector<DiffPoly> variational_derivative(const DiffPoly& p, JetVar::Family f, int count) {
  std::vector<DiffPoly> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(p.euler(f, i));
  return out;
}

}  // namespace pentalab
