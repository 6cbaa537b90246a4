#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pentalab {

/// Exact rational scalar. All symbolic and Diophantine computations run on
/// these; floating point never enters the exact pipelines.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Parse "n", "n/d" or a decimal-free signed integer string.
Rat rat_parse(const std::string& text);

/// Canonical "n" or "n/d" form.
std::string rat_str(const Rat& q);

inline double rat_double(const Rat& q) { return q.get_d(); }

inline long double rat_long_double(const Rat& q) {
  // Split to keep precision beyond double for moderate operands.
  return static_cast<long double>(q.get_num().get_d()) /
         static_cast<long double>(q.get_den().get_d());
}

/// Exact binomial with integer arguments, n may be negative (generalized
/// binomials with negative upper index stay integral).
Rat rat_binomial(long n, unsigned long k);

}  // namespace pentalab
