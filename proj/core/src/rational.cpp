#include "pentalab/rational.hpp"

#include "pentalab/errors.hpp"

namespace pentalab {

Rat rat_parse(const std::string& text) {
  if (text.empty()) fail(errc::bad_input, "empty rational literal");
  try {
    Rat q(text);
    if (q.get_den() == 0) fail(errc::division_by_zero, "zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(errc::bad_input, "cannot parse rational '" + text + "'");
  }
}

std::string rat_str(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rat rat_binomial(long n, unsigned long k) {
  Rat out = 1;
  for (unsigned long j = 0; j < k; ++j) {
    out *= rat(n - static_cast<long>(j));
    out /= rat(static_cast<long>(j) + 1);
  }
  return out;
}

}  // namespace pentalab
