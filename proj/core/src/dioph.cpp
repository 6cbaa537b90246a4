#include "pentalab/dioph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include "pentalab/errors.hpp"

namespace pentalab {

namespace {

void check_distinct(const std::vector<long>& tuple) {
  std::vector<long> sorted = tuple;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    fail(errc::repeated_entries, "tuple entries must be pairwise distinct");
}

/// Exact linear solve, Gaussian elimination over the rationals.
std::vector<Rat> rat_solve(std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) fail(errc::division_by_zero, "singular rational system");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      Rat f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rat> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rat acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a[i][c] * x[c];
    x[i] = acc / a[i][i];
  }
  return x;
}

Rat det3(const std::array<std::array<Rat, 3>, 3>& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace

SymmetricInvariants symmetric_invariants(const std::vector<long>& tuple) {
  check_distinct(tuple);
  std::size_t s = tuple.size();
  // Monic product (x - t_1)...(x - t_s); then t^s = sum_i M_i t^{i-1} at the
  // roots, i.e. M_i = -p_{i-1}.
  std::vector<Rat> poly{Rat(1)};
  for (long t : tuple) {
    std::vector<Rat> next(poly.size() + 1);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= Rat(t) * poly[i];
    }
    poly = next;  // poly[i] = coefficient of x^i
  }
  SymmetricInvariants inv;
  inv.tuple = tuple;
  inv.M.resize(s);
  for (std::size_t i = 0; i < s; ++i) inv.M[i] = -poly[i];
  return inv;
}

std::vector<Rat> cramer_invariants(const std::vector<long>& tuple) {
  check_distinct(tuple);
  std::size_t s = tuple.size();
  // Row vector (t_i^s) A^{-1} with A the Vandermonde rows 1, t, ..., t^{s-1}:
  // transpose to the column system A^T x = power column.
  std::vector<std::vector<Rat>> at(s, std::vector<Rat>(s));
  std::vector<Rat> b(s);
  for (std::size_t i = 0; i < s; ++i) {
    Rat pw = 1;
    for (std::size_t r = 0; r < s; ++r) {
      at[r][i] = pw;  // A[r][i] = t_i^r; A^T[i][r] handled by the solve below
      pw *= Rat(tuple[i]);
    }
    b[i] = pw;  // t_i^s
  }
  // Solve x^T A = b^T  <=>  A^T x = b; build A^T explicitly.
  std::vector<std::vector<Rat>> atT(s, std::vector<Rat>(s));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t r = 0; r < s; ++r) atT[i][r] = at[r][i];
  return rat_solve(atT, b);
}

Rat power_dot_inverse_e1(const std::vector<long>& tuple, int power) {
  check_distinct(tuple);
  std::size_t s = tuple.size();
  std::vector<std::vector<Rat>> a(s, std::vector<Rat>(s));
  std::vector<Rat> e1(s);
  e1[0] = 1;
  for (std::size_t c = 0; c < s; ++c) {
    Rat pw = 1;
    for (std::size_t r = 0; r < s; ++r) {
      a[r][c] = pw;
      pw *= Rat(tuple[c]);
    }
  }
  std::vector<Rat> x = rat_solve(a, e1);
  Rat acc = 0;
  for (std::size_t c = 0; c < s; ++c) {
    Rat pw = 1;
    for (int t = 0; t < power; ++t) pw *= Rat(tuple[c]);
    acc += pw * x[c];
  }
  return acc;
}

Rat rp3_admissibility_ratio(long a, long b, long c) {
  if (b == c) fail(errc::division_by_zero, "b = c");
  return Rat(c - 1 + a * (b - 1)) / Rat(b - c);
}

Rp3Candidate rp3_candidate(const Triple& m, const Triple& n, const Triple& r) {
  Rp3Candidate out;
  out.m = m;
  out.n = n;
  out.r = r;
  auto vm = std::vector<long>(m.begin(), m.end());
  auto vn = std::vector<long>(n.begin(), n.end());
  auto vr = std::vector<long>(r.begin(), r.end());
  SymmetricInvariants im = symmetric_invariants(vm);
  SymmetricInvariants in_ = symmetric_invariants(vn);
  SymmetricInvariants ir = symmetric_invariants(vr);

  out.c1_holds = (im.m1() == in_.m1() && in_.m1() == ir.m1());
  auto sumsq = [](const Triple& t) { return t[0] * t[0] + t[1] * t[1] + t[2] * t[2]; };
  out.sum_squares_equal = (sumsq(m) == sumsq(n) && sumsq(n) == sumsq(r));
  out.gamma3 = im.m1() / 6;

  // Rank of the 3x2 block [[M2,M3],[N2,N3],[R2,R3]].
  Rat d12 = im.m2() * in_.m3() - im.m3() * in_.m2();
  Rat d13 = im.m2() * ir.m3() - im.m3() * ir.m2();
  Rat d23 = in_.m2() * ir.m3() - in_.m3() * ir.m2();
  out.rank_full = (d12 != 0 || d13 != 0 || d23 != 0);

  std::array<std::array<Rat, 3>, 3> sys{
      std::array<Rat, 3>{im.m2(), im.m3(), Rat(1)},
      std::array<Rat, 3>{in_.m2(), in_.m3(), Rat(1)},
      std::array<Rat, 3>{ir.m2(), ir.m3(), Rat(1)}};
  Rat dsys = det3(sys);
  out.system_invertible = (dsys != 0);

  if (out.c1_holds && out.rank_full && out.system_invertible) {
    // Right side rows (per k_2): (1/20) t^5 . A^{-1}e_1 - (M_3/12) t^4 . A^{-1}e_1.
    auto rhs_row = [](const std::vector<long>& t, const SymmetricInvariants& inv) -> Rat {
      // gmpxx expression templates must not escape the full expression.
      Rat a = rat(1, 20) * power_dot_inverse_e1(t, 5);
      Rat b = (inv.m3() / 12) * power_dot_inverse_e1(t, 4);
      return a - b;
    };
    std::array<Rat, 3> rhs{rhs_row(vm, im), rhs_row(vn, in_), rhs_row(vr, ir)};
    // Cramer for the first unknown gamma_1.
    std::array<std::array<Rat, 3>, 3> num = sys;
    for (int i = 0; i < 3; ++i) num[i][0] = rhs[i];
    Rat gamma1_per_k2 = det3(num) / dsys;
    out.q = gamma1_per_k2 / im.m1();
  }
  return out;
}

std::vector<Triple> enumerate_triples(int max_abs) {
  std::vector<long> values;
  for (long v = -max_abs; v <= max_abs; ++v)
    if (v != 0) values.push_back(v);
  std::vector<Triple> out;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      for (std::size_t l = j + 1; l < values.size(); ++l)
        out.push_back(Triple{values[i], values[j], values[l]});
  return out;
}

namespace {

/// Run fn over [0, count) partitioned deterministically; results are merged
/// in partition order so the outcome never depends on scheduling.
template <typename T, typename Fn>
std::vector<T> parallel_collect(std::size_t count, int threads, Fn fn) {
  threads = std::max(1, threads);
  std::size_t nchunk = std::min<std::size_t>(threads, count ? count : 1);
  std::vector<std::vector<T>> partial(nchunk);
  std::vector<std::thread> pool;
  for (std::size_t c = 0; c < nchunk; ++c) {
    std::size_t lo = count * c / nchunk, hi = count * (c + 1) / nchunk;
    pool.emplace_back([&, lo, hi, c] {
      for (std::size_t i = lo; i < hi; ++i) fn(i, partial[c]);
    });
  }
  for (auto& t : pool) t.join();
  std::vector<T> merged;
  for (auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
  return merged;
}

Triple sorted_triple(Triple t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

std::vector<Rp3Candidate> rp3_search(int max_abs, const Rat& require_q, int threads) {
  if (max_abs < 2) fail(errc::bad_input, "max_abs must be >= 2");
  std::vector<Triple> triples = enumerate_triples(max_abs);

  std::map<long, std::vector<Triple>> by_product;
  for (const Triple& t : triples) by_product[t[0] * t[1] * t[2]].push_back(t);

  // Unordered sets of three distinct triples sharing a product; identical
  // planes would be rank deficient anyway.
  std::vector<std::array<Triple, 3>> combos;
  for (const auto& [prod, group] : by_product) {
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j)
        for (std::size_t l = j + 1; l < group.size(); ++l)
          combos.push_back({group[i], group[j], group[l]});
  }

  auto worker = [&](std::size_t idx, std::vector<Rp3Candidate>& out) {
    const auto& c = combos[idx];
    Rp3Candidate cand = rp3_candidate(c[0], c[1], c[2]);
    if (cand.admissible(require_q)) out.push_back(cand);
  };
  std::vector<Rp3Candidate> hits = parallel_collect<Rp3Candidate>(combos.size(), threads, worker);

  auto key = [](const Rp3Candidate& c) { return std::array<Triple, 3>{c.m, c.n, c.r}; };
  for (auto& h : hits) {
    std::array<Triple, 3> t{sorted_triple(h.m), sorted_triple(h.n), sorted_triple(h.r)};
    std::sort(t.begin(), t.end());
    h.m = t[0];
    h.n = t[1];
    h.r = t[2];
  }
  std::sort(hits.begin(), hits.end(),
            [&](const Rp3Candidate& a, const Rp3Candidate& b) { return key(a) < key(b); });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [&](const Rp3Candidate& a, const Rp3Candidate& b) {
                           return key(a) == key(b);
                         }),
             hits.end());
  return hits;
}

Rp4Check rp4_three_plane_check(const Triple& m, const Triple& n, const Triple& r) {
  Rp4Check out;
  out.m = m;
  out.n = n;
  out.r = r;
  SymmetricInvariants im = symmetric_invariants({m[0], m[1], m[2]});
  SymmetricInvariants in_ = symmetric_invariants({n[0], n[1], n[2], 0});
  SymmetricInvariants ir = symmetric_invariants({r[0], r[1], r[2], 0});

  const Rat &M1 = im.m1(), &M2 = im.m2(), &M3 = im.m3();
  const Rat &N1 = in_.M[0], &N2 = in_.M[1], &N3 = in_.M[2], &N4 = in_.M[3];
  const Rat &R1 = ir.M[0], &R2 = ir.M[1], &R3 = ir.M[2], &R4 = ir.M[3];

  out.condition1 = (M1 * M3 == N1 + N4 * M1) && (M1 * M3 == R1 + R4 * M1);

  Rat a11 = M1 - N2, a12 = M2 - N3;
  Rat a21 = M1 - R2, a22 = M2 - R3;
  out.det_rhs = a11 * a22 - a12 * a21;
  out.rank_full = (out.det_rhs != 0);

  Rat l1 = M3 * (N3 - M2) + 2 * (N2 - 3 * M1);
  Rat l2 = M3 * (R3 - M2) + 2 * (R2 - 3 * M1);
  out.det_lhs = l1 * a22 - a12 * l2;

  out.det_identity = (20 * out.det_lhs == 9 * out.det_rhs);
  out.det_identity_printed_sign = (20 * out.det_lhs == -9 * out.det_rhs);
  return out;
}

std::vector<Rp4Check> rp4_search(int max_abs, int threads) {
  if (max_abs < 2) fail(errc::bad_input, "max_abs must be >= 2");
  std::vector<Triple> triples = enumerate_triples(max_abs);

  std::map<long, std::vector<Triple>> by_sum;
  for (const Triple& t : triples) by_sum[t[0] + t[1] + t[2]].push_back(t);

  struct Task {
    Triple m, n, r;
  };
  std::vector<Task> tasks;
  for (const Triple& m : triples) {
    long sum = m[0] + m[1] + m[2];
    auto it = by_sum.find(sum);
    if (it == by_sum.end()) continue;
    const auto& group = it->second;
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = i + 1; j < group.size(); ++j)
        tasks.push_back(Task{m, group[i], group[j]});
  }

  auto worker = [&](std::size_t idx, std::vector<Rp4Check>& out) {
    const Task& t = tasks[idx];
    Rp4Check chk = rp4_three_plane_check(t.m, t.n, t.r);
    if (chk.passes()) out.push_back(chk);
  };
  std::vector<Rp4Check> hits = parallel_collect<Rp4Check>(tasks.size(), threads, worker);

  auto key = [](const Rp4Check& c) { return std::array<Triple, 3>{c.m, c.n, c.r}; };
  for (auto& h : hits) {
    h.m = sorted_triple(h.m);
    Triple n = sorted_triple(h.n), r = sorted_triple(h.r);
    if (r < n) std::swap(n, r);
    h.n = n;
    h.r = r;
  }
  std::sort(hits.begin(), hits.end(),
            [&](const Rp4Check& a, const Rp4Check& b) { return key(a) < key(b); });
  hits.erase(std::unique(hits.begin(), hits.end(),
                         [&](const Rp4Check& a, const Rp4Check& b) { return key(a) == key(b); }),
             hits.end());
  return hits;
}

Rat rp4_two_subspace_ratio(const Triple& m, const Triple& n) {
  for (long v : m)
    if (v == 0) fail(errc::bad_input, "zero offset");
  for (long v : n)
    if (v == 0) fail(errc::bad_input, "zero offset");
  SymmetricInvariants im = symmetric_invariants({m[0], m[1], m[2]});
  SymmetricInvariants in_ = symmetric_invariants({n[0], n[1], n[2]});
  if (im.m1() != in_.m1() || im.m1() == 0)
    fail(errc::bad_input, "offset products must agree and be nonzero");
  if (im.m3() != in_.m3()) fail(errc::bad_input, "offset sums must agree");
  if (im.m2() == in_.m2())
    fail(errc::degenerate_planes, "equal subspaces: M_2 = N_2");

  // Third-order matching eliminates the shared delta_2 term, leaving
  // gamma_1 (M_2 - N_2) = (3!/5!) k_3 (m^5 . A^{-1}e_1 - n^5 . A^{-1}e_1).
  Rat m5 = power_dot_inverse_e1({m[0], m[1], m[2]}, 5);
  Rat n5 = power_dot_inverse_e1({n[0], n[1], n[2]}, 5);
  Rat gamma1_per_k3 = rat(6, 120) * (m5 - n5) / (im.m2() - in_.m2());
  Rat gamma3 = im.m1() / 6;
  return gamma1_per_k3 / gamma3;
}

}  // namespace pentalab
