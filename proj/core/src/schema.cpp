#include "pentalab/schema.hpp"

#include <algorithm>
#include <set>

#include "pentalab/errors.hpp"

namespace pentalab {

void IndexSchema::validate() const {
  if (dim < 2) fail(errc::bad_input, "schema dimension must be >= 2");
  if (subspaces.empty()) fail(errc::bad_input, "schema needs at least one subspace");
  int total = 0;
  for (const auto& sub : subspaces) {
    if (int(sub.size()) < 2 || int(sub.size()) > dim)
      fail(errc::invalid_offsets, "offset list size must lie in [2, dim]");
    std::set<int> uniq(sub.begin(), sub.end());
    if (uniq.size() != sub.size()) fail(errc::invalid_offsets, "duplicate offsets in a subspace");
    total += int(sub.size());
  }
  int l = int(subspaces.size());
  if (total - (l - 1) * (dim + 1) != 1)
    fail(errc::invalid_offsets, "subspace dimensions do not meet in a unique line");
}

int IndexSchema::max_abs_offset() const {
  int top = 0;
  for (const auto& sub : subspaces)
    for (int o : sub) top = std::max(top, std::abs(o));
  return top;
}

IndexSchema pentagram_schema() {
  IndexSchema s;
  s.dim = 2;
  s.subspaces = {{-1, 1}, {0, 2}};
  s.name = "pentagram";
  s.validate();
  return s;
}

IndexSchema crossed_diagonal_schema() {
  IndexSchema s;
  s.dim = 2;
  s.subspaces = {{-2, 1}, {-1, 2}};
  s.name = "crossed-diagonals";
  s.validate();
  return s;
}

IndexSchema segment_hyperplane_schema(int m, const std::vector<int>& hyper_offsets) {
  if (m < 2) fail(errc::bad_input, "m must be >= 2");
  if (int(hyper_offsets.size()) != m - 1)
    fail(errc::invalid_offsets, "need exactly m-1 hyperplane offsets");
  std::set<int> uniq(hyper_offsets.begin(), hyper_offsets.end());
  if (uniq.size() != hyper_offsets.size())
    fail(errc::invalid_offsets, "hyperplane offsets must be pairwise distinct");
  for (int o : hyper_offsets)
    if (o == 0 || o == 1 || o == -1)
      fail(errc::invalid_offsets, "hyperplane offsets may not be 0 or +-1");
  IndexSchema s;
  s.dim = m;
  std::vector<int> hyper{0};
  hyper.insert(hyper.end(), hyper_offsets.begin(), hyper_offsets.end());
  s.subspaces = {{-1, 1}, hyper};
  s.name = "seg-hyper-m" + std::to_string(m);
  s.validate();
  return s;
}

IndexSchema rp3_ansatz_schema(long a, long b, long c) {
  auto reject = [&](const std::string& why) {
    fail(errc::degenerate_ansatz, "rp3 ansatz (" + std::to_string(a) + "," + std::to_string(b) +
                                      "," + std::to_string(c) + "): " + why);
  };
  std::array<std::array<long, 3>, 3> triples{std::array<long, 3>{-c, a, b},
                                             std::array<long, 3>{c, -a, b},
                                             std::array<long, 3>{c, -1, a * b}};
  for (const auto& t : triples)
    for (long v : t)
      if (v == 0) reject("zero offset");
  for (const auto& t : triples) {
    if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) reject("repeated offsets in a plane");
  }
  if (c == a) reject("c = a");
  if (a == 1) reject("a = 1");
  if (b == -1) reject("b = -1");
  if (b == c) reject("b = c");

  IndexSchema s;
  s.dim = 3;
  for (const auto& t : triples) s.subspaces.push_back({int(t[0]), int(t[1]), int(t[2])});
  s.name = "rp3-ansatz(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
           ")";
  s.validate();
  return s;
}

IndexSchema rp4_plane_two_hyper_schema(const std::array<long, 3>& m_offsets,
                                       const std::array<long, 3>& n_offsets,
                                       const std::array<long, 3>& r_offsets) {
  IndexSchema s;
  s.dim = 4;
  s.subspaces.push_back({int(m_offsets[0]), int(m_offsets[1]), int(m_offsets[2])});
  s.subspaces.push_back({int(n_offsets[0]), int(n_offsets[1]), int(n_offsets[2]), 0});
  s.subspaces.push_back({int(r_offsets[0]), int(r_offsets[1]), int(r_offsets[2]), 0});
  s.name = "rp4-plane-two-hyper";
  s.validate();
  return s;
}

MapResult apply_schema(const LiftedPolygon& p, const IndexSchema& s) {
  s.validate();
  if (s.dim != p.dim) fail(errc::bad_input, "schema and polygon dimensions differ");
  // The intersection construction is scale invariant, so an unnormalized
  // polygon is fine; closed N-gons with gcd(N, m+1) > 1 generically admit no
  // unit-determinant lift at all.

  int n = p.period();
  Eigen::MatrixXd out(p.dim + 1, n);
  for (int i = 0; i < n; ++i) {
    std::vector<Eigen::MatrixXd> spans;
    spans.reserve(s.subspaces.size());
    for (const auto& sub : s.subspaces) {
      Eigen::MatrixXd span(p.dim + 1, sub.size());
      for (std::size_t c = 0; c < sub.size(); ++c) span.col(c) = p.vertex(i + sub[c]);
      spans.push_back(std::move(span));
    }
    try {
      out.col(i) = span_intersection(spans);
    } catch (const Error& e) {
      if (e.code() == errc::unexpected_dimension)
        fail(errc::unexpected_dimension, "at vertex " + std::to_string(i) + ": " + e.what());
      throw;
    }
  }

  // Align signs along the chain so the lift determinants get a consistent
  // sign pattern where one exists.
  for (int i = 1; i < n; ++i)
    if (out.col(i - 1).dot(out.col(i)) < 0.0) out.col(i) = -out.col(i);

  LiftedPolygon raw = LiftedPolygon::make(p.dim, out, p.monodromy);
  try {
    return MapResult{discrete_normalize(raw), false};
  } catch (const Error& e) {
    if (e.code() != errc::non_liftable) throw;
    return MapResult{raw, true};
  }
}

}  // namespace pentalab
