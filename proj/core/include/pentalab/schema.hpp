#pragma once

#include <string>
#include <vector>

#include "pentalab/polygon.hpp"

namespace pentalab {

/// A generalized pentagram map: the new vertex at site n is the common line
/// of the subspaces spanned by the lifted vertices at the listed offsets
/// from n. Offsets are relative and a subspace never implicitly contains 0.
struct IndexSchema {
  int dim = 2;
  std::vector<std::vector<int>> subspaces;
  std::string name;

  /// Offset-list sizes in [2, dim], no duplicate offsets, and the unique-line
  /// count sum |S_j| - (l-1)(dim+1) = 1.
  void validate() const;

  int max_abs_offset() const;
};

/// Classic map: segment through the two neighbours meets the line through
/// the vertex and its second right neighbour.
IndexSchema pentagram_schema();

/// The other planar map with the same continuous limit:
/// segments {-2,+1} and {-1,+2}.
IndexSchema crossed_diagonal_schema();

/// Segment {-1,+1} against the hyperplane through the vertex and m-1 further
/// offsets (pairwise distinct, none of 0, +1, -1).
IndexSchema segment_hyperplane_schema(int m, const std::vector<int>& hyper_offsets);

/// Three-plane family in RP^3 with offset triples (-c,a,b), (c,-a,b),
/// (c,-1,ab). Rejects the degenerate parameter choices (zero offsets,
/// repeated entries, c = a, a = 1, b = -1, b = c).
IndexSchema rp3_ansatz_schema(long a, long b, long c);

/// RP^4 discretization: one plane through three offsets and two 3-subspaces
/// through x_n and three offsets each.
IndexSchema rp4_plane_two_hyper_schema(const std::array<long, 3>& m_offsets,
                                       const std::array<long, 3>& n_offsets,
                                       const std::array<long, 3>& r_offsets);

struct MapResult {
  LiftedPolygon polygon;
  /// Set when the image could not be rescaled to unit lift determinants; the
  /// vertices are then unit vectors under the sign convention.
  bool projective_only = false;
};

/// Apply the map to every site of one period; degenerate intersections abort
/// the whole application.
MapResult apply_schema(const LiftedPolygon& p, const IndexSchema& s);

}  // namespace pentalab
