#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specsim/polytope.hpp"
#include "specsim/special_simplex.hpp"

namespace specsim {

// Apex (0,...,0,1) over the base embedded at height zero in one more
// coordinate.  Base vertices keep their order; the apex comes last.
Polytope pyramid(const Polytope& base);

// Base centered at its vertex barycenter and embedded at height zero, with
// apexes at height +1 and -1 appended in that order.  A zero-dimensional
// base degenerates to a segment.
Polytope bipyramid(const Polytope& base);

// Free sum: both operands are translated to their vertex barycenters and
// embedded in complementary coordinate blocks.  Vertex order is all of a,
// then all of b.  Both operands must have dimension at least one.
Polytope direct_sum(const Polytope& a, const Polytope& b);

// Predicted f-vectors, in the same convention as Polytope::f_vector (leading
// 1 for the empty face, trailing 1 for the whole polytope).
FVector pyramid_fvector(const FVector& base);
FVector direct_sum_fvector(const FVector& q, int simplex_dim);

struct MeekFamilyMember {
  int apex_count = 0;    // pyramid iterations
  int simplex_dim = 0;   // dimension of the summand simplex
  Polytope polytope;
  std::vector<std::size_t> designated;  // special simplex vertex indices
  SpecialSimplexCertificate certificate;
  Classification classification;
  FVector predicted_fvector;
};

// All ways to spend m on a polytope with special m-simplex over basis q:
// for j = 1..m the member pyr^(m-j)(simplex(j) (+) q), whose designated
// simplex is the simplex block together with every apex.  Each designation
// is verified and classified before being returned.
std::vector<MeekFamilyMember> meek_family(const Polytope& q, int m);

Polytope cube(int n);     // {-1,1}^n, n in [1,6]
Polytope cross(int n);    // unit cross polytope, n in [1,6]
Polytope simplex(int n);  // hull of 0 and the unit vectors, n >= 1
Polytope ngon(int n);     // convex n-gon with rational vertices on a circle

// Convex polygon with n distinct rational circle points drawn from the seed;
// identical seeds give identical polygons on every platform.
Polytope random_convex_ngon(int n, std::uint64_t seed);

struct DesignatedPolytope {
  Polytope polytope;
  std::vector<std::size_t> designated;
  bool is_whole_simplex = false;
  std::optional<SpecialSimplexCertificate> certificate;
};

// Doubly stochastic matrix polytope on permutation vertices in lexicographic
// order; the designated simplex consists of the cyclic shifts.  n = 2 or 3
// builds directly, n = 4 as well (18-vertex facets); larger n throws
// CapacityError, n < 2 is an error.
DesignatedPolytope birkhoff(int n);

struct Poset {
  std::vector<std::string> elements;
  std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)
};

struct OrderPolytopeResult {
  Polytope polytope;  // vertices are indicator vectors of up-sets
  bool graded = false;
  std::vector<std::size_t> designated;  // empty unless graded
  bool is_whole_simplex = false;
  std::optional<SpecialSimplexCertificate> certificate;
};

// Order polytope over at most 5 elements.  The covers must be genuine covers
// of a valid partial order.  When every maximal chain has the same length,
// the chain of up-sets cut at each height is designated and verified.
OrderPolytopeResult order_polytope(const Poset& poset);

struct ZonotopeResult {
  Polytope polytope;  // hull of cube(n-1) vertices and their diagonal shifts
  FVector predicted_fvector;
};

// The hull of {v, v + (1,...,1)} over the vertices of cube(n-1), together
// with the face counts the doubling recursion predicts.  n in [3,5].
ZonotopeResult cube_basis_zonotope(int n);

}  // namespace specsim
