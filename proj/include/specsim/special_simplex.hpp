#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specsim/polytope.hpp"

namespace specsim {

// A verified simplex inside a polytope such that every facet contains all but
// exactly one of its vertices.  missed_vertex_per_facet records, for each
// facet index, which simplex vertex that facet omits.
struct SpecialSimplexCertificate {
  std::vector<std::size_t> simplex_vertices;  // sorted ascending
  int m = 0;                                  // simplex dimension
  std::map<std::size_t, std::size_t> missed_vertex_per_facet;
};

struct SpecialSimplexCheck {
  std::optional<SpecialSimplexCertificate> certificate;
  std::string rejection;  // non-empty exactly when certificate is absent
};

// Decides whether the given vertex index set spans a simplex with the
// one-missed-vertex-per-facet property.  The whole vertex set of a simplex
// polytope is rejected here; find_special_simplices reports that case through
// a flag instead, since no proper m < dim(p) designation exists for it.
SpecialSimplexCheck verify_special_simplex(const Polytope& p,
                                           const std::vector<std::size_t>& s);

struct SpecialSimplexSearch {
  std::vector<SpecialSimplexCertificate> certificates;  // sorted by vertex list
  bool polytope_is_simplex = false;
};

// Finds every special simplex of p.  Candidates are maximal cliques of the
// pairwise compatibility relation (two vertices are compatible when no facet
// omits both), which is complete: any special simplex on two or more vertices
// is such a maximal clique.  Throws CapacityError above 30 vertices.
SpecialSimplexSearch find_special_simplices(const Polytope& p);

// Affine projection of hull-frame points along the simplex directions onto a
// complement, expressed in coordinates over the complement basis.
struct Projection {
  Vec origin;        // a point of the simplex's affine hull, hull-frame coords
  Mat simplex_dirs;  // basis of the direction space of the simplex hull
  Mat complement;    // basis of the complement; images live in its coordinates
  Vec project(const Vec& local_point) const;
  Vec embed(const Vec& complement_coords) const;  // origin + complement * c
};

struct BasisPolytopeResult {
  Polytope q;  // full-dimensional in the complement coordinates
  Projection projection;
  // p-vertex index -> q-vertex index, or -1 for the simplex vertices.
  std::vector<std::ptrdiff_t> vertex_map;
  int subcomplex_dim = -1;  // affine dimension of the non-simplex vertices
};

// Projects the non-simplex vertices along the simplex and takes their hull.
// Verifies that the face complex avoiding the simplex maps onto the proper
// faces of q under the vertex map; any mismatch throws InternalInconsistency.
BasisPolytopeResult basis_polytope(const Polytope& p,
                                   const SpecialSimplexCertificate& cert);

enum class MeekWildKind { Meek, MeekEquivalent, Wild };

struct Classification {
  MeekWildKind kind = MeekWildKind::Wild;
  int dim_A = -1;  // affine dimension of the non-simplex vertex set
  int dim_Q = -1;  // dimension of the basis polytope
};

std::string to_string(MeekWildKind kind);

// Meek when the non-simplex vertices span no more than the basis polytope
// does; otherwise wild, upgraded to MeekEquivalent when the face lattice
// still matches the matching meek model (simplex joined with the basis
// polytope at mutually interior points).
Classification classify_meek_wild(const Polytope& p,
                                  const SpecialSimplexCertificate& cert);

struct EquivalenceReport {
  bool condition_a = false;  // projected simplex point interior to q
  bool condition_b = false;  // projection restricts to a face-complex isomorphism
  bool trivial = false;      // p is a simplex and s is its whole vertex set
};

// Evaluates both equivalent characterizations for an affinely independent
// vertex selection s, which need not be a special simplex; for certificates
// both conditions hold and for forced non-certificates both fail.
EquivalenceReport equivalence_report(const Polytope& p,
                                     const std::vector<std::size_t>& s);

struct VertexProjectionResult {
  Polytope target;  // hull of the images, ambient = p's hull frame
  // p-vertex i maps to target vertex image_index[i]; the construction keeps
  // input order, so this is the identity whenever the images are all extreme.
  std::vector<std::size_t> image_index;
  Vec simplex_center;  // barycenter of the simplex vertices, hull frame
};

// Maps every non-simplex vertex to its basis-polytope image and dilates the
// simplex vertices away from their barycenter by 1 + epsilon.  The hull of
// the images realizes the meek model of p; an explicit vertex map is checked
// against simplex(m) joined with q, so no isomorphism search is involved.
// epsilon must be positive.
VertexProjectionResult vertex_projection(const Polytope& p,
                                         const SpecialSimplexCertificate& cert,
                                         const Rat& epsilon);

struct WeaklyHannarResult {
  bool weakly_hannar = false;
  // Vertex with no antipodal partner, when that is the reason for failure.
  std::optional<std::size_t> missing_antipode;
  // Facet whose span test failed, when that is the reason for failure.
  std::optional<std::size_t> failing_facet;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // antipodal vertices
  std::vector<SpecialSimplexCertificate> pair_certificates;
};

// Centers p at its vertex barycenter and tests whether every facet, together
// with its antipodal image, spans the whole vertex set again.  When it does,
// every antipodal vertex pair is a special segment; these are verified and
// returned, and a verification failure throws InternalInconsistency.
WeaklyHannarResult weakly_hannar_pairs(const Polytope& p);

}  // namespace specsim
