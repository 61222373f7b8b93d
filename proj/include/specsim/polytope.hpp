#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "specsim/linalg.hpp"

namespace specsim {

// Vertex subsets are bitmasks, so nothing downstream of the face lattice can
// handle more than 64 vertices.  Search-heavy entry points enforce much
// smaller limits and throw CapacityError before work starts.
using VSet = std::uint64_t;

int popcount(VSet s);
std::vector<std::size_t> set_bits(VSet s);
VSet mask_of(const std::vector<std::size_t>& indices);

using FVector = std::vector<std::size_t>;

// Complete face lattice.  by_grade[k] lists the faces of dimension k - 1 as
// vertex masks in ascending mask order, so by_grade.front() is the empty face
// and by_grade.back() is the whole polytope.
struct FaceLattice {
  std::vector<std::vector<VSet>> by_grade;
  std::unordered_map<VSet, int> dim_of;

  bool is_face(VSet mask) const { return dim_of.count(mask) != 0; }
  int face_dim(VSet mask) const;
  FVector f_vector() const;
  // Faces of the given dimension contained in `within`.
  std::vector<VSet> subfaces_of(VSet within, int dim) const;
};

class Polytope {
 public:
  // An empty placeholder with dimension -1; every real instance comes from
  // one of the two named constructors below.
  Polytope() = default;

  // Exact convex hull.  Duplicate points are dropped, non-extreme points are
  // dropped, and the vertices keep their first-occurrence input order.
  static Polytope from_points(std::string name, std::size_t ambient_dim,
                              std::vector<Vec> points);

  // Trusted-generator path: the caller also supplies the vertex index set of
  // every facet.  The result is validated as thoroughly as the hull path and
  // construction throws on any inconsistency, so a wrong facet list cannot
  // produce a polytope.
  static Polytope from_vertices_and_facets(std::string name, std::size_t ambient_dim,
                                           std::vector<Vec> vertices,
                                           std::vector<std::vector<std::size_t>> facet_vertices);

  const std::string& name() const { return name_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  int dim() const { return dim_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Vec>& vertices() const { return vertices_; }

  // Coordinates in the hull frame: the subset of ambient coordinates listed
  // in frame_coords(), which the affine hull projects to bijectively.  For a
  // full-dimensional polytope this is the identity.
  const std::vector<Vec>& local_vertices() const { return local_; }
  const std::vector<std::size_t>& frame_coords() const { return frame_coords_; }
  Vec to_local(const Vec& ambient) const;

  // Facet hyperplanes in hull-frame coordinates, oriented so the polytope
  // lies on the closed positive side.  facet_masks() is parallel.
  const std::vector<Hyperplane>& facets() const { return facets_; }
  const std::vector<VSet>& facet_masks() const { return facet_masks_; }
  std::size_t facet_count() const { return facets_.size(); }

  const FaceLattice& lattice() const { return lattice_; }
  FVector f_vector() const { return lattice_.f_vector(); }
  VSet full_mask() const;

  std::vector<std::size_t> incident_facets(std::size_t vertex) const;

  // Optional per-vertex labels carried through serialization; empty when unset.
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

 private:
  void finish_();

  std::string name_;
  std::size_t ambient_dim_ = 0;
  int dim_ = -1;
  std::vector<Vec> vertices_;
  std::vector<Vec> local_;
  std::vector<std::size_t> frame_coords_;
  std::vector<Hyperplane> facets_;
  std::vector<VSet> facet_masks_;
  FaceLattice lattice_;
  std::vector<std::string> labels_;
};

Vec vertex_barycenter(const Polytope& p);
Vec barycenter_of(const Polytope& p, VSet mask);

Polytope translated(const Polytope& p, const Vec& shift, std::string name);

// A downward-closed family of faces of some polytope, carried with the point
// coordinates its vertex indices refer to.  The empty face is always present.
struct PolytopalComplex {
  std::vector<Vec> points;
  std::vector<VSet> faces;  // ascending mask order, includes the empty face
  std::unordered_map<VSet, int> dim_of;
  std::vector<VSet> maximal_faces;  // ascending mask order
  std::vector<std::size_t> support;  // vertex indices used by some face
  bool pure = false;
  int dim = -1;
};

// Proper faces of p whose vertex set avoids `banned` entirely; with banned
// empty this is the boundary complex.
PolytopalComplex subcomplex_excluding(const Polytope& p, VSet banned);

// All faces of p, including p itself as the unique maximal face.
PolytopalComplex full_complex(const Polytope& p);

struct LatticeIsomorphism {
  bool isomorphic = false;
  // a-vertex i corresponds to b-vertex vertex_map[i]; empty unless isomorphic.
  std::vector<std::size_t> vertex_map;
};

// Searches for a vertex bijection carrying the facet family of `a` onto that
// of `b`; such a bijection exists iff the face lattices are isomorphic.
// Cheap invariant comparisons run first, so most non-isomorphic pairs return
// without any search; when the invariants all agree, polytopes with more than
// 14 vertices throw CapacityError rather than start a large backtracking run.
LatticeIsomorphism lattice_isomorphic(const Polytope& a, const Polytope& b);

// Checks one explicit vertex map, no search.
bool lattice_isomorphic_under(const Polytope& a, const Polytope& b,
                              const std::vector<std::size_t>& vertex_map);

}  // namespace specsim
