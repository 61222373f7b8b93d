#pragma once

#include <utility>
#include <vector>

#include "specsim/polytope.hpp"
#include "specsim/special_simplex.hpp"

namespace specsim {

struct Triangulation {
  std::vector<Vec> points;             // coordinates the cell indices refer to
  std::vector<std::size_t> ordering;   // pull order; the back is pulled first
  std::vector<VSet> cells;             // ascending mask order
};

// Pulling triangulation of the complex: the support vertex placed last in
// the ordering is pulled first, recursively coning it over the triangulated
// facets of each maximal face it belongs to.  The ordering must be a
// permutation of the complex's support.  Every cell is verified affinely
// independent.  Complexes above 2000 faces throw CapacityError.
Triangulation rlt(const PolytopalComplex& complex,
                  const std::vector<std::size_t>& ordering);

// Same on the solid polytope (all faces, the polytope itself included); the
// cells additionally have to be full-dimensional simplices.
Triangulation rlt(const Polytope& p, const std::vector<std::size_t>& ordering);

// Pairwise unions of cells over concatenated point lists.  The operands must
// triangulate point sets of the same coordinate dimension with no shared
// point, and every union must be affinely independent.  An operand with no
// cells acts as the identity.
Triangulation simplicial_join(const Triangulation& a, const Triangulation& b);

// Sum of simplex volumes; every cell must have exactly dim+1 vertices where
// dim is the coordinate dimension of the point list.
Rat triangulation_volume(const Triangulation& t);

struct JoinStructureReport {
  bool passes = false;
  std::size_t polytope_cells = 0;
  std::size_t subcomplex_cells = 0;
  // (cell of the solid triangulation, cell of the subcomplex triangulation)
  std::vector<std::pair<VSet, VSet>> cell_pairs;
};

// Orders the vertices with the simplex block last, so it is pulled first,
// and checks that the solid triangulation is exactly the simplex joined onto
// the triangulation of the face complex avoiding the simplex.
JoinStructureReport join_structure_check(const Polytope& p,
                                         const SpecialSimplexCertificate& cert);

}  // namespace specsim
