#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "specsim/polytope.hpp"
#include "specsim/special_simplex.hpp"

namespace specsim {

struct CorrespondingHyperplane {
  Hyperplane source;   // in p's hull frame, polytope on the closed positive side
  Hyperplane target;   // in the model's frame
  VSet on_target = 0;        // image vertices on the target hyperplane
  VSet negative_side = 0;    // image vertices strictly below it
};

// Lifts h to the meek model realized by projecting p along its simplex: a
// simplex image lies on the lift exactly when its source vertex lies on h,
// and a non-simplex image avoids the strictly positive side exactly when its
// source lies on h.  h must either bound p along a facet or contain every
// non-simplex vertex; other hyperplanes are rejected.  Vertex indices in the
// masks agree with p's.
CorrespondingHyperplane corresponding_hyperplane(const Polytope& p,
                                                 const SpecialSimplexCertificate& cert,
                                                 const Hyperplane& h);

struct FacetTransferCheck {
  std::size_t facet = 0;
  CorrespondingHyperplane transfer;
  bool bounds_model = false;      // nothing strictly below the lift
  bool contains_basis = false;    // every non-simplex image on the lift
  bool cuts_model_facet = false;  // some model facet has its interior below
  bool condition_b = false;       // any of the three above
  bool condition_c = false;       // exactly one simplex image strictly above
};

struct WildCharacterizationReport {
  // The defining property is witnessed by p itself; it is never decided in
  // the abstract.
  std::string condition_a = "VERIFIED_BY_CONSTRUCTION";
  std::vector<FacetTransferCheck> facets;
  bool all_b = false;
  bool all_c = false;
};

// Runs the facet-by-facet transfer of p's facets into its meek model and
// evaluates the cut conditions for each.
WildCharacterizationReport wild_characterization_report(
    const Polytope& p, const SpecialSimplexCertificate& cert);

struct Chord {
  std::array<std::size_t, 2> flanks;  // polygon indices the chord passes through
  std::vector<std::size_t> arc;       // polygon indices displaced onto it
  std::size_t excluded_simplex_vertex = 0;
};

struct WildBlueprint {
  int m = 0;  // polygon size
  int k = 0;  // simplex dimension
  std::vector<Chord> chords;
};

struct WildRealization {
  WildBlueprint blueprint;
  Polytope polytope;
  SpecialSimplexCertificate certificate;
  Classification classification;
};

struct RejectedBlueprint {
  WildBlueprint blueprint;
  std::string reason;
};

struct Wild2DEnumeration {
  int m = 0;
  int k = 0;
  Polytope anchor;  // the chord-free sum, meek by construction
  std::vector<WildRealization> wild;  // pairwise non-isomorphic, search order
  std::vector<RejectedBlueprint> rejected;
  std::size_t systems_tried = 0;
  std::size_t realized = 0;    // wild realizations before deduplication
  std::size_t duplicates = 0;
};

// Enumerates every admissible chord system over the sum of a k-simplex and a
// convex m-gon (each polygon vertex displaced by at most k chords), realizes
// each system by moving the covered vertices along the simplex directions
// onto their chord hyperplanes, and keeps the verified wild outcomes up to
// lattice isomorphism.  m must lie in [4,10] and k in [1,3].
Wild2DEnumeration enumerate_wild_2d(int m, int k);

struct BoundCheck {
  FVector f_wild;
  FVector f_meek;
  std::vector<std::string> comparisons;  // one symbol per proper dimension
  bool pass = false;
  Polytope meek;
};

// Compares the face counts of a wild polytope against the meek polytope on
// the same simplex and basis: equality at dimension 0, strictly fewer ridges
// and facets, no more faces anywhere between.
BoundCheck fvector_bound_check(const Polytope& p,
                               const SpecialSimplexCertificate& cert);

}  // namespace specsim
