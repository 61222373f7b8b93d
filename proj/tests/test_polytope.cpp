#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "specsim/constructions.hpp"
#include "specsim/errors.hpp"
#include "specsim/polytope.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace specsim;
using testsupport::corpus;

namespace {

Vec v2(int a, int b) { return Vec{Rat(a), Rat(b)}; }

// One 9-coordinate row-flattened permutation matrix per permutation image.
Vec perm_matrix(const std::vector<int>& image) {
  Vec flat = zero_vec(9);
  for (std::size_t row = 0; row < 3; ++row) flat[3 * row + image[row]] = Rat(1);
  return flat;
}

}  // namespace

TEST_CASE("hull drops interior points and duplicates, keeps input order") {
  const Polytope p = Polytope::from_points(
      "square", 2,
      {v2(0, 0), v2(2, 0), v2(1, 1), v2(2, 2), v2(0, 2), v2(2, 0)});
  CHECK(p.vertex_count() == 4);
  CHECK(p.facet_count() == 4);
  CHECK(p.dim() == 2);
  CHECK(p.vertices()[0] == v2(0, 0));
  CHECK(p.vertices()[1] == v2(2, 0));
  CHECK(p.vertices()[2] == v2(2, 2));
  CHECK(p.vertices()[3] == v2(0, 2));
}

TEST_CASE("cube face counts") {
  const Polytope c = cube(3);
  CHECK(c.f_vector() == FVector{1, 8, 12, 6, 1});
  std::size_t total = 0;
  for (const auto& grade : c.lattice().by_grade) total += grade.size();
  CHECK(total == 28);
}

TEST_CASE("triangle lattice grades") {
  const Polytope t = simplex(2);
  const auto& grades = t.lattice().by_grade;
  REQUIRE(grades.size() == 4);
  CHECK(grades[0] == std::vector<VSet>{0});
  CHECK(grades[1].size() == 3);
  CHECK(grades[2].size() == 3);
  CHECK(grades[3] == std::vector<VSet>{t.full_mask()});
  for (VSet e : grades[2]) CHECK(popcount(e) == 2);
}

TEST_CASE("hull of the six 3x3 permutation matrices") {
  std::vector<Vec> pts;
  for (const auto& image : std::vector<std::vector<int>>{
           {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}})
    pts.push_back(perm_matrix(image));
  const Polytope b = Polytope::from_points("perm3", 9, pts);
  CHECK(b.dim() == 4);
  CHECK(b.vertex_count() == 6);
  CHECK(b.facet_count() == 9);
}

TEST_CASE("face lattice agrees with the intersection-closure oracle") {
  const std::vector<Polytope> sample = {cube(3), birkhoff(3).polytope,
                                        bipyramid(simplex(2))};
  for (const Polytope& p : sample) {
    const auto oracle = testsupport::closure_lattice(p);
    REQUIRE(oracle.size() == p.lattice().by_grade.size());
    for (std::size_t g = 0; g < oracle.size(); ++g)
      CHECK(oracle[g] == p.lattice().by_grade[g]);
  }
}

TEST_CASE("facets agree with the exhaustive one-sided-subset oracle") {
  for (const Polytope& p : corpus()) {
    if (p.vertex_count() > 12 || p.dim() > 4) continue;
    std::vector<VSet> got = p.facet_masks();
    std::sort(got.begin(), got.end());
    CHECK(got == testsupport::brute_facet_masks(p));
  }
}

TEST_CASE("every proper face is the vertex intersection of its facets") {
  for (const Polytope& p : corpus()) {
    std::size_t faces = 0;
    for (const auto& g : p.lattice().by_grade) faces += g.size();
    if (faces > 400) continue;
    for (int d = 0; d < p.dim(); ++d) {
      for (VSet f : p.lattice().by_grade[static_cast<std::size_t>(d) + 1]) {
        VSet meet = p.full_mask();
        for (std::size_t i = 0; i < p.facet_count(); ++i)
          if ((p.facet_masks()[i] & f) == f) meet &= p.facet_masks()[i];
        CHECK(meet == f);
      }
    }
  }
}

TEST_CASE("alternating face-count sum matches the sphere value") {
  for (const Polytope& p : corpus()) {
    const FVector fv = p.f_vector();
    const int d = p.dim();
    long long sum = 0;
    for (int k = 0; k < d; ++k)
      sum += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(fv[static_cast<std::size_t>(k) + 1]);
    CHECK(sum == 1 - (d % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("rebuilding a polytope from its own vertices is stable") {
  for (const Polytope& p : corpus()) {
    if (p.vertex_count() > 20) continue;
    const Polytope again = Polytope::from_points("again", p.ambient_dim(), p.vertices());
    CHECK(again.vertex_count() == p.vertex_count());
    CHECK(again.vertices() == p.vertices());
    CHECK(again.f_vector() == p.f_vector());
    std::vector<VSet> a = again.facet_masks(), b = p.facet_masks();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("trusted facet lists are validated, not believed") {
  const Polytope c = cube(3);
  std::vector<std::vector<std::size_t>> facets;
  for (VSet fm : c.facet_masks()) facets.push_back(set_bits(fm));
  const Polytope ok =
      Polytope::from_vertices_and_facets("c", 3, c.vertices(), facets);
  CHECK(ok.f_vector() == c.f_vector());

  auto broken = facets;
  broken.pop_back();
  CHECK_THROWS_AS(Polytope::from_vertices_and_facets("c", 3, c.vertices(), broken),
                  std::invalid_argument);
  broken = facets;
  broken[0][0] = (broken[0][0] + 1) % 8;  // off-plane vertex smuggled in
  CHECK_THROWS_AS(Polytope::from_vertices_and_facets("c", 3, c.vertices(), broken),
                  std::invalid_argument);
}

TEST_CASE("vertex-facet incidence is consistent both ways") {
  const std::vector<Polytope> sample = {cube(3), cross(3), birkhoff(3).polytope};
  for (const Polytope& p : sample) {
    for (std::size_t v = 0; v < p.vertex_count(); ++v) {
      for (std::size_t f : p.incident_facets(v)) CHECK(((p.facet_masks()[f] >> v) & 1) == 1);
      std::size_t count = 0;
      for (VSet fm : p.facet_masks())
        if ((fm >> v) & 1) ++count;
      CHECK(count == p.incident_facets(v).size());
    }
  }
  CHECK(cube(3).incident_facets(0).size() == 3);
}

TEST_CASE("banning a cube space diagonal leaves a single hexagonal edge cycle") {
  const Polytope c = cube(3);
  std::size_t anti = 0;
  const Vec neg = Rat(-1) * c.vertices()[0];
  while (c.vertices()[anti] != neg) ++anti;
  const PolytopalComplex sub =
      subcomplex_excluding(c, mask_of({0, anti}));

  CHECK(sub.pure);
  CHECK(sub.dim == 1);
  CHECK(sub.maximal_faces.size() == 6);
  CHECK(sub.support.size() == 6);
  // each surviving vertex lies on exactly two surviving edges
  std::map<std::size_t, int> degree;
  for (VSet e : sub.maximal_faces)
    for (std::size_t v : set_bits(e)) ++degree[v];
  for (const auto& [v, d] : degree) CHECK(d == 2);
  // one cycle, not two: walk from any support vertex and count what we reach
  std::set<std::size_t> seen{sub.support[0]};
  bool grew = true;
  while (grew) {
    grew = false;
    for (VSet e : sub.maximal_faces) {
      const auto bits = set_bits(e);
      const bool ha = seen.count(bits[0]) != 0, hb = seen.count(bits[1]) != 0;
      if (ha != hb) {
        seen.insert(ha ? bits[1] : bits[0]);
        grew = true;
      }
    }
  }
  CHECK(seen.size() == 6);
}

TEST_CASE("banning nothing gives the boundary complex") {
  const Polytope c = cube(3);
  const PolytopalComplex sub = subcomplex_excluding(c, 0);
  CHECK(sub.dim == 2);
  CHECK(sub.pure);
  CHECK(sub.maximal_faces.size() == 6);  // the six square facets
  std::size_t count = 0;
  for (const auto& grade : c.lattice().by_grade) count += grade.size();
  CHECK(sub.faces.size() == count - 1);  // everything except the solid cube
}

TEST_CASE("banning an antipodal 4-cube pair leaves twelve squares") {
  const Polytope c = cube(4);
  std::size_t anti = 0;
  const Vec neg = Rat(-1) * c.vertices()[0];
  while (c.vertices()[anti] != neg) ++anti;
  const PolytopalComplex sub = subcomplex_excluding(c, mask_of({0, anti}));
  CHECK(sub.pure);
  CHECK(sub.dim == 2);
  CHECK(sub.maximal_faces.size() == 12);
  for (VSet f : sub.maximal_faces) CHECK(popcount(f) == 4);
}

TEST_CASE("lattice isomorphism accepts a rotated square") {
  const Polytope sq = cube(2);
  std::vector<Vec> rot;
  for (const Vec& v : sq.vertices())
    rot.push_back(Vec{Rat(3, 5) * v[0] - Rat(4, 5) * v[1],
                      Rat(4, 5) * v[0] + Rat(3, 5) * v[1]});
  const Polytope rotated = Polytope::from_points("rot", 2, rot);
  const LatticeIsomorphism iso = lattice_isomorphic(sq, rotated);
  CHECK(iso.isomorphic);
  CHECK(lattice_isomorphic_under(sq, rotated, iso.vertex_map));
}

TEST_CASE("lattice isomorphism separates pyramid and bipyramid") {
  const Polytope pyr = pyramid(cube(2));
  const Polytope bip = bipyramid(simplex(2));
  CHECK(pyr.vertex_count() == bip.vertex_count());
  CHECK_FALSE(lattice_isomorphic(pyr, bip).isomorphic);
}

TEST_CASE("lattice isomorphism is reflexive and symmetric on the corpus") {
  for (const Polytope& p : corpus()) {
    if (p.vertex_count() > 14) continue;
    const LatticeIsomorphism self = lattice_isomorphic(p, p);
    CHECK(self.isomorphic);
    CHECK(lattice_isomorphic_under(p, p, self.vertex_map));
  }
  const Polytope a = bipyramid(ngon(5));
  const Polytope b = pyramid(ngon(6));
  CHECK(lattice_isomorphic(a, b).isomorphic == lattice_isomorphic(b, a).isomorphic);
  const Polytope b2 = bipyramid(ngon(5));
  CHECK(lattice_isomorphic(a, b2).isomorphic);
  CHECK(lattice_isomorphic(b2, a).isomorphic);
}

TEST_CASE("isomorphism search beyond fourteen vertices is refused") {
  // identical invariants force the search, which is what the cap guards
  CHECK_THROWS_AS(lattice_isomorphic(cube(4), cube(4)), CapacityError);
}

TEST_CASE("an explicit wrong map is rejected even between isomorphic polytopes") {
  const Polytope t = simplex(2);
  CHECK(lattice_isomorphic_under(t, t, {0, 1, 2}));
  const Polytope sq = cube(2);
  // swapping two adjacent square corners breaks an edge
  std::vector<std::size_t> swapped{1, 0, 2, 3};
  CHECK_FALSE(lattice_isomorphic_under(sq, sq, swapped));
}

TEST_CASE("barycenters and translation behave affinely") {
  const Polytope sq = cube(2);
  CHECK(vertex_barycenter(sq) == zero_vec(2));
  CHECK(barycenter_of(sq, mask_of({0, 1})) == Vec{Rat(0), Rat(-1)});
  const Polytope moved = translated(sq, v2(5, 7), "moved");
  CHECK(vertex_barycenter(moved) == v2(5, 7));
  CHECK(moved.f_vector() == sq.f_vector());
}

TEST_CASE("corpus is at least forty polytopes and every member is sane") {
  CHECK(corpus().size() >= 40);
  for (const Polytope& p : corpus()) {
    CHECK(p.dim() >= 1);
    CHECK(p.vertex_count() >= 2);
    CHECK(p.f_vector().front() == 1);
    CHECK(p.f_vector().back() == 1);
    CHECK(p.f_vector()[1] == p.vertex_count());
    CHECK(p.f_vector()[static_cast<std::size_t>(p.dim())] == p.facet_count());
  }
}
