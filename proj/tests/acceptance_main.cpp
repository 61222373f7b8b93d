// Integration gate: one line per criterion, nonzero exit if any fail.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "specsim/constructions.hpp"
#include "specsim/errors.hpp"
#include "specsim/special_simplex.hpp"
#include "specsim/triangulation.hpp"
#include "specsim/wild.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace {

using namespace specsim;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

std::string fvec_str(const FVector& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(f[i]);
  }
  return s + ")";
}

std::size_t antipode_in(const Polytope& p, std::size_t v) {
  const Vec target = Rat(-1) * p.vertices()[v];
  for (std::size_t j = 0; j < p.vertex_count(); ++j)
    if (p.vertices()[j] == target) return j;
  throw std::runtime_error("no antipodal vertex");
}

SpecialSimplexCertificate cert_of(const Polytope& p,
                                  const std::vector<std::size_t>& picked) {
  SpecialSimplexCheck chk = verify_special_simplex(p, picked);
  require(chk.certificate.has_value(), "selection rejected: " + chk.rejection);
  return *chk.certificate;
}

// ------------------------------------------------------------ criterion 1

void criterion_cube_designations() {
  const Polytope c = cube(3);
  const SpecialSimplexSearch search = find_special_simplices(c);
  require(search.certificates.size() == 4,
          "expected 4 certificates, got " +
              std::to_string(search.certificates.size()));
  for (const SpecialSimplexCertificate& cert : search.certificates) {
    require(cert.m == 1, "certificate is not a 1-simplex");
    const BasisPolytopeResult basis = basis_polytope(c, cert);
    require(basis.q.f_vector() == FVector{1, 6, 6, 1},
            "basis f-vector " + fvec_str(basis.q.f_vector()));
    require(lattice_isomorphic(basis.q, ngon(6)).isomorphic,
            "basis is not a hexagon");
    require(classify_meek_wild(c, cert).kind == MeekWildKind::Wild,
            "cube certificate did not classify WILD");
  }
}

// ------------------------------------------------------------ criterion 2

void criterion_low_dimensions() {
  std::set<FVector> seen;
  const std::vector<MeekFamilyMember> fam = meek_family(cube(1), 2);
  require(fam.size() == 2, "segment family size " + std::to_string(fam.size()));
  for (const MeekFamilyMember& mem : fam) seen.insert(mem.polytope.f_vector());
  const std::set<FVector> wanted = {FVector{1, 5, 9, 6, 1},
                                    FVector{1, 5, 8, 5, 1}};
  require(seen == wanted, "segment family f-vectors are off");

  const std::vector<Polytope> quads = {ngon(4), random_convex_ngon(4, 7),
                                       random_convex_ngon(4, 11),
                                       random_convex_ngon(4, 2026)};
  for (const Polytope& q : quads) {
    require(q.f_vector() == FVector{1, 4, 4, 1},
            "quadrangle f-vector " + fvec_str(q.f_vector()));
    const SpecialSimplexSearch search = find_special_simplices(q);
    require(search.certificates.size() == 2,
            "quadrangle should have its two diagonals certified");
    for (const SpecialSimplexCertificate& cert : search.certificates)
      require(cert.m == 1, "quadrangle certificate is not a diagonal");
  }

  for (int k = 3; k <= 8; ++k) {
    const Polytope b = bipyramid(ngon(k));
    const FVector expect = {1, std::size_t(k) + 2, 3 * std::size_t(k),
                            2 * std::size_t(k), 1};
    require(b.f_vector() == expect,
            "bipyramid over " + std::to_string(k) + "-gon: " +
                fvec_str(b.f_vector()));
    const SpecialSimplexCertificate apexes =
        cert_of(b, {std::size_t(k), std::size_t(k) + 1});
    require(apexes.m == 1, "apex pair is not a 1-simplex");
  }
}

// ------------------------------------------------------------ criterion 3

void criterion_direct_sum_formula() {
  const std::vector<Polytope> bases = {ngon(3), cube(2), ngon(5), ngon(8),
                                       cube(3)};
  for (const Polytope& q : bases)
    for (int k = 1; k <= 3; ++k) {
      const FVector predicted = direct_sum_fvector(q.f_vector(), k);
      const FVector actual = direct_sum(simplex(k), q).f_vector();
      require(predicted == actual,
              q.name() + " + simplex(" + std::to_string(k) + "): predicted " +
                  fvec_str(predicted) + ", hull " + fvec_str(actual));
    }
}

// ------------------------------------------------------------ criterion 4

void criterion_family_properties() {
  const std::vector<Polytope> bases = {cube(1), ngon(5), cube(3)};
  for (const Polytope& q : bases)
    for (int m = 1; m <= 3; ++m) {
      const std::vector<MeekFamilyMember> fam = meek_family(q, m);
      require(fam.size() == std::size_t(m), "family size is not m");
      for (const MeekFamilyMember& mem : fam) {
        const SpecialSimplexCertificate cert =
            cert_of(mem.polytope, mem.designated);
        require(cert.m == m, "designated simplex has the wrong dimension");
        require(classify_meek_wild(mem.polytope, cert).kind ==
                    MeekWildKind::Meek,
                mem.polytope.name() + " did not classify MEEK");
        const EquivalenceReport eq =
            equivalence_report(mem.polytope, mem.designated);
        require(eq.condition_a && eq.condition_b,
                mem.polytope.name() + " fails the equivalence conditions");
      }
      for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j)
          require(!lattice_isomorphic(fam[i].polytope, fam[j].polytope)
                       .isomorphic,
                  "family members are lattice-isomorphic");
    }
}

// ------------------------------------------------------------ criterion 5

void criterion_birkhoff() {
  const DesignatedPolytope b = birkhoff(3);
  require(b.polytope.dim() == 4, "dimension " + std::to_string(b.polytope.dim()));
  require(b.polytope.vertex_count() == 6, "vertex count");
  require(b.polytope.facet_count() == 9, "facet count");
  require(b.designated.size() == 3, "designation size");
  const SpecialSimplexCertificate cert = cert_of(b.polytope, b.designated);
  require(cert.m == 2, "cyclic shifts are not a 2-simplex");
}

// ------------------------------------------------------------ criterion 6

void criterion_order_polytopes() {
  const OrderPolytopeResult chain =
      order_polytope(Poset{{"a", "b", "c"}, {{0, 1}, {1, 2}}});
  require(chain.is_whole_simplex, "chain polytope not flagged as a simplex");
  require(find_special_simplices(chain.polytope).polytope_is_simplex,
          "search does not flag the chain polytope");

  const std::vector<Poset> vees = {Poset{{"a", "b", "c"}, {{0, 2}, {1, 2}}},
                                   Poset{{"a", "b", "c"}, {{0, 1}, {0, 2}}}};
  for (const Poset& poset : vees) {
    const OrderPolytopeResult o = order_polytope(poset);
    require(o.polytope.f_vector() == FVector{1, 5, 8, 5, 1},
            "f-vector " + fvec_str(o.polytope.f_vector()));
    require(o.graded, "poset should be graded");
    const SpecialSimplexCertificate cert = cert_of(o.polytope, o.designated);
    require(cert.m == 2, "designated chain is not a 2-simplex");
  }
}

// ------------------------------------------------------------ criterion 7

void criterion_triangulations() {
  std::mt19937_64 rng(2026);
  for (const Polytope& p : testsupport::corpus()) {
    const Rat expected = testsupport::cone_volume(p);
    std::vector<std::size_t> order(p.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    for (int round = 0; round < 3; ++round) {
      if (round == 1) std::reverse(order.begin(), order.end());
      if (round == 2) std::shuffle(order.begin(), order.end(), rng);
      const Rat vol = triangulation_volume(rlt(p, order));
      require(vol == expected, p.name() + ": volume mismatch");
    }

    for (const SpecialSimplexCertificate& cert :
         find_special_simplices(p).certificates) {
      const JoinStructureReport join = join_structure_check(p, cert);
      require(join.passes, p.name() + ": join structure check failed");
    }
  }
}

// ------------------------------------------------------------ criterion 8

void criterion_zonotopes() {
  for (int n = 3; n <= 4; ++n) {
    const Polytope c = cube(n);
    const SpecialSimplexCertificate cert = cert_of(c, {0, antipode_in(c, 0)});
    const BasisPolytopeResult basis = basis_polytope(c, cert);
    const ZonotopeResult z = cube_basis_zonotope(n);
    require(z.polytope.f_vector() == z.predicted_fvector,
            "zonotope recursion prediction is off");
    require(lattice_isomorphic(basis.q, z.polytope).isomorphic,
            "cube basis and zonotope differ for n = " + std::to_string(n));
  }
  const ZonotopeResult z4 = cube_basis_zonotope(4);
  require(z4.polytope.f_vector() == FVector{1, 14, 24, 12, 1},
          "z4 face counts " + fvec_str(z4.polytope.f_vector()));
  for (VSet fm : z4.polytope.facet_masks())
    require(set_bits(fm).size() == 4, "a z4 facet is not a 4-gon");
  require(z4.polytope.vertex_count() ==
              cube(3).vertex_count() + cube_basis_zonotope(3).polytope.vertex_count(),
          "vertex recursion 14 = 8 + 6 is off");
}

// ------------------------------------------------------- criteria 9 and 10

void criterion_wild_enumeration(const Wild2DEnumeration& e) {
  require(e.systems_tried == 37568,
          "systems tried " + std::to_string(e.systems_tried));
  require(e.realized == 48, "realized " + std::to_string(e.realized));
  require(e.duplicates == 40, "duplicates " + std::to_string(e.duplicates));
  require(e.wild.size() == 8, "classes " + std::to_string(e.wild.size()));

  std::map<FVector, int> histogram;
  for (const WildRealization& w : e.wild) ++histogram[w.polytope.f_vector()];
  require(histogram[FVector{1, 10, 23, 15, 1}] == 1, "histogram (23,15)");
  require(histogram[FVector{1, 10, 22, 14, 1}] == 3, "histogram (22,14)");
  require(histogram[FVector{1, 10, 21, 13, 1}] == 2, "histogram (21,13)");
  require(histogram[FVector{1, 10, 20, 12, 1}] == 2, "histogram (20,12)");

  std::vector<const Polytope*> same_f;
  for (const WildRealization& w : e.wild)
    if (w.polytope.f_vector() == FVector{1, 10, 22, 14, 1})
      same_f.push_back(&w.polytope);
  require(same_f.size() >= 2, "need two wild polytopes with f = (1,10,22,14,1)");
  require(!lattice_isomorphic(*same_f[0], *same_f[1]).isomorphic,
          "the (1,10,22,14,1) outputs are isomorphic");

  for (const WildRealization& w : e.wild) {
    const SpecialSimplexCertificate re = cert_of(w.polytope, {0, 1});
    require(classify_meek_wild(w.polytope, re).kind == MeekWildKind::Wild,
            "an output fails to classify WILD");
    const WildCharacterizationReport rep =
        wild_characterization_report(w.polytope, w.certificate);
    require(rep.all_b && rep.all_c, "an output fails the cut conditions");
    const BoundCheck bound = fvector_bound_check(w.polytope, w.certificate);
    require(bound.pass, "an output fails the face-count bound");
    require(bound.f_meek == FVector{1, 10, 24, 16, 1},
            "meek counterpart " + fvec_str(bound.f_meek));
  }
}

void check_bound_shape(const BoundCheck& bound, const std::string& who) {
  require(bound.pass, who + ": bound violated");
  require(!bound.comparisons.empty() && bound.comparisons.front() == "=",
          who + ": vertex counts must be equal");
  const std::size_t n = bound.comparisons.size();
  require(bound.comparisons[n - 2] == "<" && bound.comparisons[n - 1] == "<",
          who + ": ridge and facet counts must drop strictly");
}

void criterion_fvector_bounds(const Wild2DEnumeration& e) {
  for (int n = 3; n <= 4; ++n) {
    const Polytope c = cube(n);
    const SpecialSimplexCertificate cert = cert_of(c, {0, antipode_in(c, 0)});
    check_bound_shape(fvector_bound_check(c, cert), c.name());
  }
  for (const WildRealization& w : e.wild)
    check_bound_shape(fvector_bound_check(w.polytope, w.certificate),
                      w.polytope.name());
}

// ------------------------------------------------------------ criterion 11

void criterion_global_invariants() {
  const std::vector<Polytope>& corpus = testsupport::corpus();
  require(corpus.size() >= 40,
          "corpus holds only " + std::to_string(corpus.size()) + " polytopes");

  for (const Polytope& p : corpus) {
    const FVector f = p.f_vector();
    const int d = p.dim();
    long long alternating = 0;
    for (int i = 0; i < d; ++i) {
      const long long count = static_cast<long long>(f[std::size_t(i) + 1]);
      alternating += (i % 2 == 0) ? count : -count;
    }
    require(alternating == (d % 2 == 0 ? 0 : 2), p.name() + ": Euler relation");

    const Polytope again =
        Polytope::from_points(p.name(), p.ambient_dim(), p.vertices());
    require(again.vertices() == p.vertices() && again.f_vector() == f,
            p.name() + ": hull is not idempotent");

    for (const SpecialSimplexCertificate& cert :
         find_special_simplices(p).certificates) {
      require(cert.missed_vertex_per_facet.size() == p.facet_count(),
              p.name() + ": missed map does not cover the facets");
      std::set<std::size_t> missed;
      for (const auto& entry : cert.missed_vertex_per_facet)
        missed.insert(entry.second);
      const std::set<std::size_t> simplex(cert.simplex_vertices.begin(),
                                          cert.simplex_vertices.end());
      require(missed == simplex, p.name() + ": missed map is not onto");
    }
  }
}

}  // namespace

int main() {
  int failed = 0;
  const auto run = [&failed](int number, const std::string& what,
                             const std::function<void()>& body) {
    try {
      body();
      std::cout << "CRITERION " << number << " PASS - " << what << "\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cout << "CRITERION " << number << " FAIL - " << what << " ("
                << e.what() << ")\n";
    }
  };

  run(1, "3-cube: four wild 1-simplex certificates over hexagon bases",
      criterion_cube_designations);
  run(2, "low dimensions: segment family, quadrangles, bipyramids",
      criterion_low_dimensions);
  run(3, "direct-sum f-vector formula matches hulls in 15 cases",
      criterion_direct_sum_formula);
  run(4, "meek families verify, classify MEEK, and are pairwise distinct",
      criterion_family_properties);
  run(5, "Birkhoff polytope on 3 letters with cyclic designation",
      criterion_birkhoff);
  run(6, "order polytopes over the 3-element chain and vees",
      criterion_order_polytopes);
  run(7, "pulling triangulations: volumes and join structure over the corpus",
      criterion_triangulations);

  run(8, "cube basis polytopes match the zonotope recursion",
      criterion_zonotopes);

  std::optional<Wild2DEnumeration> e81;
  run(9, "wild enumeration over the 8-gon reproduces all eight classes",
      [&e81] {
        e81.emplace(enumerate_wild_2d(8, 1));
        criterion_wild_enumeration(*e81);
      });
  run(10, "face-count bounds: equality at vertices, strict at the top",
      [&e81] {
        require(e81.has_value(), "enumeration unavailable");
        criterion_fvector_bounds(*e81);
      });

  run(11, "Euler relation, hull idempotence, missed-vertex surjectivity",
      criterion_global_invariants);

  if (failed != 0) {
    std::cout << failed << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria pass\n";
  return 0;
}
