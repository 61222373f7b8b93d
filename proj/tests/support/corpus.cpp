#include "support/corpus.hpp"

#include "specsim/constructions.hpp"

namespace testsupport {

using namespace specsim;

namespace {

std::vector<Polytope> build() {
  std::vector<Polytope> out;

  for (int n = 1; n <= 4; ++n) out.push_back(cube(n));
  for (int n = 2; n <= 4; ++n) out.push_back(cross(n));
  for (int n = 1; n <= 4; ++n) out.push_back(simplex(n));
  for (int n = 3; n <= 10; ++n) out.push_back(ngon(n));
  for (int n = 3; n <= 8; ++n) out.push_back(bipyramid(ngon(n)));

  out.push_back(pyramid(ngon(4)));
  out.push_back(pyramid(ngon(5)));

  // the five posets on three elements
  const Poset chain{{"a", "b", "c"}, {{0, 1}, {1, 2}}};
  const Poset vee{{"a", "b", "c"}, {{0, 2}, {1, 2}}};         // two below one
  const Poset wedge{{"a", "b", "c"}, {{0, 1}, {0, 2}}};       // one below two
  const Poset chain_plus{{"a", "b", "c"}, {{0, 1}}};          // 2-chain + isolated
  const Poset antichain{{"a", "b", "c"}, {}};
  for (const Poset* ps : {&chain, &vee, &wedge, &chain_plus, &antichain})
    out.push_back(order_polytope(*ps).polytope);

  out.push_back(birkhoff(2).polytope);
  out.push_back(birkhoff(3).polytope);

  out.push_back(cube_basis_zonotope(3).polytope);
  out.push_back(cube_basis_zonotope(4).polytope);

  out.push_back(direct_sum(simplex(1), ngon(4)));
  out.push_back(direct_sum(simplex(1), ngon(5)));
  out.push_back(direct_sum(simplex(2), simplex(1)));
  out.push_back(direct_sum(simplex(2), ngon(3)));
  out.push_back(direct_sum(simplex(3), simplex(1)));

  for (const auto& member : meek_family(simplex(1), 2))
    out.push_back(member.polytope);
  for (const auto& member : meek_family(ngon(4), 2))
    out.push_back(member.polytope);

  out.push_back(random_convex_ngon(4, 7));
  out.push_back(random_convex_ngon(4, 11));
  out.push_back(random_convex_ngon(6, 3));

  return out;
}

}  // namespace

const std::vector<Polytope>& corpus() {
  static const std::vector<Polytope> all = build();
  return all;
}

}  // namespace testsupport
