#include "specsim/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "specsim/errors.hpp"

namespace specsim {

namespace {

std::vector<Vec> centered_local_(const Polytope& p) {
  Vec bary = zero_vec(static_cast<std::size_t>(p.dim()));
  for (const Vec& v : p.local_vertices()) bary = bary + v;
  bary = Rat(1, static_cast<long>(p.vertex_count())) * bary;
  std::vector<Vec> out;
  out.reserve(p.vertex_count());
  for (const Vec& v : p.local_vertices()) out.push_back(v - bary);
  return out;
}

Vec padded_(const Vec& head, std::size_t total) {
  Vec out = head;
  out.resize(total, Rat(0));
  return out;
}

Int binomial_(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int out = 1;
  for (int i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;
  }
  return out;
}

std::size_t fvec_at_(const FVector& full, int face_dim) {
  // full is (1, f_0, ..., f_{d-1}, 1); proper faces only, else zero.
  const int idx = face_dim + 1;
  if (idx < 0 || idx + 1 >= static_cast<int>(full.size())) return 0;
  return full[static_cast<std::size_t>(idx)];
}

}  // namespace

Polytope pyramid(const Polytope& base) {
  const std::size_t n = static_cast<std::size_t>(base.dim());
  if (base.dim() == 0) {
    return Polytope::from_points("pyr(" + base.name() + ")", 1,
                                 {Vec{Rat(0)}, Vec{Rat(1)}});
  }
  std::vector<Vec> verts;
  verts.reserve(base.vertex_count() + 1);
  for (const Vec& v : base.local_vertices()) verts.push_back(concat(v, Vec{Rat(0)}));
  Vec apex = zero_vec(n + 1);
  apex[n] = 1;
  verts.push_back(std::move(apex));
  const std::size_t apex_idx = base.vertex_count();

  std::vector<std::vector<std::size_t>> facets;
  std::vector<std::size_t> whole(base.vertex_count());
  std::iota(whole.begin(), whole.end(), 0);
  facets.push_back(std::move(whole));
  for (VSet fm : base.facet_masks()) {
    std::vector<std::size_t> f = set_bits(fm);
    f.push_back(apex_idx);
    facets.push_back(std::move(f));
  }
  return Polytope::from_vertices_and_facets("pyr(" + base.name() + ")", n + 1,
                                            std::move(verts), std::move(facets));
}

Polytope bipyramid(const Polytope& base) {
  const std::string name = "bipyr(" + base.name() + ")";
  if (base.dim() == 0)
    return Polytope::from_points(name, 1, {Vec{Rat(1)}, Vec{Rat(-1)}});

  const std::size_t n = static_cast<std::size_t>(base.dim());
  std::vector<Vec> verts;
  verts.reserve(base.vertex_count() + 2);
  for (const Vec& v : centered_local_(base)) verts.push_back(concat(v, Vec{Rat(0)}));
  Vec up = zero_vec(n + 1), down = zero_vec(n + 1);
  up[n] = 1;
  down[n] = -1;
  verts.push_back(std::move(up));
  verts.push_back(std::move(down));

  std::vector<std::vector<std::size_t>> facets;
  for (VSet fm : base.facet_masks()) {
    for (std::size_t apex : {base.vertex_count(), base.vertex_count() + 1}) {
      std::vector<std::size_t> f = set_bits(fm);
      f.push_back(apex);
      facets.push_back(std::move(f));
    }
  }
  return Polytope::from_vertices_and_facets(name, n + 1, std::move(verts),
                                            std::move(facets));
}

Polytope direct_sum(const Polytope& a, const Polytope& b) {
  if (a.dim() < 1 || b.dim() < 1)
    throw std::invalid_argument("direct sum needs operands of dimension at least 1");
  const std::size_t na = static_cast<std::size_t>(a.dim());
  const std::size_t nb = static_cast<std::size_t>(b.dim());
  const std::vector<Vec> ca = centered_local_(a);
  const std::vector<Vec> cb = centered_local_(b);

  std::vector<Vec> verts;
  verts.reserve(ca.size() + cb.size());
  for (const Vec& v : ca) verts.push_back(padded_(v, na + nb));
  for (const Vec& v : cb) {
    Vec w = zero_vec(na + nb);
    for (std::size_t i = 0; i < nb; ++i) w[na + i] = v[i];
    verts.push_back(std::move(w));
  }

  std::vector<std::vector<std::size_t>> facets;
  facets.reserve(a.facet_count() * b.facet_count());
  for (VSet fa : a.facet_masks())
    for (VSet fb : b.facet_masks()) {
      std::vector<std::size_t> f = set_bits(fa);
      for (std::size_t v : set_bits(fb)) f.push_back(ca.size() + v);
      facets.push_back(std::move(f));
    }
  return Polytope::from_vertices_and_facets(
      "directsum(" + a.name() + "," + b.name() + ")", na + nb, std::move(verts),
      std::move(facets));
}

FVector pyramid_fvector(const FVector& base) {
  if (base.size() < 2) throw std::invalid_argument("malformed f-vector");
  // Faces are the base faces (the base itself included, as the base facet)
  // plus the apex joined with every base face short of the whole base.
  FVector out(base.size() + 1, 1);
  for (std::size_t t = 1; t + 1 < out.size(); ++t)
    out[t] = base[t] + base[t - 1];
  return out;
}

FVector direct_sum_fvector(const FVector& q, int simplex_dim) {
  if (q.size() < 2) throw std::invalid_argument("malformed f-vector");
  const int dq = static_cast<int>(q.size()) - 2;
  const int k = simplex_dim;
  if (k < 1) throw std::invalid_argument("simplex dimension must be at least 1");
  const int dim = dq + k;
  FVector out(static_cast<std::size_t>(dim) + 2, 0);
  out[0] = 1;
  out[static_cast<std::size_t>(dim) + 1] = 1;
  for (int j = 0; j < dim; ++j) {
    Int total = 0;
    for (int r = -1; r <= dq - 1; ++r) {
      const int l = j - 1 - r;
      if (l < -1 || l > k - 1) continue;
      if (r == -1 && l == -1) continue;
      total += Int(fvec_at_(q, r)) * binomial_(k + 1, l + 1);
    }
    out[static_cast<std::size_t>(j) + 1] = static_cast<std::size_t>(total);
  }
  return out;
}

std::vector<MeekFamilyMember> meek_family(const Polytope& q, int m) {
  if (m < 1) throw std::invalid_argument("simplex budget must be at least 1");
  if (q.dim() < 1)
    throw std::invalid_argument("basis polytope must have dimension at least 1");
  std::vector<MeekFamilyMember> out;
  for (int j = 1; j <= m; ++j) {
    MeekFamilyMember member;
    member.apex_count = m - j;
    member.simplex_dim = j;

    Polytope p = direct_sum(simplex(j), q);
    FVector predicted = direct_sum_fvector(q.f_vector(), j);
    std::vector<std::size_t> designated(static_cast<std::size_t>(j) + 1);
    std::iota(designated.begin(), designated.end(), 0);
    for (int i = 0; i < m - j; ++i) {
      const std::size_t apex = p.vertex_count();
      p = pyramid(p);
      predicted = pyramid_fvector(predicted);
      designated.push_back(apex);
    }

    const SpecialSimplexCheck check = verify_special_simplex(p, designated);
    if (!check.certificate)
      throw InternalInconsistency("family designation fails verification: " +
                                  check.rejection);
    member.certificate = *check.certificate;
    member.classification = classify_meek_wild(p, member.certificate);
    member.polytope = std::move(p);
    member.designated = std::move(designated);
    member.predicted_fvector = std::move(predicted);
    out.push_back(std::move(member));
  }
  return out;
}

Polytope cube(int n) {
  if (n < 1) throw std::invalid_argument("cube dimension must be at least 1");
  if (n > 6) throw CapacityError("cube beyond dimension 6 exceeds the vertex mask");
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<Vec> verts;
  verts.reserve(std::size_t{1} << nn);
  for (std::size_t code = 0; code < (std::size_t{1} << nn); ++code) {
    Vec v = zero_vec(nn);
    for (std::size_t i = 0; i < nn; ++i) v[i] = (code >> i) & 1 ? Rat(1) : Rat(-1);
    verts.push_back(std::move(v));
  }
  std::vector<std::vector<std::size_t>> facets;
  for (std::size_t i = 0; i < nn; ++i)
    for (int sign : {0, 1}) {
      std::vector<std::size_t> f;
      for (std::size_t code = 0; code < verts.size(); ++code)
        if (((code >> i) & 1) == static_cast<std::size_t>(sign)) f.push_back(code);
      facets.push_back(std::move(f));
    }
  return Polytope::from_vertices_and_facets("cube(" + std::to_string(n) + ")", nn,
                                            std::move(verts), std::move(facets));
}

Polytope cross(int n) {
  if (n < 1) throw std::invalid_argument("cross polytope dimension must be at least 1");
  if (n > 6) throw CapacityError("cross polytope beyond dimension 6");
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<Vec> verts;
  for (std::size_t i = 0; i < nn; ++i)
    for (int sign : {1, -1}) {
      Vec v = zero_vec(nn);
      v[i] = sign;
      verts.push_back(std::move(v));
    }
  std::vector<std::vector<std::size_t>> facets;
  for (std::size_t code = 0; code < (std::size_t{1} << nn); ++code) {
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < nn; ++i) f.push_back(2 * i + ((code >> i) & 1));
    facets.push_back(std::move(f));
  }
  return Polytope::from_vertices_and_facets("cross(" + std::to_string(n) + ")", nn,
                                            std::move(verts), std::move(facets));
}

Polytope simplex(int n) {
  if (n < 1) throw std::invalid_argument("simplex dimension must be at least 1");
  if (n > 62) throw CapacityError("simplex beyond the vertex mask");
  const std::size_t nn = static_cast<std::size_t>(n);
  std::vector<Vec> verts;
  verts.push_back(zero_vec(nn));
  for (std::size_t i = 0; i < nn; ++i) {
    Vec v = zero_vec(nn);
    v[i] = 1;
    verts.push_back(std::move(v));
  }
  std::vector<std::vector<std::size_t>> facets;
  for (std::size_t i = 0; i < nn; ++i) {
    std::vector<std::size_t> f;
    for (std::size_t v = 0; v <= nn; ++v)
      if (v != i + 1) f.push_back(v);
    facets.push_back(std::move(f));
  }
  std::vector<std::size_t> top(nn);
  std::iota(top.begin(), top.end(), 1);
  facets.push_back(std::move(top));
  return Polytope::from_vertices_and_facets("simplex(" + std::to_string(n) + ")", nn,
                                            std::move(verts), std::move(facets));
}

namespace {

Vec circle_point_(const Rat& t) {
  const Rat denom = Rat(1) + t * t;
  return Vec{(Rat(1) - t * t) / denom, Rat(2) * t / denom};
}

Polytope polygon_from_parameters_(std::string name, std::vector<Rat> ts) {
  std::sort(ts.begin(), ts.end());
  std::vector<Vec> verts;
  verts.reserve(ts.size());
  for (const Rat& t : ts) verts.push_back(circle_point_(t));
  std::vector<std::vector<std::size_t>> facets;
  for (std::size_t i = 0; i < verts.size(); ++i)
    facets.push_back({i, (i + 1) % verts.size()});
  return Polytope::from_vertices_and_facets(std::move(name), 2, std::move(verts),
                                            std::move(facets));
}

}  // namespace

Polytope ngon(int n) {
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  if (n > 60) throw CapacityError("polygon beyond 60 vertices");
  std::vector<Rat> ts;
  ts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) ts.emplace_back(2 * k - n + 1, 2);
  return polygon_from_parameters_("ngon(" + std::to_string(n) + ")", std::move(ts));
}

Polytope random_convex_ngon(int n, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  if (n > 60) throw CapacityError("polygon beyond 60 vertices");
  std::mt19937_64 eng(seed);
  std::set<long> raw;
  while (raw.size() < static_cast<std::size_t>(n))
    raw.insert(static_cast<long>(eng() % 4001) - 2000);
  std::vector<Rat> ts;
  for (long v : raw) ts.emplace_back(v, 40);
  std::ostringstream name;
  name << "randomngon(" << n << ",seed=" << seed << ")";
  return polygon_from_parameters_(name.str(), std::move(ts));
}

DesignatedPolytope birkhoff(int n) {
  if (n < 2) throw std::invalid_argument("doubly stochastic polytopes start at n = 2");
  if (n > 4) throw CapacityError("permutation count beyond desk scale");
  const std::size_t nn = static_cast<std::size_t>(n);

  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> perm(nn);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::map<std::vector<std::size_t>, std::size_t> index_of;
  std::vector<Vec> verts;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    index_of[perms[k]] = k;
    Vec v = zero_vec(nn * nn);
    std::string word;
    for (std::size_t i = 0; i < nn; ++i) {
      v[i * nn + perms[k][i]] = 1;
      word += static_cast<char>('0' + perms[k][i]);
    }
    verts.push_back(std::move(v));
    labels.push_back(std::move(word));
  }

  DesignatedPolytope out;
  const std::string name = "birkhoff(" + std::to_string(n) + ")";
  if (n == 2) {
    out.polytope = Polytope::from_points(name, nn * nn, verts);
  } else {
    std::vector<std::vector<std::size_t>> facets;
    for (std::size_t i = 0; i < nn; ++i)
      for (std::size_t j = 0; j < nn; ++j) {
        std::vector<std::size_t> f;
        for (std::size_t k = 0; k < perms.size(); ++k)
          if (perms[k][i] != j) f.push_back(k);
        facets.push_back(std::move(f));
      }
    out.polytope = Polytope::from_vertices_and_facets(name, nn * nn, verts, facets);
  }
  out.polytope.set_labels(std::move(labels));

  for (std::size_t shift = 0; shift < nn; ++shift) {
    std::vector<std::size_t> sigma(nn);
    for (std::size_t i = 0; i < nn; ++i) sigma[i] = (i + shift) % nn;
    out.designated.push_back(index_of.at(sigma));
  }
  std::sort(out.designated.begin(), out.designated.end());

  if (out.designated.size() == out.polytope.vertex_count()) {
    out.is_whole_simplex = true;
  } else {
    const SpecialSimplexCheck check =
        verify_special_simplex(out.polytope, out.designated);
    if (!check.certificate)
      throw InternalInconsistency("cyclic shifts fail verification: " + check.rejection);
    out.certificate = *check.certificate;
  }
  return out;
}

OrderPolytopeResult order_polytope(const Poset& poset) {
  const std::size_t n = poset.elements.size();
  if (n == 0) throw std::invalid_argument("empty ground set");
  if (n > 5) throw CapacityError("order polytopes are limited to 5 elements");

  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) le[i][i] = true;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [a, b] : poset.covers) {
    if (a >= n || b >= n) throw std::invalid_argument("cover index out of range");
    if (a == b) throw std::invalid_argument("reflexive cover");
    if (!seen.insert({a, b}).second) throw std::invalid_argument("repeated cover");
    le[a][b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && le[i][j] && le[j][i])
        throw std::invalid_argument("cover cycle, not a partial order");
  for (const auto& [a, b] : poset.covers)
    for (std::size_t c = 0; c < n; ++c)
      if (c != a && c != b && le[a][c] && le[c][b])
        throw std::invalid_argument("listed relation is not a cover");

  std::vector<std::size_t> upset_masks;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      if (mask >> a & 1)
        for (std::size_t b = 0; b < n && ok; ++b)
          if (le[a][b] && !(mask >> b & 1)) ok = false;
    if (ok) upset_masks.push_back(mask);
  }

  std::map<std::size_t, std::size_t> vertex_of_mask;
  std::vector<Vec> verts;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < upset_masks.size(); ++k) {
    vertex_of_mask[upset_masks[k]] = k;
    Vec v = zero_vec(n);
    std::string label = "{";
    for (std::size_t e = 0; e < n; ++e)
      if (upset_masks[k] >> e & 1) {
        v[e] = 1;
        if (label.size() > 1) label += ",";
        label += poset.elements[e];
      }
    label += "}";
    verts.push_back(std::move(v));
    labels.push_back(std::move(label));
  }

  std::vector<std::vector<std::size_t>> facets;
  auto facet_where = [&](auto&& keep) {
    std::vector<std::size_t> f;
    for (std::size_t k = 0; k < upset_masks.size(); ++k)
      if (keep(upset_masks[k])) f.push_back(k);
    facets.push_back(std::move(f));
  };
  for (std::size_t e = 0; e < n; ++e) {
    bool minimal = true, maximal = true;
    for (std::size_t o = 0; o < n; ++o) {
      if (o == e) continue;
      if (le[o][e]) minimal = false;
      if (le[e][o]) maximal = false;
    }
    if (minimal) facet_where([e](std::size_t m) { return !(m >> e & 1); });
    if (maximal) facet_where([e](std::size_t m) { return (m >> e & 1) != 0; });
  }
  for (const auto& [a, b] : poset.covers)
    facet_where([a, b](std::size_t m) { return (m >> a & 1) == (m >> b & 1); });

  std::string name = "order(";
  for (std::size_t e = 0; e < n; ++e) {
    if (e) name += ",";
    name += poset.elements[e];
  }
  name += ")";

  OrderPolytopeResult out;
  out.polytope = Polytope::from_vertices_and_facets(std::move(name), n,
                                                    std::move(verts), std::move(facets));
  out.polytope.set_labels(std::move(labels));

  std::vector<int> height(n, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [a, b] : poset.covers)
      if (height[b] < height[a] + 1) {
        height[b] = height[a] + 1;
        changed = true;
      }
  }
  int top = 0;
  for (std::size_t e = 0; e < n; ++e) top = std::max(top, height[e]);
  bool graded = true;
  for (const auto& [a, b] : poset.covers)
    if (height[b] != height[a] + 1) graded = false;
  for (std::size_t e = 0; e < n; ++e) {
    bool maximal = true;
    for (std::size_t o = 0; o < n; ++o)
      if (o != e && le[e][o]) maximal = false;
    if (maximal && height[e] != top) graded = false;
  }
  out.graded = graded;
  if (!graded) return out;

  for (int j = top; j >= 0; --j) {
    std::size_t mask = 0;
    for (std::size_t e = 0; e < n; ++e)
      if (height[e] > j) mask |= std::size_t{1} << e;
    out.designated.push_back(vertex_of_mask.at(mask));
  }
  std::sort(out.designated.begin(), out.designated.end());

  if (out.designated.size() == out.polytope.vertex_count()) {
    out.is_whole_simplex = true;
  } else {
    const SpecialSimplexCheck check =
        verify_special_simplex(out.polytope, out.designated);
    if (!check.certificate)
      throw InternalInconsistency("height cuts fail verification: " + check.rejection);
    out.certificate = *check.certificate;
  }
  return out;
}

ZonotopeResult cube_basis_zonotope(int n) {
  if (n < 3) throw std::invalid_argument("zonotope construction starts at n = 3");
  if (n > 5) throw CapacityError("zonotope beyond desk scale");

  const Polytope base = cube(n - 1);
  std::vector<Vec> points;
  const Vec ones(static_cast<std::size_t>(n - 1), Rat(1));
  for (const Vec& v : base.vertices()) {
    points.push_back(v);
    points.push_back(v + ones);
  }
  ZonotopeResult out;
  out.polytope = Polytope::from_points("cubezonotope(" + std::to_string(n) + ")",
                                       static_cast<std::size_t>(n - 1), points);

  // Doubling recursion on proper face counts, seeded by the segment.
  std::vector<std::size_t> prev = {2};
  for (int k = 3; k <= n; ++k) {
    std::vector<std::size_t> cur(static_cast<std::size_t>(k) - 1, 0);
    for (int i = 0; i <= k - 2; ++i) {
      const int d = k - 1;
      std::size_t cube_faces = static_cast<std::size_t>(
          binomial_(d, i).convert_to<unsigned long long>())
          << static_cast<std::size_t>(d - i);
      std::size_t lower = i < static_cast<int>(prev.size()) ? prev[static_cast<std::size_t>(i)] : 0;
      std::size_t below = i - 1 >= 0 && i - 1 < static_cast<int>(prev.size())
                              ? prev[static_cast<std::size_t>(i - 1)]
                              : 0;
      cur[static_cast<std::size_t>(i)] = cube_faces + lower + below;
    }
    prev = std::move(cur);
  }
  out.predicted_fvector.push_back(1);
  for (std::size_t c : prev) out.predicted_fvector.push_back(c);
  out.predicted_fvector.push_back(1);
  return out;
}

}  // namespace specsim
