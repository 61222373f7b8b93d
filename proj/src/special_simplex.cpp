#include "specsim/special_simplex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "specsim/constructions.hpp"
#include "specsim/errors.hpp"

namespace specsim {

namespace {

std::vector<std::size_t> checked_sorted_selection_(const Polytope& p,
                                                   const std::vector<std::size_t>& s) {
  if (s.empty()) throw std::invalid_argument("empty vertex selection");
  std::vector<std::size_t> out = s;
  std::sort(out.begin(), out.end());
  for (std::size_t i : out)
    if (i >= p.vertex_count()) throw std::invalid_argument("vertex index out of range");
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw std::invalid_argument("repeated vertex index in selection");
  return out;
}

std::vector<Vec> selected_points_(const Polytope& p, const std::vector<std::size_t>& idx) {
  std::vector<Vec> pts;
  pts.reserve(idx.size());
  for (std::size_t i : idx) pts.push_back(p.local_vertices()[i]);
  return pts;
}

bool affinely_independent_(const std::vector<Vec>& pts) {
  return affine_rank(pts) == static_cast<int>(pts.size()) - 1;
}

struct SplitSelection {
  std::vector<std::size_t> simplex;  // sorted
  std::vector<std::size_t> others;   // sorted, ascending original index
};

SplitSelection split_(const Polytope& p, const std::vector<std::size_t>& s_sorted) {
  SplitSelection sp;
  sp.simplex = s_sorted;
  const VSet mask = mask_of(s_sorted);
  for (std::size_t v = 0; v < p.vertex_count(); ++v)
    if (!(mask & (VSet{1} << v))) sp.others.push_back(v);
  return sp;
}

struct ProjectionSetup {
  Projection proj;
  int dim_A = -1;
};

// Projection along the simplex directions.  When the non-simplex vertices
// span a complement of the simplex directions, project onto exactly that
// complement through the unique point where the two affine hulls meet; the
// non-simplex vertices are then fixed by the projection.  Otherwise fall
// back to a coordinate complement through the simplex barycenter.
ProjectionSetup make_projection_(const Polytope& p, const SplitSelection& sp) {
  const std::size_t n = static_cast<std::size_t>(p.dim());
  const std::vector<Vec>& local = p.local_vertices();
  const Vec& s0 = local[sp.simplex[0]];

  Mat u;
  for (std::size_t k = 1; k < sp.simplex.size(); ++k)
    u.push_back(local[sp.simplex[k]] - s0);

  ProjectionSetup out;
  const std::vector<Vec> a_points = [&] {
    std::vector<Vec> pts;
    for (std::size_t v : sp.others) pts.push_back(local[v]);
    return pts;
  }();
  out.dim_A = affine_rank(a_points);

  bool meek_compatible = false;
  AffineSubspace a_hull;
  if (!a_points.empty() && out.dim_A == static_cast<int>(n - u.size())) {
    a_hull = affine_hull(a_points);
    Mat combined = u;
    combined.insert(combined.end(), a_hull.basis.begin(), a_hull.basis.end());
    meek_compatible = rank_of(combined) == static_cast<int>(n);
  }

  if (meek_compatible) {
    // origin solves a_base + A alpha = s0 + U beta.
    const std::size_t cols = a_hull.basis.size() + u.size();
    Mat rows(n, zero_vec(cols));
    for (std::size_t j = 0; j < a_hull.basis.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) rows[i][j] = a_hull.basis[j][i];
    for (std::size_t j = 0; j < u.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) rows[i][a_hull.basis.size() + j] = -u[j][i];
    const auto sol = solve(rows, s0 - a_hull.base);
    if (!sol) throw InternalInconsistency("complementary affine hulls fail to meet");
    Vec origin = a_hull.base;
    for (std::size_t j = 0; j < a_hull.basis.size(); ++j)
      origin = origin + (*sol)[j] * a_hull.basis[j];
    out.proj.origin = std::move(origin);
    out.proj.complement = a_hull.basis;
  } else {
    Vec bary = zero_vec(n);
    for (std::size_t v : sp.simplex) bary = bary + local[v];
    out.proj.origin = Rat(1, static_cast<long>(sp.simplex.size())) * bary;
    Mat w;
    for (std::size_t c : extending_unit_vectors(u, n)) {
      Vec e = zero_vec(n);
      e[c] = 1;
      w.push_back(std::move(e));
    }
    out.proj.complement = std::move(w);
  }
  out.proj.simplex_dirs = std::move(u);
  return out;
}

}  // namespace

Vec Projection::project(const Vec& local_point) const {
  const std::size_t n = local_point.size();
  const std::size_t mu = simplex_dirs.size();
  Mat rows(n, zero_vec(mu + complement.size()));
  for (std::size_t j = 0; j < mu; ++j)
    for (std::size_t i = 0; i < n; ++i) rows[i][j] = simplex_dirs[j][i];
  for (std::size_t j = 0; j < complement.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) rows[i][mu + j] = complement[j][i];
  const auto sol = solve(rows, local_point - origin);
  if (!sol) throw InternalInconsistency("projection basis is not a basis");
  return Vec(sol->begin() + static_cast<std::ptrdiff_t>(mu), sol->end());
}

Vec Projection::embed(const Vec& complement_coords) const {
  if (complement_coords.size() != complement.size())
    throw std::invalid_argument("complement coordinate count mismatch");
  Vec out = origin;
  for (std::size_t j = 0; j < complement.size(); ++j)
    out = out + complement_coords[j] * complement[j];
  return out;
}

SpecialSimplexCheck verify_special_simplex(const Polytope& p,
                                           const std::vector<std::size_t>& s) {
  SpecialSimplexCheck out;
  const std::vector<std::size_t> sel = checked_sorted_selection_(p, s);

  if (sel.size() == p.vertex_count() &&
      p.vertex_count() == static_cast<std::size_t>(p.dim()) + 1) {
    out.rejection =
        "the polytope is itself a simplex; its whole vertex set is reported "
        "through the search flag rather than certified";
    return out;
  }
  if (!affinely_independent_(selected_points_(p, sel))) {
    out.rejection = "selected vertices are affinely dependent";
    return out;
  }

  const std::size_t m = sel.size() - 1;
  const VSet smask = mask_of(sel);
  SpecialSimplexCertificate cert;
  cert.simplex_vertices = sel;
  cert.m = static_cast<int>(m);
  for (std::size_t f = 0; f < p.facet_count(); ++f) {
    const VSet inside = p.facet_masks()[f] & smask;
    if (popcount(inside) != static_cast<int>(m)) {
      std::ostringstream msg;
      msg << "facet " << f << " contains " << popcount(inside)
          << " of the selected vertices, expected " << m;
      out.rejection = msg.str();
      return out;
    }
    const VSet missed = smask & ~inside;
    cert.missed_vertex_per_facet[f] = set_bits(missed)[0];
  }

  std::set<std::size_t> missed_union;
  for (const auto& kv : cert.missed_vertex_per_facet) missed_union.insert(kv.second);
  if (missed_union.size() != sel.size())
    throw InternalInconsistency("a certified simplex vertex lies on every facet");

  out.certificate = std::move(cert);
  return out;
}

namespace {

void bron_kerbosch_(VSet r, VSet cand, VSet excl, const std::vector<VSet>& adj,
                    std::vector<VSet>& out) {
  if (cand == 0 && excl == 0) {
    out.push_back(r);
    return;
  }
  std::size_t pivot = 0;
  int best = -1;
  for (std::size_t u : set_bits(cand | excl)) {
    const int deg = popcount(adj[u] & cand);
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  }
  for (std::size_t v : set_bits(cand & ~adj[pivot])) {
    const VSet bit = VSet{1} << v;
    bron_kerbosch_(r | bit, cand & adj[v], excl & adj[v], adj, out);
    cand &= ~bit;
    excl |= bit;
  }
}

}  // namespace

SpecialSimplexSearch find_special_simplices(const Polytope& p) {
  if (p.vertex_count() > 30)
    throw CapacityError("special simplex search is limited to 30 vertices");
  SpecialSimplexSearch out;
  out.polytope_is_simplex =
      p.vertex_count() == static_cast<std::size_t>(p.dim()) + 1;

  const std::size_t n = p.vertex_count();
  std::vector<VSet> adj(n, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) adj[u] |= VSet{1} << v, adj[v] |= VSet{1} << u;
  for (VSet fm : p.facet_masks()) {
    for (std::size_t u : set_bits(p.full_mask() & ~fm))
      for (std::size_t v : set_bits(p.full_mask() & ~fm))
        if (u != v) adj[u] &= ~(VSet{1} << v);
  }

  std::vector<VSet> cliques;
  bron_kerbosch_(0, p.full_mask(), 0, adj, cliques);
  for (VSet c : cliques) {
    const SpecialSimplexCheck check = verify_special_simplex(p, set_bits(c));
    if (check.certificate) out.certificates.push_back(*check.certificate);
  }
  std::sort(out.certificates.begin(), out.certificates.end(),
            [](const SpecialSimplexCertificate& a, const SpecialSimplexCertificate& b) {
              return a.simplex_vertices < b.simplex_vertices;
            });
  return out;
}

BasisPolytopeResult basis_polytope(const Polytope& p,
                                   const SpecialSimplexCertificate& cert) {
  const std::vector<std::size_t> sel = checked_sorted_selection_(p, cert.simplex_vertices);
  const SplitSelection sp = split_(p, sel);
  if (sp.others.empty())
    throw std::invalid_argument("certificate covers the whole vertex set");
  const std::size_t n = static_cast<std::size_t>(p.dim());
  const std::size_t m = sel.size() - 1;

  ProjectionSetup setup = make_projection_(p, sp);
  std::vector<Vec> images;
  images.reserve(sp.others.size());
  for (std::size_t v : sp.others)
    images.push_back(setup.proj.project(p.local_vertices()[v]));

  BasisPolytopeResult out;
  out.q = Polytope::from_points("basis(" + p.name() + ")", n - m, images);
  out.projection = std::move(setup.proj);
  out.subcomplex_dim = setup.dim_A;

  if (out.q.vertex_count() != sp.others.size())
    throw InternalInconsistency("projection identifies or buries a vertex");
  for (std::size_t k = 0; k < sp.others.size(); ++k)
    if (out.q.vertices()[k] != images[k])
      throw InternalInconsistency("projected vertex order changed in the hull");
  if (out.q.dim() != static_cast<int>(n - m))
    throw InternalInconsistency("basis polytope is not full-dimensional");

  out.vertex_map.assign(p.vertex_count(), -1);
  for (std::size_t k = 0; k < sp.others.size(); ++k)
    out.vertex_map[sp.others[k]] = static_cast<std::ptrdiff_t>(k);

  // The faces avoiding the simplex must map exactly onto the proper faces
  // of q under the vertex correspondence.
  const PolytopalComplex sub = subcomplex_excluding(p, mask_of(sel));
  std::set<std::pair<VSet, int>> mapped;
  for (VSet f : sub.faces) {
    VSet img = 0;
    for (std::size_t v : set_bits(f))
      img |= VSet{1} << static_cast<std::size_t>(out.vertex_map[v]);
    mapped.insert({img, sub.dim_of.at(f)});
  }
  std::set<std::pair<VSet, int>> proper;
  const auto& grades = out.q.lattice().by_grade;
  for (std::size_t g = 0; g + 1 < grades.size(); ++g)
    for (VSet f : grades[g]) proper.insert({f, static_cast<int>(g) - 1});
  if (mapped != proper)
    throw InternalInconsistency("face complex avoiding the simplex is not the basis boundary");

  return out;
}

std::string to_string(MeekWildKind kind) {
  switch (kind) {
    case MeekWildKind::Meek: return "MEEK";
    case MeekWildKind::MeekEquivalent: return "MEEK_EQUIVALENT";
    case MeekWildKind::Wild: return "WILD";
  }
  throw std::logic_error("unknown classification kind");
}

Classification classify_meek_wild(const Polytope& p,
                                  const SpecialSimplexCertificate& cert) {
  const BasisPolytopeResult basis = basis_polytope(p, cert);
  Classification out;
  out.dim_A = basis.subcomplex_dim;
  out.dim_Q = basis.q.dim();
  if (out.dim_A == out.dim_Q) {
    out.kind = MeekWildKind::Meek;
    return out;
  }
  // Face-lattice isomorphism forces equal f-vectors, so a mismatch with the
  // predicted direct-sum counts settles the wild case without building the
  // model polytope.
  if (p.f_vector() != direct_sum_fvector(basis.q.f_vector(), cert.m)) {
    out.kind = MeekWildKind::Wild;
    return out;
  }
  const Polytope model = direct_sum(simplex(cert.m), basis.q);
  out.kind = lattice_isomorphic(p, model).isomorphic ? MeekWildKind::MeekEquivalent
                                                     : MeekWildKind::Wild;
  return out;
}

EquivalenceReport equivalence_report(const Polytope& p,
                                     const std::vector<std::size_t>& s) {
  const std::vector<std::size_t> sel = checked_sorted_selection_(p, s);
  if (!affinely_independent_(selected_points_(p, sel)))
    throw std::invalid_argument("selection is affinely dependent");

  EquivalenceReport out;
  if (sel.size() == p.vertex_count()) {
    // Affine independence of the whole vertex set makes p a simplex.
    out.condition_a = out.condition_b = out.trivial = true;
    return out;
  }

  const SplitSelection sp = split_(p, sel);
  const std::size_t n = static_cast<std::size_t>(p.dim());
  const std::size_t m = sel.size() - 1;
  if (m > n)
    throw InternalInconsistency("independent selection larger than the dimension allows");
  const ProjectionSetup setup = make_projection_(p, sp);

  std::vector<Vec> images;
  images.reserve(sp.others.size());
  for (std::size_t v : sp.others)
    images.push_back(setup.proj.project(p.local_vertices()[v]));
  const Polytope q = Polytope::from_points("projected(" + p.name() + ")", n - m, images);

  // The simplex's affine hull projects onto the origin of the complement
  // coordinates, so the first condition asks for the origin strictly inside.
  out.condition_a = q.dim() == static_cast<int>(n - m);
  if (out.condition_a)
    for (const Hyperplane& f : q.facets())
      if (!(f.offset < 0)) {
        out.condition_a = false;
        break;
      }

  out.condition_b = [&] {
    if (q.vertex_count() != sp.others.size()) return false;
    for (std::size_t k = 0; k < sp.others.size(); ++k)
      if (q.vertices()[k] != images[k]) return false;
    const PolytopalComplex sub = subcomplex_excluding(p, mask_of(sel));
    std::map<std::size_t, std::size_t> to_q;
    for (std::size_t k = 0; k < sp.others.size(); ++k) to_q[sp.others[k]] = k;
    std::set<std::pair<VSet, int>> mapped;
    for (VSet f : sub.faces) {
      VSet img = 0;
      for (std::size_t v : set_bits(f)) img |= VSet{1} << to_q[v];
      mapped.insert({img, sub.dim_of.at(f)});
    }
    std::set<std::pair<VSet, int>> proper;
    const auto& grades = q.lattice().by_grade;
    for (std::size_t g = 0; g + 1 < grades.size(); ++g)
      for (VSet f : grades[g]) proper.insert({f, static_cast<int>(g) - 1});
    return mapped == proper;
  }();
  return out;
}

VertexProjectionResult vertex_projection(const Polytope& p,
                                         const SpecialSimplexCertificate& cert,
                                         const Rat& epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("dilation amount must be positive");
  const BasisPolytopeResult basis = basis_polytope(p, cert);
  const std::vector<std::size_t> sel = cert.simplex_vertices;
  const VSet smask = mask_of(sel);
  const std::size_t n = static_cast<std::size_t>(p.dim());

  Vec center = zero_vec(n);
  for (std::size_t v : sel) center = center + p.local_vertices()[v];
  center = Rat(1, static_cast<long>(sel.size())) * center;

  std::vector<Vec> images;
  images.reserve(p.vertex_count());
  const Rat scale = Rat(1) + epsilon;
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    const Vec& x = p.local_vertices()[v];
    if (smask & (VSet{1} << v)) {
      images.push_back(center + scale * (x - center));
    } else {
      images.push_back(basis.projection.embed(
          basis.projection.project(x)));
    }
  }

  VertexProjectionResult out;
  out.target = Polytope::from_points("meek(" + p.name() + ")", n, images);
  out.simplex_center = center;
  if (out.target.vertex_count() != p.vertex_count())
    throw InternalInconsistency("a vertex image failed to stay extreme");
  for (std::size_t v = 0; v < p.vertex_count(); ++v) {
    if (out.target.vertices()[v] != images[v])
      throw InternalInconsistency("vertex image order changed in the hull");
    out.image_index.push_back(v);
  }

  // Check the combinatorial outcome against the model through the one map
  // the construction promises, with no isomorphism search involved.
  const Polytope model = direct_sum(simplex(cert.m), basis.q);
  std::vector<std::size_t> to_model(p.vertex_count(), 0);
  for (std::size_t k = 0; k < sel.size(); ++k) to_model[sel[k]] = k;
  for (std::size_t v = 0; v < p.vertex_count(); ++v)
    if (!(smask & (VSet{1} << v)))
      to_model[v] = sel.size() + static_cast<std::size_t>(basis.vertex_map[v]);
  if (!lattice_isomorphic_under(out.target, model, to_model))
    throw InternalInconsistency("projected hull does not realize the model");
  return out;
}

WeaklyHannarResult weakly_hannar_pairs(const Polytope& p) {
  WeaklyHannarResult out;
  if (p.dim() == 0) {
    out.weakly_hannar = true;
    return out;
  }
  const Vec center = vertex_barycenter(p);
  std::vector<Vec> centered;
  centered.reserve(p.vertex_count());
  for (const Vec& v : p.vertices()) centered.push_back(v - center);

  std::map<Vec, std::size_t> index_of;
  for (std::size_t i = 0; i < centered.size(); ++i) index_of[centered[i]] = i;
  std::vector<std::size_t> antipode(centered.size());
  for (std::size_t i = 0; i < centered.size(); ++i) {
    const auto it = index_of.find(Rat(-1) * centered[i]);
    if (it == index_of.end()) {
      out.missing_antipode = i;
      return out;
    }
    antipode[i] = it->second;
  }

  for (std::size_t f = 0; f < p.facet_count(); ++f) {
    std::vector<Vec> pts;
    for (std::size_t v : set_bits(p.facet_masks()[f])) {
      pts.push_back(centered[v]);
      pts.push_back(Rat(-1) * centered[v]);
    }
    const Polytope h = Polytope::from_points("span-check", p.ambient_dim(), pts);
    std::set<Vec> got(h.vertices().begin(), h.vertices().end());
    std::set<Vec> want(centered.begin(), centered.end());
    if (got != want) {
      out.failing_facet = f;
      return out;
    }
  }

  out.weakly_hannar = true;
  for (std::size_t i = 0; i < centered.size(); ++i) {
    const std::size_t j = antipode[i];
    if (i < j) out.pairs.emplace_back(i, j);
  }
  for (const auto& [i, j] : out.pairs) {
    const SpecialSimplexCheck check = verify_special_simplex(p, {i, j});
    if (!check.certificate)
      throw InternalInconsistency("antipodal pair fails the per-facet count: " +
                                  check.rejection);
    out.pair_certificates.push_back(*check.certificate);
  }
  return out;
}

}  // namespace specsim
