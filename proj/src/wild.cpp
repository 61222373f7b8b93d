#include "specsim/wild.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "specsim/constructions.hpp"
#include "specsim/errors.hpp"

namespace specsim {

namespace {

Hyperplane flipped_(const Hyperplane& h) {
  return Hyperplane{Rat(-1) * h.normal, -h.offset};
}

// Everything the facet transfer needs about the meek model of (p, cert),
// built once and reused across facets.
struct ModelContext {
  const Polytope* p = nullptr;
  const SpecialSimplexCertificate* cert = nullptr;
  VertexProjectionResult vp;
  VSet smask = 0;
  std::vector<Vec> image;                // p-vertex index -> model coordinates
  std::vector<std::size_t> nonsimplex;   // ascending p-vertex indices
  std::vector<VSet> model_facet_masks;   // model facets in p-vertex indexing
};

ModelContext make_context_(const Polytope& p, const SpecialSimplexCertificate& cert) {
  ModelContext ctx;
  ctx.p = &p;
  ctx.cert = &cert;
  ctx.vp = vertex_projection(p, cert, Rat(1));
  ctx.smask = mask_of(cert.simplex_vertices);

  const auto& target_pts = ctx.vp.target.local_vertices();
  ctx.image.resize(p.vertex_count());
  std::vector<std::size_t> to_p(p.vertex_count(), 0);
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    ctx.image[i] = target_pts[ctx.vp.image_index[i]];
    to_p[ctx.vp.image_index[i]] = i;
  }
  for (std::size_t i = 0; i < p.vertex_count(); ++i)
    if (((ctx.smask >> i) & 1) == 0) ctx.nonsimplex.push_back(i);

  for (VSet fm : ctx.vp.target.facet_masks()) {
    VSet translated = 0;
    for (std::size_t t : set_bits(fm)) translated |= (VSet{1} << to_p[t]);
    ctx.model_facet_masks.push_back(translated);
  }
  return ctx;
}

CorrespondingHyperplane transfer_(const ModelContext& ctx, Hyperplane h) {
  const Polytope& p = *ctx.p;
  const SpecialSimplexCertificate& cert = *ctx.cert;
  const std::size_t count = p.vertex_count();
  const std::size_t n = static_cast<std::size_t>(p.dim());

  std::vector<Side> src(count);
  bool nonsimplex_off = false;
  bool any_pos = false;
  bool any_neg = false;
  for (std::size_t i = 0; i < count; ++i) {
    src[i] = side_of(h, p.local_vertices()[i]);
    if (src[i] == Side::Positive) any_pos = true;
    if (src[i] == Side::Negative) any_neg = true;
    if (((ctx.smask >> i) & 1) == 0 && src[i] != Side::On) nonsimplex_off = true;
  }

  bool bounding_facet = false;
  if (nonsimplex_off) {
    if (any_pos && any_neg)
      throw std::invalid_argument(
          "the hyperplane neither bounds the polytope nor contains every "
          "vertex outside the simplex");
    if (any_neg) {
      h = flipped_(h);
      for (std::size_t i = 0; i < count; ++i) {
        if (src[i] == Side::Positive) src[i] = Side::Negative;
        else if (src[i] == Side::Negative) src[i] = Side::Positive;
      }
    }
    VSet on_mask = 0;
    for (std::size_t i = 0; i < count; ++i)
      if (src[i] == Side::On) on_mask |= (VSet{1} << i);
    const auto& masks = p.facet_masks();
    if (std::find(masks.begin(), masks.end(), on_mask) == masks.end())
      throw std::invalid_argument(
          "the hyperplane supports the polytope along a non-facet face, so "
          "it has no transfer");
    bounding_facet = true;
  } else {
    VSet on_mask = 0;
    for (std::size_t i = 0; i < count; ++i)
      if (src[i] == Side::On) on_mask |= (VSet{1} << i);
    const auto& masks = p.facet_masks();
    bounding_facet =
        std::find(masks.begin(), masks.end(), on_mask) != masks.end();
  }

  Hyperplane lift;
  if (!nonsimplex_off) {
    // Every non-simplex vertex lies on h, so the lift must carry the whole
    // basis image; it is pinned by that image together with the on-h part of
    // the simplex.
    std::vector<Vec> span_pts;
    for (std::size_t w : ctx.nonsimplex) span_pts.push_back(ctx.image[w]);
    for (std::size_t v : cert.simplex_vertices)
      if (src[v] == Side::On) span_pts.push_back(ctx.image[v]);
    try {
      lift = hyperplane_through(span_pts);
    } catch (const std::invalid_argument&) {
      if (bounding_facet)
        throw InternalInconsistency(
            "a facet containing the whole basis spans no model hyperplane");
      throw std::invalid_argument(
          "the hyperplane's trace on the model spans no hyperplane, so it "
          "has no transfer");
    }
    bool oriented = false;
    for (std::size_t v : cert.simplex_vertices) {
      Side s = side_of(lift, ctx.image[v]);
      if (s == Side::On) continue;
      if (s == Side::Negative) lift = flipped_(lift);
      oriented = true;
      break;
    }
    if (!oriented)
      throw InternalInconsistency("every simplex image landed on a lift");
  } else {
    // h bounds p along a facet.  The lift passes through the images of the
    // on-facet simplex vertices plus enough on-facet basis images to span a
    // hyperplane; among the vertex subsets that satisfy the side
    // constraints, the smallest canonical key is taken.
    std::vector<std::size_t> on_simplex, off_simplex, on_other, off_other;
    for (std::size_t i = 0; i < count; ++i) {
      const bool in_simplex = ((ctx.smask >> i) & 1) != 0;
      if (in_simplex)
        (src[i] == Side::On ? on_simplex : off_simplex).push_back(i);
      else
        (src[i] == Side::On ? on_other : off_other).push_back(i);
    }
    const std::size_t need = n - static_cast<std::size_t>(cert.m);
    std::optional<std::vector<Int>> best_key;
    if (on_other.size() >= need && need >= 1) {
      std::vector<std::size_t> comb(need);
      std::iota(comb.begin(), comb.end(), std::size_t{0});
      while (true) {
        std::vector<Vec> pts;
        for (std::size_t v : on_simplex) pts.push_back(ctx.image[v]);
        for (std::size_t t : comb) pts.push_back(ctx.image[on_other[t]]);
        std::optional<Hyperplane> cand;
        try {
          cand = hyperplane_through(pts);
        } catch (const std::invalid_argument&) {
          cand.reset();
        }
        if (cand) {
          bool ok = true;
          int orient = 0;
          for (std::size_t b : off_other) {
            Side s = side_of(*cand, ctx.image[b]);
            if (s == Side::On) { ok = false; break; }
            const int sign = (s == Side::Positive) ? 1 : -1;
            if (orient == 0) orient = sign;
            else if (orient != sign) { ok = false; break; }
          }
          if (ok && orient == -1) *cand = flipped_(*cand);
          if (ok)
            for (std::size_t c : on_other)
              if (side_of(*cand, ctx.image[c]) == Side::Positive) { ok = false; break; }
          if (ok)
            for (std::size_t d : off_simplex)
              if (side_of(*cand, ctx.image[d]) == Side::On) { ok = false; break; }
          if (ok) {
            std::vector<Int> key = hyperplane_key(*cand);
            if (!best_key || key < *best_key) {
              best_key = std::move(key);
              lift = *cand;
            }
          }
        }
        std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(need) - 1;
        while (pos >= 0 &&
               comb[static_cast<std::size_t>(pos)] ==
                   on_other.size() - need + static_cast<std::size_t>(pos))
          --pos;
        if (pos < 0) break;
        ++comb[static_cast<std::size_t>(pos)];
        for (std::size_t t = static_cast<std::size_t>(pos) + 1; t < need; ++t)
          comb[t] = comb[t - 1] + 1;
      }
    }
    if (!best_key)
      throw InternalInconsistency(
          "no lift of a facet hyperplane satisfies the transfer constraints");
  }

  CorrespondingHyperplane out;
  out.source = h;
  out.target = lift;
  for (std::size_t i = 0; i < count; ++i) {
    Side s = side_of(lift, ctx.image[i]);
    if (s == Side::On) out.on_target |= (VSet{1} << i);
    if (s == Side::Negative) out.negative_side |= (VSet{1} << i);
    const bool in_simplex = ((ctx.smask >> i) & 1) != 0;
    const bool source_on = src[i] == Side::On;
    const bool holds = in_simplex ? ((s == Side::On) == source_on)
                                  : ((s != Side::Positive) == source_on);
    if (!holds) {
      if (bounding_facet)
        throw InternalInconsistency("a vertex side fails to transfer");
      throw std::invalid_argument(
          "a vertex side fails to transfer, so the hyperplane has no lift");
    }
  }
  return out;
}

}  // namespace

CorrespondingHyperplane corresponding_hyperplane(
    const Polytope& p, const SpecialSimplexCertificate& cert,
    const Hyperplane& h) {
  ModelContext ctx = make_context_(p, cert);
  return transfer_(ctx, h);
}

WildCharacterizationReport wild_characterization_report(
    const Polytope& p, const SpecialSimplexCertificate& cert) {
  ModelContext ctx = make_context_(p, cert);
  WildCharacterizationReport rep;
  rep.all_b = true;
  rep.all_c = true;
  const VSet all = p.full_mask();

  for (std::size_t f = 0; f < p.facet_count(); ++f) {
    FacetTransferCheck chk;
    chk.facet = f;
    chk.transfer = transfer_(ctx, p.facets()[f]);
    const VSet on = chk.transfer.on_target;
    const VSet below = chk.transfer.negative_side;
    const VSet above = all & ~(on | below);

    chk.bounds_model = below == 0;
    chk.contains_basis = true;
    for (std::size_t w : ctx.nonsimplex)
      if (((on >> w) & 1) == 0) { chk.contains_basis = false; break; }
    for (VSet fm : ctx.model_facet_masks)
      if ((fm & above) == 0 && (fm & below) != 0) { chk.cuts_model_facet = true; break; }

    chk.condition_b = chk.bounds_model || chk.contains_basis || chk.cuts_model_facet;
    chk.condition_c = popcount(ctx.smask & above) == 1;
    rep.all_b = rep.all_b && chk.condition_b;
    rep.all_c = rep.all_c && chk.condition_c;
    rep.facets.push_back(std::move(chk));
  }
  return rep;
}

namespace {

struct ChordData {
  Chord chord;
  Hyperplane plane;  // through the flank vertices and the kept simplex block
};

}  // namespace

Wild2DEnumeration enumerate_wild_2d(int m, int k) {
  if (m < 4 || m > 10 || k < 1 || k > 3)
    throw CapacityError(
        "chord enumeration is limited to polygons with 4..10 vertices and "
        "simplex dimension 1..3");

  Wild2DEnumeration out;
  out.m = m;
  out.k = k;

  const std::string tag = "(" + std::to_string(m) + "," + std::to_string(k) + ")";
  out.anchor = direct_sum(simplex(k), ngon(m));
  const std::size_t nverts = out.anchor.vertex_count();
  const std::size_t ambient = static_cast<std::size_t>(k) + 2;

  std::vector<std::size_t> designated(static_cast<std::size_t>(k) + 1);
  std::iota(designated.begin(), designated.end(), std::size_t{0});
  {
    SpecialSimplexCheck chk = verify_special_simplex(out.anchor, designated);
    if (!chk.certificate)
      throw InternalInconsistency(
          "the chord-free sum fails its simplex check: " + chk.rejection);
    Classification cls = classify_meek_wild(out.anchor, *chk.certificate);
    if (cls.kind != MeekWildKind::Meek)
      throw InternalInconsistency("the chord-free sum is not meek");
  }

  const auto& base_pts = out.anchor.local_vertices();
  auto polygon_vertex = [&](std::size_t j) {
    return static_cast<std::size_t>(k) + 1 + j;
  };

  // Chords in canonical order: arc start, then arc length, then the dropped
  // simplex vertex.  A chord whose defining points span no hyperplane cannot
  // be realized, so it is reported once and not enumerated.
  std::vector<ChordData> chords;
  for (int start = 0; start < m; ++start) {
    for (int len = 1; len <= m - 2; ++len) {
      for (int w0 = 0; w0 <= k; ++w0) {
        Chord c;
        c.flanks = {static_cast<std::size_t>((start - 1 + m) % m),
                    static_cast<std::size_t>((start + len) % m)};
        for (int t = 0; t < len; ++t)
          c.arc.push_back(static_cast<std::size_t>((start + t) % m));
        c.excluded_simplex_vertex = static_cast<std::size_t>(w0);

        std::vector<Vec> pts;
        pts.push_back(base_pts[polygon_vertex(c.flanks[0])]);
        pts.push_back(base_pts[polygon_vertex(c.flanks[1])]);
        for (int s = 0; s <= k; ++s)
          if (s != w0) pts.push_back(base_pts[static_cast<std::size_t>(s)]);
        try {
          ChordData data;
          data.chord = c;
          data.plane = hyperplane_through(pts);
          chords.push_back(std::move(data));
        } catch (const std::invalid_argument&) {
          WildBlueprint bp;
          bp.m = m;
          bp.k = k;
          bp.chords.push_back(c);
          out.rejected.push_back(
              {std::move(bp), "the chord points span no hyperplane"});
        }
      }
    }
  }

  constexpr std::size_t kSystemsCap = 2000000;

  auto realize = [&](const std::vector<std::size_t>& sel) {
    WildBlueprint bp;
    bp.m = m;
    bp.k = k;
    for (std::size_t ci : sel) bp.chords.push_back(chords[ci].chord);

    std::vector<Vec> pts = base_pts;
    for (int j = 0; j < m; ++j) {
      Mat rows;
      Vec rhs;
      for (std::size_t ci : sel) {
        const ChordData& cd = chords[ci];
        if (std::find(cd.chord.arc.begin(), cd.chord.arc.end(),
                      static_cast<std::size_t>(j)) == cd.chord.arc.end())
          continue;
        Vec row(cd.plane.normal.begin(),
                cd.plane.normal.begin() + static_cast<std::ptrdiff_t>(k));
        rows.push_back(std::move(row));
        rhs.push_back(cd.plane.offset -
                      dot(cd.plane.normal, pts[polygon_vertex(static_cast<std::size_t>(j))]));
      }
      if (rows.empty()) continue;
      std::optional<Vec> delta = solve(rows, rhs);
      if (!delta) {
        out.rejected.push_back(
            {std::move(bp), "no displacement along the simplex puts polygon vertex " +
                                std::to_string(j) + " on all of its chords"});
        return;
      }
      for (int t = 0; t < k; ++t)
        pts[polygon_vertex(static_cast<std::size_t>(j))][static_cast<std::size_t>(t)] +=
            (*delta)[static_cast<std::size_t>(t)];
    }

    std::set<Vec> distinct(pts.begin(), pts.end());
    if (distinct.size() != pts.size()) {
      out.rejected.push_back({std::move(bp), "displaced vertices collide"});
      return;
    }

    Polytope cand = Polytope::from_points(
        "wild" + tag + "-s" + std::to_string(out.systems_tried), ambient, pts);
    if (cand.vertex_count() != nverts) {
      out.rejected.push_back(
          {std::move(bp), "a vertex fell inside the hull after displacement"});
      return;
    }
    if (cand.dim() != k + 2) {
      out.rejected.push_back(
          {std::move(bp), "the realization is not full-dimensional"});
      return;
    }

    SpecialSimplexCheck chk = verify_special_simplex(cand, designated);
    if (!chk.certificate) {
      out.rejected.push_back(
          {std::move(bp), "the designated simplex is not special: " + chk.rejection});
      return;
    }
    Classification cls = classify_meek_wild(cand, *chk.certificate);
    if (cls.kind != MeekWildKind::Wild) {
      out.rejected.push_back(
          {std::move(bp), "realized as " + to_string(cls.kind) +
                              ", not wild"});
      return;
    }

    ++out.realized;
    for (const WildRealization& kept : out.wild) {
      if (kept.polytope.f_vector() != cand.f_vector()) continue;
      if (lattice_isomorphic(kept.polytope, cand).isomorphic) {
        ++out.duplicates;
        return;
      }
    }
    out.wild.push_back(
        {std::move(bp), std::move(cand), std::move(*chk.certificate), cls});
  };

  std::vector<int> coverage(static_cast<std::size_t>(m), 0);
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t)> dfs = [&](std::size_t from) {
    for (std::size_t ci = from; ci < chords.size(); ++ci) {
      const std::vector<std::size_t>& arc = chords[ci].chord.arc;
      bool fits = true;
      for (std::size_t j : arc)
        if (coverage[j] + 1 > k) { fits = false; break; }
      if (!fits) continue;
      for (std::size_t j : arc) ++coverage[j];
      chosen.push_back(ci);
      if (++out.systems_tried > kSystemsCap)
        throw CapacityError("too many chord systems; reduce the polygon or simplex size");
      realize(chosen);
      dfs(ci + 1);
      chosen.pop_back();
      for (std::size_t j : arc) --coverage[j];
    }
  };
  dfs(0);
  return out;
}

BoundCheck fvector_bound_check(const Polytope& p,
                               const SpecialSimplexCertificate& cert) {
  const int n = p.dim();
  if (n < 3)
    throw std::invalid_argument("the face-count bound needs dimension at least 3");
  Classification cls = classify_meek_wild(p, cert);
  if (cls.kind != MeekWildKind::Wild)
    throw std::invalid_argument(
        "the face-count bound compares a wild polytope against its meek "
        "counterpart; this one is " + to_string(cls.kind));

  // The comparison model keeps the simplex vertices in place and projects
  // everything else onto the basis polytope, so both hulls share a vertex
  // set size by construction unless something is badly wrong.
  BasisPolytopeResult basis = basis_polytope(p, cert);
  const VSet smask = mask_of(cert.simplex_vertices);
  std::vector<Vec> pts;
  pts.reserve(p.vertex_count());
  for (std::size_t i = 0; i < p.vertex_count(); ++i) {
    const Vec& local = p.local_vertices()[i];
    if ((smask >> i) & 1)
      pts.push_back(local);
    else
      pts.push_back(basis.projection.embed(basis.projection.project(local)));
  }
  Polytope meek = Polytope::from_points("meek(" + p.name() + ")",
                                        static_cast<std::size_t>(n), pts);
  if (meek.vertex_count() != p.vertex_count())
    throw InternalInconsistency("a model vertex fell inside the hull");
  if (meek.dim() != n)
    throw InternalInconsistency("the comparison model lost dimension");
  {
    SpecialSimplexCheck chk = verify_special_simplex(meek, cert.simplex_vertices);
    if (!chk.certificate)
      throw InternalInconsistency(
          "the comparison model rejects the simplex: " + chk.rejection);
    Classification mc = classify_meek_wild(meek, *chk.certificate);
    if (mc.kind != MeekWildKind::Meek)
      throw InternalInconsistency("the comparison model is not meek");
  }

  BoundCheck out;
  out.f_wild = p.f_vector();
  out.f_meek = meek.f_vector();
  out.pass = true;
  for (int i = 0; i < n; ++i) {
    const std::size_t a = out.f_wild[static_cast<std::size_t>(i) + 1];
    const std::size_t b = out.f_meek[static_cast<std::size_t>(i) + 1];
    out.comparisons.push_back(a < b ? "<" : (a == b ? "=" : ">"));
    bool ok = false;
    if (i == 0) ok = a == b;
    else if (i >= n - 2) ok = a < b;
    else ok = a <= b;
    out.pass = out.pass && ok;
  }
  out.meek = std::move(meek);
  return out;
}

}  // namespace specsim
