#include "specsim/triangulation.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "specsim/errors.hpp"

namespace specsim {

namespace {

struct PullEngine {
  const PolytopalComplex& complex;
  std::vector<int> pull_pos;  // vertex -> ordering position, -1 if absent
  std::unordered_map<VSet, std::vector<VSet>> memo;

  const std::vector<VSet>& cells(VSet m) {
    const auto hit = memo.find(m);
    if (hit != memo.end()) return hit->second;

    std::vector<VSet> family;
    for (VSet f : complex.faces)
      if (f != 0 && (f & ~m) == 0) family.push_back(f);

    std::vector<VSet> out;
    if (!family.empty()) {
      VSet present = 0;
      for (VSet f : family) present |= f;
      std::size_t pull = 0;
      int best = -1;
      for (std::size_t v : set_bits(present))
        if (pull_pos[v] > best) {
          best = pull_pos[v];
          pull = v;
        }
      const VSet bit = VSet{1} << pull;

      out = cells(m & ~bit);
      for (VSet c : family) {
        if (!(c & bit)) continue;
        bool maximal = true;
        for (VSet other : family)
          if (other != c && (c & ~other) == 0) {
            maximal = false;
            break;
          }
        if (!maximal) continue;
        if (c == bit) {
          out.push_back(bit);
          continue;
        }
        const int facet_dim = complex.dim_of.at(c) - 1;
        for (VSet g : complex.faces) {
          if ((g & ~c) != 0 || g == c || (g & bit)) continue;
          if (complex.dim_of.at(g) != facet_dim) continue;
          for (VSet sigma : cells(g)) out.push_back(sigma | bit);
        }
      }

      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      std::vector<VSet> pruned;
      for (VSet c : out) {
        bool dominated = false;
        for (VSet other : out)
          if (other != c && (c & ~other) == 0) {
            dominated = true;
            break;
          }
        if (!dominated) pruned.push_back(c);
      }
      out = std::move(pruned);
    }
    return memo.emplace(m, std::move(out)).first->second;
  }
};

bool affinely_independent_cell_(const std::vector<Vec>& points, VSet cell) {
  std::vector<Vec> pts;
  for (std::size_t v : set_bits(cell)) pts.push_back(points[v]);
  return affine_rank(pts) == static_cast<int>(pts.size()) - 1;
}

}  // namespace

Triangulation rlt(const PolytopalComplex& complex,
                  const std::vector<std::size_t>& ordering) {
  if (complex.faces.size() > 2000)
    throw CapacityError("triangulation beyond desk scale");
  std::vector<std::size_t> sorted = ordering;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != complex.support)
    throw std::invalid_argument("ordering is not a permutation of the support");

  PullEngine engine{complex, std::vector<int>(complex.points.size(), -1), {}};
  for (std::size_t i = 0; i < ordering.size(); ++i)
    engine.pull_pos[ordering[i]] = static_cast<int>(i);

  Triangulation out;
  out.points = complex.points;
  out.ordering = ordering;
  out.cells = engine.cells(mask_of(complex.support));
  for (VSet c : out.cells)
    if (!affinely_independent_cell_(out.points, c))
      throw InternalInconsistency("degenerate cell in pulling triangulation");
  return out;
}

Triangulation rlt(const Polytope& p, const std::vector<std::size_t>& ordering) {
  Triangulation out = rlt(full_complex(p), ordering);
  for (VSet c : out.cells)
    if (popcount(c) != p.dim() + 1)
      throw InternalInconsistency("solid triangulation produced a low cell");
  return out;
}

Triangulation simplicial_join(const Triangulation& a, const Triangulation& b) {
  if (a.cells.empty()) return b;
  if (b.cells.empty()) return a;
  const std::size_t dim = a.points.empty() ? 0 : a.points[0].size();
  for (const Vec& p : b.points)
    if (p.size() != dim) throw std::invalid_argument("point dimension mismatch");
  for (const Vec& p : a.points)
    for (const Vec& q : b.points)
      if (p == q) throw std::invalid_argument("operands share a point");
  if (a.points.size() + b.points.size() > 64)
    throw CapacityError("joined point count beyond the vertex mask");

  Triangulation out;
  out.points = a.points;
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  out.ordering = a.ordering;
  for (std::size_t v : b.ordering) out.ordering.push_back(v + a.points.size());
  for (VSet ca : a.cells)
    for (VSet cb : b.cells) {
      const VSet joined = ca | (cb << a.points.size());
      if (!affinely_independent_cell_(out.points, joined))
        throw std::invalid_argument("join produces a degenerate cell");
      out.cells.push_back(joined);
    }
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

Rat triangulation_volume(const Triangulation& t) {
  if (t.points.empty()) return 0;
  const std::size_t d = t.points[0].size();
  Rat total = 0;
  Rat factorial = 1;
  for (std::size_t i = 2; i <= d; ++i) factorial *= Rat(static_cast<long>(i));
  for (VSet cell : t.cells) {
    const std::vector<std::size_t> vs = set_bits(cell);
    if (vs.size() != d + 1)
      throw std::invalid_argument("cell is not a full-dimensional simplex");
    Mat rows;
    for (std::size_t k = 1; k < vs.size(); ++k)
      rows.push_back(t.points[vs[k]] - t.points[vs[0]]);
    Rat vol = det(rows) / factorial;
    if (vol < 0) vol = -vol;
    total += vol;
  }
  return total;
}

JoinStructureReport join_structure_check(const Polytope& p,
                                         const SpecialSimplexCertificate& cert) {
  const VSet smask = mask_of(cert.simplex_vertices);
  std::vector<std::size_t> ordering;
  for (std::size_t v = 0; v < p.vertex_count(); ++v)
    if (!(smask & (VSet{1} << v))) ordering.push_back(v);
  std::vector<std::size_t> tail = cert.simplex_vertices;
  std::sort(tail.begin(), tail.end());
  ordering.insert(ordering.end(), tail.begin(), tail.end());

  const Triangulation solid = rlt(p, ordering);

  const PolytopalComplex sub = subcomplex_excluding(p, smask);
  std::vector<std::size_t> sub_order = sub.support;
  const Triangulation skin = rlt(sub, sub_order);

  JoinStructureReport out;
  out.polytope_cells = solid.cells.size();
  out.subcomplex_cells = skin.cells.size();

  std::vector<VSet> expected;
  expected.reserve(skin.cells.size());
  for (VSet c : skin.cells) expected.push_back(c | smask);
  std::sort(expected.begin(), expected.end());
  out.passes = expected == solid.cells;
  if (out.passes)
    for (std::size_t i = 0; i < skin.cells.size(); ++i)
      out.cell_pairs.emplace_back(skin.cells[i] | smask, skin.cells[i]);
  return out;
}

}  // namespace specsim
