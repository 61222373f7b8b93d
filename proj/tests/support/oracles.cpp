#include "support/oracles.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_set>

namespace testsupport {
namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

// Row-scaled integer copy; scaling rows never changes rank or minor signs.
std::vector<Int> int_row(const Vec& r) {
  Int den = 1;
  for (const Rat& x : r) den = lcm(den, denominator(x));
  std::vector<Int> z(r.size());
  for (std::size_t j = 0; j < r.size(); ++j)
    z[j] = numerator(r[j]) * (den / denominator(r[j]));
  return z;
}

// Bareiss one-step elimination.  The divisions are exact; a nonzero
// remainder would mean the oracle itself is broken, so it throws.
Int exact_div(const Int& t, const Int& prev) {
  if (prev == 1) return t;
  if (t % prev != 0) throw std::logic_error("bareiss division not exact");
  return t / prev;
}

int int_rank(std::vector<std::vector<Int>> a) {
  if (a.empty()) return 0;
  const std::size_t nc = a[0].size();
  Int prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nc && rank < a.size(); ++col) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      for (std::size_t j = col + 1; j < nc; ++j)
        a[i][j] = exact_div(a[rank][col] * a[i][j] - a[i][col] * a[rank][j], prev);
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

Int int_det(std::vector<std::vector<Int>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;  // empty product; keeps 1-dimensional hulls working
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign < 0 ? Int(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

// Normal of the hyperplane through d points in R^d as signed maximal minors
// of the difference matrix; zero vector when the points do not span one.
Vec normal_through(const std::vector<Vec>& pts) {
  const std::size_t d = pts[0].size();
  std::vector<std::vector<Int>> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(int_row(pts[i] - pts[0]));
  Vec normal(d, Rat(0));
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<std::vector<Int>> minor;
    for (const auto& row : diffs) {
      std::vector<Int> m;
      for (std::size_t c = 0; c < d; ++c)
        if (c != j) m.push_back(row[c]);
      minor.push_back(m);
    }
    const Int dj = int_det(minor);
    normal[j] = (j % 2 == 0) ? Rat(dj) : Rat(-dj);
  }
  return normal;
}

// Unique solution of a square rational system, nullopt when singular.
std::optional<Vec> gauss_solve(Mat a, Vec rhs) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[k], a[piv]);
    std::swap(rhs[k], rhs[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      const Rat f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  Vec x(n);
  for (std::size_t k = 0; k < n; ++k) x[k] = rhs[k] / a[k][k];
  return x;
}

void cells_below(const Polytope& p, VSet face, int fdim, VSet tail,
                 std::vector<VSet>* out) {
  const std::vector<std::size_t> verts = set_bits(face);
  if (verts.size() == static_cast<std::size_t>(fdim) + 1) {
    out->push_back(face | tail);
    return;
  }
  const std::size_t v = verts.front();
  for (VSet sub : p.lattice().subfaces_of(face, fdim - 1))
    if (!(sub & (VSet{1} << v)))
      cells_below(p, sub, fdim - 1, tail | (VSet{1} << v), out);
}

Rat factorial(int n) {
  Rat f(1);
  for (int i = 2; i <= n; ++i) f *= Rat(i);
  return f;
}

}  // namespace

int bareiss_rank(Mat rows) {
  std::vector<std::vector<Int>> a;
  for (const Vec& r : rows) a.push_back(int_row(r));
  return int_rank(std::move(a));
}

int oracle_affine_rank(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  Mat diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return bareiss_rank(diffs);
}

std::vector<std::vector<VSet>> closure_lattice(const Polytope& p) {
  std::unordered_set<VSet> seen{p.full_mask()};
  std::vector<VSet> work{p.full_mask()};
  while (!work.empty()) {
    const VSet s = work.back();
    work.pop_back();
    for (VSet fm : p.facet_masks())
      if (seen.insert(s & fm).second) work.push_back(s & fm);
  }
  seen.insert(0);

  std::vector<std::vector<VSet>> grades(static_cast<std::size_t>(p.dim()) + 2);
  for (VSet mask : seen) {
    int fdim = -1;
    if (mask != 0) {
      std::vector<Vec> pts;
      for (std::size_t v : set_bits(mask)) pts.push_back(p.local_vertices()[v]);
      fdim = oracle_affine_rank(pts);
    }
    if (fdim < -1 || fdim > p.dim()) throw std::logic_error("face grade out of range");
    grades[static_cast<std::size_t>(fdim) + 1].push_back(mask);
  }
  for (auto& g : grades) std::sort(g.begin(), g.end());
  return grades;
}

std::vector<VSet> brute_facet_masks(const Polytope& p) {
  const int d = p.dim();
  const std::vector<Vec>& pts = p.local_vertices();
  const std::size_t n = pts.size();
  std::vector<VSet> out;

  std::vector<std::size_t> idx(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  while (true) {
    std::vector<Vec> sub;
    for (std::size_t i : idx) sub.push_back(pts[i]);
    const Vec normal = normal_through(sub);
    if (!is_zero(normal)) {
      const Rat offset = dot(normal, sub[0]);
      bool pos = false, neg = false;
      VSet on = 0;
      for (std::size_t q = 0; q < n; ++q) {
        const Rat s = dot(normal, pts[q]) - offset;
        if (s > 0) pos = true;
        else if (s < 0) neg = true;
        else on |= VSet{1} << q;
      }
      if (!(pos && neg)) out.push_back(on);
    }
    std::size_t i = idx.size();
    bool done = false;
    while (i-- > 0) {
      if (idx[i] != i + n - idx.size()) break;
      if (i == 0) done = true;
    }
    if (done) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rat simplex_volume(const Polytope& p, VSet cell) {
  const std::vector<std::size_t> verts = set_bits(cell);
  const int d = p.dim();
  if (verts.size() != static_cast<std::size_t>(d) + 1)
    throw std::invalid_argument("cell is not full-dimensional");
  std::vector<std::vector<Int>> rows;
  Rat scale(1);
  for (std::size_t i = 1; i < verts.size(); ++i) {
    const Vec diff = p.local_vertices()[verts[i]] - p.local_vertices()[verts[0]];
    Int den = 1;
    for (const Rat& x : diff) den = lcm(den, denominator(x));
    rows.push_back(int_row(diff));
    scale *= Rat(den);
  }
  Rat v = Rat(abs(int_det(std::move(rows)))) / scale / factorial(d);
  return v;
}

Rat cone_volume(const Polytope& p) {
  if (p.dim() <= 0) return Rat(0);
  std::vector<VSet> cells;
  cells_below(p, p.full_mask(), p.dim(), 0, &cells);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  Rat total(0);
  for (VSet c : cells) total += simplex_volume(p, c);
  return total;
}

bool cells_meet_in_common_face(const Polytope& p, VSet a, VSet b) {
  const int d = p.dim();
  const std::vector<Vec>& pts = p.local_vertices();

  struct Constraint {
    Vec normal;
    Rat offset;  // inside is normal . x >= offset
  };
  const auto cell_constraints = [&](VSet cell) {
    std::vector<Constraint> cs;
    const std::vector<std::size_t> verts = set_bits(cell);
    for (std::size_t skip = 0; skip < verts.size(); ++skip) {
      std::vector<Vec> sub;
      for (std::size_t i = 0; i < verts.size(); ++i)
        if (i != skip) sub.push_back(pts[verts[i]]);
      Vec normal = normal_through(sub);
      if (is_zero(normal)) throw std::invalid_argument("degenerate cell");
      Rat offset = dot(normal, sub[0]);
      if (dot(normal, pts[verts[skip]]) < offset) {
        normal = Rat(-1) * normal;
        offset = -offset;
      }
      cs.push_back({std::move(normal), std::move(offset)});
    }
    return cs;
  };

  std::vector<Constraint> cons = cell_constraints(a);
  for (Constraint& c : cell_constraints(b)) cons.push_back(std::move(c));

  std::set<Vec> found;
  std::vector<std::size_t> idx(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  while (true) {
    Mat rows;
    Vec rhs;
    for (std::size_t i : idx) {
      rows.push_back(cons[i].normal);
      rhs.push_back(cons[i].offset);
    }
    if (auto x = gauss_solve(rows, rhs)) {
      bool inside = true;
      for (const Constraint& c : cons)
        if (dot(c.normal, *x) < c.offset) {
          inside = false;
          break;
        }
      if (inside) found.insert(*x);
    }
    std::size_t i = idx.size();
    bool done = false;
    while (i-- > 0) {
      if (idx[i] != i + cons.size() - idx.size()) break;
      if (i == 0) done = true;
    }
    if (done) break;
    ++idx[i];
    for (std::size_t j = i + 1; j < idx.size(); ++j) idx[j] = idx[j - 1] + 1;
  }

  std::set<Vec> expected;
  for (std::size_t v : set_bits(a & b)) expected.insert(pts[v]);
  return found == expected;
}

bool affine_hulls_meet_in_point(const std::vector<Vec>& a,
                                const std::vector<Vec>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty point set");
  Mat u, v;
  for (std::size_t i = 1; i < a.size(); ++i) u.push_back(a[i] - a[0]);
  for (std::size_t i = 1; i < b.size(); ++i) v.push_back(b[i] - b[0]);
  Mat both = u;
  for (const Vec& r : v) both.push_back(r);
  const int ru = bareiss_rank(u);
  const int rv = bareiss_rank(v);
  const int rboth = bareiss_rank(both);
  if (ru + rv != rboth) return false;  // direction spaces share a line
  Mat aug = both;
  aug.push_back(b[0] - a[0]);
  return bareiss_rank(aug) == rboth;  // consistent, so exactly one point
}

}  // namespace testsupport
