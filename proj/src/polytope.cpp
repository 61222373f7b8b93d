#include "specsim/polytope.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "specsim/errors.hpp"

namespace specsim {

int popcount(VSet s) { return std::popcount(s); }

std::vector<std::size_t> set_bits(VSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
    if (s & 1) out.push_back(i);
  return out;
}

VSet mask_of(const std::vector<std::size_t>& indices) {
  VSet m = 0;
  for (std::size_t i : indices) {
    if (i >= 64) throw CapacityError("vertex index beyond mask width");
    m |= VSet{1} << i;
  }
  return m;
}

int FaceLattice::face_dim(VSet mask) const { return dim_of.at(mask); }

FVector FaceLattice::f_vector() const {
  FVector f;
  f.reserve(by_grade.size());
  for (const auto& g : by_grade) f.push_back(g.size());
  return f;
}

std::vector<VSet> FaceLattice::subfaces_of(VSet within, int dim) const {
  std::vector<VSet> out;
  const std::size_t grade = static_cast<std::size_t>(dim + 1);
  if (grade >= by_grade.size()) return out;
  for (VSet f : by_grade[grade])
    if ((f & ~within) == 0) out.push_back(f);
  return out;
}

namespace {

constexpr std::size_t kMaxHullSubsets = 100000;

// Calls fn with every size-k subset of {0..n-1}, lexicographically.
template <typename F>
void for_each_combination_(std::size_t n, std::size_t k, F fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (idx[i] != i + n - k) break;
      if (i == 0) return;
    }
    if (idx[i] == i + n - k) return;
    ++idx[i];
    for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::size_t binomial_capped_(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (r > cap) return cap + 1;
    r = r * (n - i) / (i + 1);
  }
  return r;
}

std::vector<std::size_t> identity_coords_(std::size_t n) {
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

Vec select_coords_(const Vec& v, const std::vector<std::size_t>& coords) {
  Vec out;
  out.reserve(coords.size());
  for (std::size_t c : coords) out.push_back(v[c]);
  return out;
}

// Coordinates the affine hull of the points projects to bijectively.
std::vector<std::size_t> hull_frame_(const std::vector<Vec>& points, std::size_t ambient_dim,
                                     int dim) {
  if (dim == static_cast<int>(ambient_dim)) return identity_coords_(ambient_dim);
  Mat diffs;
  diffs.reserve(points.size());
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  if (diffs.empty()) return {};
  return pivot_columns(diffs);
}

// Subset scan for 2- and 3-dimensional hulls on a common-denominator integer
// copy of the points.  Integer side checks skip the normalization every
// rational operation pays for, which matters because enumeration workloads
// run this for every candidate system.  finish_() re-verifies all facets
// against the rational data afterwards.
void scan_planes_int_(const std::vector<Vec>& local, int d,
                      std::vector<Hyperplane>* planes,
                      std::vector<VSet>* plane_masks) {
  using boost::multiprecision::gcd;
  using boost::multiprecision::lcm;
  const std::size_t n = local.size();
  const std::size_t dd = static_cast<std::size_t>(d);
  Int den = 1;
  for (const Vec& v : local)
    for (const Rat& x : v) den = lcm(den, denominator(x));
  std::vector<std::vector<Int>> z(n, std::vector<Int>(dd));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < dd; ++j) {
      const Rat& x = local[i][j];
      z[i][j] = numerator(x) * (den / denominator(x));
    }

  std::set<std::vector<Int>> keys;
  const auto consider = [&](std::vector<Int> nv, const std::vector<Int>& base) {
    bool all_zero = true;
    for (const Int& c : nv)
      if (c != 0) {
        all_zero = false;
        break;
      }
    if (all_zero) return;
    Int off = 0;
    for (std::size_t j = 0; j < dd; ++j) off += nv[j] * base[j];
    bool pos = false, neg = false;
    VSet on = 0;
    for (std::size_t q = 0; q < n; ++q) {
      Int s = -off;
      for (std::size_t j = 0; j < dd; ++j) s += nv[j] * z[q][j];
      const int sg = s.sign();
      if (sg > 0)
        pos = true;
      else if (sg < 0)
        neg = true;
      else
        on |= VSet{1} << q;
      if (pos && neg) return;
    }
    if (neg) {
      for (Int& c : nv) c = -c;
      off = -off;
    }
    Int g = abs(off);
    for (const Int& c : nv) g = gcd(g, abs(c));
    std::vector<Int> key;
    key.reserve(dd + 1);
    for (const Int& c : nv) key.push_back(c / g);
    key.push_back(off / g);
    if (!keys.insert(key).second) return;
    Hyperplane h;
    h.normal.reserve(dd);
    for (std::size_t j = 0; j < dd; ++j) h.normal.push_back(Rat(key[j]));
    h.offset = Rat(key[dd]) / Rat(den);
    plane_masks->push_back(on);
    planes->push_back(std::move(h));
  };

  if (d == 2) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        consider({z[i][1] - z[j][1], z[j][0] - z[i][0]}, z[i]);
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::vector<Int>& a = z[i];
        std::vector<Int> u{z[j][0] - a[0], z[j][1] - a[1], z[j][2] - a[2]};
        std::vector<Int> v{z[k][0] - a[0], z[k][1] - a[1], z[k][2] - a[2]};
        consider({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                  u[0] * v[1] - u[1] * v[0]},
                 a);
      }
}

}  // namespace

Vec Polytope::to_local(const Vec& ambient) const {
  if (ambient.size() != ambient_dim_) throw std::invalid_argument("point dimension mismatch");
  return select_coords_(ambient, frame_coords_);
}

VSet Polytope::full_mask() const {
  const std::size_t n = vertices_.size();
  return n == 64 ? ~VSet{0} : (VSet{1} << n) - 1;
}

std::vector<std::size_t> Polytope::incident_facets(std::size_t vertex) const {
  std::vector<std::size_t> out;
  for (std::size_t f = 0; f < facet_masks_.size(); ++f)
    if (facet_masks_[f] & (VSet{1} << vertex)) out.push_back(f);
  return out;
}

void Polytope::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != vertices_.size())
    throw std::invalid_argument("label count does not match vertex count");
  labels_ = std::move(labels);
}

// Shared validation + lattice construction.  Expects vertices_, local_,
// frame_coords_, dim_ and oriented facets_/facet_masks_ to be in place.
void Polytope::finish_() {
  const std::size_t n = vertices_.size();
  if (n == 0) throw std::invalid_argument("polytope needs at least one vertex");
  if (n > 64) throw CapacityError("more than 64 vertices");
  const int d = dim_;

  if (d == 0) {
    if (n != 1 || !facets_.empty())
      throw std::invalid_argument("a zero-dimensional polytope is a single point");
    lattice_.by_grade = {{VSet{0}}, {VSet{1}}};
    lattice_.dim_of = {{VSet{0}, -1}, {VSet{1}, 0}};
    return;
  }

  // One-sidedness, and facet masks must be exactly the ON sets.
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    VSet on = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const Side s = side_of(facets_[f], local_[v]);
      if (s == Side::Negative) throw std::invalid_argument("vertex on the wrong facet side");
      if (s == Side::On) on |= VSet{1} << v;
    }
    if (on != facet_masks_[f]) throw std::invalid_argument("facet mask mismatch");
  }

  std::set<std::vector<Int>> keys;
  for (const Hyperplane& h : facets_)
    if (!keys.insert(hyperplane_key(h)).second)
      throw std::invalid_argument("duplicate facet hyperplane");

  // Each facet spans a hyperplane of the hull frame.
  for (VSet fm : facet_masks_) {
    std::vector<Vec> pts;
    for (std::size_t v : set_bits(fm)) pts.push_back(local_[v]);
    if (affine_rank(pts) != d - 1)
      throw std::invalid_argument("facet vertex set does not span a hyperplane");
  }

  // Vertex test: incident facet normals span the frame.
  for (std::size_t v = 0; v < n; ++v) {
    Mat normals;
    for (std::size_t f : incident_facets(v)) normals.push_back(facets_[f].normal);
    if (rank_of(normals) != d) throw std::invalid_argument("point is not a vertex");
  }

  // Faces are the mask intersections of facets; grade by dimension.
  std::unordered_set<VSet> seen{full_mask()};
  std::vector<VSet> work{full_mask()};
  while (!work.empty()) {
    const VSet s = work.back();
    work.pop_back();
    for (VSet fm : facet_masks_)
      if (seen.insert(s & fm).second) work.push_back(s & fm);
  }
  seen.insert(0);

  lattice_.by_grade.assign(static_cast<std::size_t>(d) + 2, {});
  for (VSet mask : seen) {
    int fdim;
    if (mask == 0) {
      fdim = -1;
    } else {
      Mat normals;
      for (std::size_t f = 0; f < facet_masks_.size(); ++f)
        if ((mask & ~facet_masks_[f]) == 0) normals.push_back(facets_[f].normal);
      fdim = d - rank_of(normals);
    }
    if (fdim < -1 || fdim > d) throw InternalInconsistency("face dimension out of range");
    lattice_.dim_of.emplace(mask, fdim);
    lattice_.by_grade[static_cast<std::size_t>(fdim) + 1].push_back(mask);
  }
  for (auto& g : lattice_.by_grade) std::sort(g.begin(), g.end());

  // Mask ranks must agree with vertex-set ranks; spot-checked everywhere on
  // small lattices, and for the full mask and all facets regardless.
  if (seen.size() <= 2000) {
    for (VSet mask : seen) {
      if (mask == 0) continue;
      std::vector<Vec> pts;
      for (std::size_t v : set_bits(mask)) pts.push_back(local_[v]);
      if (affine_rank(pts) != lattice_.dim_of.at(mask))
        throw InternalInconsistency("face grading disagrees with vertex-set rank");
    }
  }
  if (lattice_.dim_of.at(full_mask()) != d)
    throw std::invalid_argument("some facet contains every vertex");

  const FVector f = lattice_.f_vector();
  if (f.size() != static_cast<std::size_t>(d) + 2)
    throw InternalInconsistency("f-vector length mismatch");
  if (f[0] != 1 || f.back() != 1 || f[1] != n)
    throw std::invalid_argument("face lattice has wrong extremes");
  if (f[static_cast<std::size_t>(d)] != facets_.size())
    throw std::invalid_argument("facet family incomplete");
  for (std::size_t k = 0; k < f.size(); ++k)
    if (f[k] == 0) throw std::invalid_argument("empty face grade");

  // Every ridge lies in exactly two facets.
  for (VSet ridge : lattice_.by_grade[static_cast<std::size_t>(d) - 1]) {
    int count = 0;
    for (VSet fm : facet_masks_)
      if ((ridge & ~fm) == 0) ++count;
    if (count != 2) throw std::invalid_argument("ridge not on exactly two facets");
  }

  long long euler = 0;
  for (std::size_t k = 0; k < f.size(); ++k)
    euler += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(f[k]);
  if (euler != 0) throw std::invalid_argument("face counts fail Euler check");
}

Polytope Polytope::from_points(std::string name, std::size_t ambient_dim,
                               std::vector<Vec> points) {
  Polytope p;
  p.name_ = std::move(name);
  p.ambient_dim_ = ambient_dim;

  std::vector<Vec> pts;
  for (Vec& pt : points) {
    if (pt.size() != ambient_dim) throw std::invalid_argument("point dimension mismatch");
    if (std::find(pts.begin(), pts.end(), pt) == pts.end()) pts.push_back(std::move(pt));
  }
  if (pts.empty()) throw std::invalid_argument("hull of no points");
  if (pts.size() > 64) throw CapacityError("more than 64 distinct points");

  const int d = affine_rank(pts);
  p.dim_ = d;
  p.frame_coords_ = hull_frame_(pts, ambient_dim, d);
  std::vector<Vec> local;
  local.reserve(pts.size());
  for (const Vec& pt : pts) local.push_back(select_coords_(pt, p.frame_coords_));

  if (d == 0) {
    p.vertices_ = std::move(pts);
    p.local_ = std::move(local);
    p.finish_();
    return p;
  }

  if (binomial_capped_(pts.size(), static_cast<std::size_t>(d), kMaxHullSubsets) >
      kMaxHullSubsets)
    throw CapacityError("hull enumeration too large");

  std::vector<Hyperplane> planes;
  std::vector<VSet> plane_masks;  // over the deduplicated point indexing
  if (d == 2 || d == 3) {
    scan_planes_int_(local, d, &planes, &plane_masks);
  } else {
    std::set<std::vector<Int>> keys;
    for_each_combination_(pts.size(), static_cast<std::size_t>(d),
                          [&](const std::vector<std::size_t>& idx) {
      std::vector<Vec> sub;
      sub.reserve(idx.size());
      for (std::size_t i : idx) sub.push_back(local[i]);
      Hyperplane h;
      try {
        h = hyperplane_through(sub);
      } catch (const std::invalid_argument&) {
        return;
      }
      bool pos = false, neg = false;
      VSet on = 0;
      for (std::size_t q = 0; q < local.size(); ++q) {
        const Side s = side_of(h, local[q]);
        if (s == Side::Positive) pos = true;
        else if (s == Side::Negative) neg = true;
        else on |= VSet{1} << q;
        if (pos && neg) return;
      }
      if (neg) {
        h.normal = Rat(-1) * h.normal;
        h.offset = -h.offset;
      }
      if (keys.insert(hyperplane_key(h)).second) {
        planes.push_back(std::move(h));
        plane_masks.push_back(on);
      }
    });
  }

  // Extreme points lie on facets whose normals span the frame.
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Mat normals;
    for (std::size_t f = 0; f < planes.size(); ++f)
      if ((plane_masks[f] >> i) & 1) normals.push_back(planes[f].normal);
    if (rank_of(normals) == d) keep.push_back(i);
  }

  for (std::size_t i : keep) {
    p.vertices_.push_back(pts[i]);
    p.local_.push_back(local[i]);
  }
  p.facets_ = std::move(planes);
  p.facet_masks_.reserve(p.facets_.size());
  for (VSet scan_mask : plane_masks) {
    VSet on = 0;
    for (std::size_t j = 0; j < keep.size(); ++j)
      if ((scan_mask >> keep[j]) & 1) on |= VSet{1} << j;
    p.facet_masks_.push_back(on);
  }
  p.finish_();
  return p;
}

Polytope Polytope::from_vertices_and_facets(
    std::string name, std::size_t ambient_dim, std::vector<Vec> vertices,
    std::vector<std::vector<std::size_t>> facet_vertices) {
  Polytope p;
  p.name_ = std::move(name);
  p.ambient_dim_ = ambient_dim;

  for (const Vec& v : vertices)
    if (v.size() != ambient_dim) throw std::invalid_argument("point dimension mismatch");
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (vertices[i] == vertices[j]) throw std::invalid_argument("duplicate vertex");
  if (vertices.empty()) throw std::invalid_argument("polytope needs at least one vertex");
  if (vertices.size() > 64) throw CapacityError("more than 64 vertices");

  const int d = affine_rank(vertices);
  p.dim_ = d;
  p.frame_coords_ = hull_frame_(vertices, ambient_dim, d);
  p.local_.reserve(vertices.size());
  for (const Vec& v : vertices) p.local_.push_back(select_coords_(v, p.frame_coords_));
  p.vertices_ = std::move(vertices);

  for (const std::vector<std::size_t>& lst : facet_vertices) {
    std::vector<Vec> sub;
    sub.reserve(lst.size());
    for (std::size_t i : lst) {
      if (i >= p.local_.size()) throw std::invalid_argument("facet vertex index out of range");
      sub.push_back(p.local_[i]);
    }
    Hyperplane h = hyperplane_through(sub);
    const VSet listed = mask_of(lst);
    bool pos = false, neg = false;
    for (std::size_t v = 0; v < p.local_.size(); ++v) {
      const Side s = side_of(h, p.local_[v]);
      if (s == Side::On) {
        if (!(listed & (VSet{1} << v)))
          throw std::invalid_argument("facet vertex list misses a vertex on its hyperplane");
      } else if (listed & (VSet{1} << v)) {
        throw std::invalid_argument("listed facet vertex off the hyperplane");
      } else if (s == Side::Positive) {
        pos = true;
      } else {
        neg = true;
      }
    }
    if (pos && neg) throw std::invalid_argument("facet hyperplane does not bound");
    if (!pos && !neg) throw std::invalid_argument("facet contains every vertex");
    if (neg) {
      h.normal = Rat(-1) * h.normal;
      h.offset = -h.offset;
    }
    p.facets_.push_back(std::move(h));
    p.facet_masks_.push_back(listed);
  }
  p.finish_();
  return p;
}

Vec vertex_barycenter(const Polytope& p) {
  Vec c = zero_vec(p.ambient_dim());
  for (const Vec& v : p.vertices()) c = c + v;
  return Rat(1, static_cast<long>(p.vertex_count())) * c;
}

Vec barycenter_of(const Polytope& p, VSet mask) {
  const std::vector<std::size_t> bits = set_bits(mask);
  if (bits.empty()) throw std::invalid_argument("barycenter of empty set");
  Vec c = zero_vec(p.ambient_dim());
  for (std::size_t v : bits) c = c + p.vertices()[v];
  return Rat(1, static_cast<long>(bits.size())) * c;
}

namespace {

PolytopalComplex complex_from_faces_(const Polytope& p, std::vector<VSet> faces) {
  PolytopalComplex c;
  c.points = p.local_vertices();
  std::sort(faces.begin(), faces.end());
  c.faces = std::move(faces);
  VSet used = 0;
  for (VSet f : c.faces) {
    c.dim_of[f] = p.lattice().face_dim(f);
    used |= f;
  }
  c.support = set_bits(used);
  for (VSet f : c.faces) {
    bool maximal = true;
    for (VSet g : c.faces)
      if (g != f && (f & ~g) == 0) {
        maximal = false;
        break;
      }
    if (maximal) c.maximal_faces.push_back(f);
  }
  c.dim = -1;
  for (VSet f : c.maximal_faces) c.dim = std::max(c.dim, c.dim_of[f]);
  c.pure = true;
  for (VSet f : c.maximal_faces)
    if (c.dim_of[f] != c.dim) c.pure = false;
  return c;
}

}  // namespace

PolytopalComplex subcomplex_excluding(const Polytope& p, VSet banned) {
  // Proper faces only, so banned = 0 yields the boundary complex.
  std::vector<VSet> faces;
  const auto& grades = p.lattice().by_grade;
  for (std::size_t g = 0; g + 1 < grades.size(); ++g)
    for (VSet f : grades[g])
      if ((f & banned) == 0) faces.push_back(f);
  return complex_from_faces_(p, std::move(faces));
}

PolytopalComplex full_complex(const Polytope& p) {
  std::vector<VSet> faces;
  for (const auto& grade : p.lattice().by_grade)
    for (VSet f : grade) faces.push_back(f);
  return complex_from_faces_(p, std::move(faces));
}

Polytope translated(const Polytope& p, const Vec& shift, std::string name) {
  std::vector<Vec> vs;
  vs.reserve(p.vertex_count());
  for (const Vec& v : p.vertices()) vs.push_back(v + shift);
  std::vector<std::vector<std::size_t>> facets;
  facets.reserve(p.facet_masks().size());
  for (VSet fm : p.facet_masks()) facets.push_back(set_bits(fm));
  Polytope out = Polytope::from_vertices_and_facets(std::move(name), p.ambient_dim(),
                                                    std::move(vs), std::move(facets));
  out.set_labels(p.labels());
  return out;
}

}  // namespace specsim
