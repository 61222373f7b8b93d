#include "specsim/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "specsim/errors.hpp"

namespace specsim {

namespace {

void check_same_size_(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
}

Int exact_div_(const Int& a, const Int& b) {
  Int q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0) throw InternalInconsistency("fraction-free elimination produced a remainder");
  return q;
}

struct IntEchelon {
  std::vector<std::vector<Int>> m;
  std::vector<std::size_t> pivot_cols;
  int sign = 1;
};

// Fraction-free Gaussian elimination (Bareiss).  Only the first `pivot_limit`
// columns are eligible as pivots; trailing columns are carried through the
// row updates, which keeps augmented right-hand sides in sync.
IntEchelon int_echelon_(std::vector<std::vector<Int>> m, std::size_t pivot_limit) {
  IntEchelon e;
  const std::size_t nrows = m.size();
  const std::size_t ncols = nrows == 0 ? 0 : m[0].size();
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < pivot_limit && r < nrows; ++c) {
    std::size_t pr = r;
    while (pr < nrows && m[pr][c] == 0) ++pr;
    if (pr == nrows) continue;
    if (pr != r) {
      std::swap(m[pr], m[r]);
      e.sign = -e.sign;
    }
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < ncols; ++j)
        m[i][j] = exact_div_(m[i][j] * m[r][c] - m[i][c] * m[r][j], prev);
      m[i][c] = 0;
    }
    prev = m[r][c];
    e.pivot_cols.push_back(c);
    ++r;
  }
  e.m = std::move(m);
  return e;
}

// Scales each row to integer entries.  multipliers[i] is the factor row i was
// multiplied by (always positive).
std::vector<std::vector<Int>> cleared_(const Mat& rows, std::vector<Int>* multipliers) {
  std::vector<std::vector<Int>> out;
  out.reserve(rows.size());
  for (const Vec& row : rows) {
    Int l = 1;
    for (const Rat& x : row) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    std::vector<Int> r;
    r.reserve(row.size());
    for (const Rat& x : row) {
      const Rat scaled = x * Rat(l);
      r.push_back(boost::multiprecision::numerator(scaled));
    }
    if (multipliers) multipliers->push_back(l);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

Vec operator+(const Vec& a, const Vec& b) {
  check_same_size_(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  check_same_size_(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec operator*(const Rat& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

Rat dot(const Vec& a, const Vec& b) {
  check_same_size_(a, b);
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec zero_vec(std::size_t dim) { return Vec(dim, Rat(0)); }

Vec concat(const Vec& a, const Vec& b) {
  Vec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

bool is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

Side side_of(const Hyperplane& h, const Vec& x) {
  const Rat s = dot(h.normal, x) - h.offset;
  if (s > 0) return Side::Positive;
  if (s < 0) return Side::Negative;
  return Side::On;
}

std::vector<Int> hyperplane_key(const Hyperplane& h) {
  if (is_zero(h.normal)) throw std::invalid_argument("hyperplane with zero normal");
  Mat one_row{concat(h.normal, Vec{h.offset})};
  std::vector<std::vector<Int>> cleared = cleared_(one_row, nullptr);
  std::vector<Int>& key = cleared[0];
  Int g = 0;
  for (const Int& x : key) g = boost::multiprecision::gcd(g, x);
  for (Int& x : key) x = exact_div_(x, g);
  return std::move(key);
}

Mat transpose(const Mat& rows) {
  if (rows.empty()) return {};
  const std::size_t ncols = rows[0].size();
  Mat out(ncols, zero_vec(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ncols) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < ncols; ++j) out[j][i] = rows[i][j];
  }
  return out;
}

int rank_of(const Mat& rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  const IntEchelon e = int_echelon_(cleared_(rows, nullptr), ncols);
  return static_cast<int>(e.pivot_cols.size());
}

std::vector<std::size_t> pivot_columns(const Mat& rows) {
  if (rows.empty()) return {};
  const std::size_t ncols = rows[0].size();
  return int_echelon_(cleared_(rows, nullptr), ncols).pivot_cols;
}

int affine_rank(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  Mat diffs;
  diffs.reserve(points.size() - 1);
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank_of(diffs);
}

std::vector<Vec> null_space(const Mat& rows) {
  if (rows.empty()) throw std::invalid_argument("null_space of empty system");
  const std::size_t n = rows[0].size();
  const IntEchelon e = int_echelon_(cleared_(rows, nullptr), n);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec x = zero_vec(n);
    x[f] = 1;
    for (std::size_t r = e.pivot_cols.size(); r-- > 0;) {
      const std::size_t pc = e.pivot_cols[r];
      Rat acc = 0;
      for (std::size_t j = pc + 1; j < n; ++j)
        if (e.m[r][j] != 0) acc += Rat(e.m[r][j]) * x[j];
      x[pc] = -acc / Rat(e.m[r][pc]);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& rows, const Vec& rhs) {
  if (rows.empty()) throw std::invalid_argument("solve with empty system");
  if (rows.size() != rhs.size()) throw std::invalid_argument("rhs size mismatch");
  const std::size_t n = rows[0].size();
  Mat aug;
  aug.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) aug.push_back(concat(rows[i], Vec{rhs[i]}));
  const IntEchelon e = int_echelon_(cleared_(aug, nullptr), n);
  for (std::size_t r = e.pivot_cols.size(); r < e.m.size(); ++r)
    if (e.m[r][n] != 0) return std::nullopt;
  Vec x = zero_vec(n);
  for (std::size_t r = e.pivot_cols.size(); r-- > 0;) {
    const std::size_t pc = e.pivot_cols[r];
    Rat acc = Rat(e.m[r][n]);
    for (std::size_t j = pc + 1; j < n; ++j)
      if (e.m[r][j] != 0) acc -= Rat(e.m[r][j]) * x[j];
    x[pc] = acc / Rat(e.m[r][pc]);
  }
  return x;
}

Rat det(const Mat& rows) {
  const std::size_t n = rows.size();
  for (const Vec& row : rows)
    if (row.size() != n) throw std::invalid_argument("det of non-square matrix");
  if (n == 0) return 1;
  std::vector<Int> multipliers;
  const IntEchelon e = int_echelon_(cleared_(rows, &multipliers), n);
  if (e.pivot_cols.size() < n) return 0;
  Rat d(e.m[n - 1][n - 1]);
  if (e.sign < 0) d = -d;
  for (const Int& l : multipliers) d /= Rat(l);
  return d;
}

Hyperplane hyperplane_through(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("hyperplane through no points");
  // The two- and three-dimensional cases carry the hull scans, so they skip
  // the generic kernel computation.
  if (points.size() == 2 && points[0].size() == 2) {
    const Rat dx = points[1][0] - points[0][0];
    const Rat dy = points[1][1] - points[0][1];
    if (dx == 0 && dy == 0)
      throw std::invalid_argument("points do not span a hyperplane");
    Hyperplane h;
    h.normal = Vec{-dy, dx};
    h.offset = h.normal[0] * points[0][0] + h.normal[1] * points[0][1];
    return h;
  }
  if (points.size() == 3 && points[0].size() == 3) {
    const Vec u = points[1] - points[0];
    const Vec v = points[2] - points[0];
    Vec n{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
    if (is_zero(n)) throw std::invalid_argument("points do not span a hyperplane");
    Hyperplane h;
    h.offset = dot(n, points[0]);
    h.normal = std::move(n);
    return h;
  }
  Mat rows;
  rows.reserve(points.size());
  for (const Vec& p : points) rows.push_back(concat(p, Vec{Rat(1)}));
  const std::vector<Vec> kernel = null_space(rows);
  if (kernel.size() != 1) throw std::invalid_argument("points do not span a hyperplane");
  const std::size_t d = points[0].size();
  Hyperplane h;
  h.normal = Vec(kernel[0].begin(), kernel[0].begin() + static_cast<std::ptrdiff_t>(d));
  h.offset = -kernel[0][d];
  return h;
}

AffineSubspace affine_hull(const std::vector<Vec>& points) {
  if (points.empty()) throw std::invalid_argument("affine hull of no points");
  AffineSubspace s;
  s.base = points[0];
  Mat kept;
  for (std::size_t i = 1; i < points.size(); ++i) {
    Vec diff = points[i] - points[0];
    if (is_zero(diff)) continue;
    kept.push_back(std::move(diff));
    if (rank_of(kept) < static_cast<int>(kept.size())) kept.pop_back();
  }
  s.basis = std::move(kept);
  return s;
}

std::vector<std::size_t> extending_unit_vectors(const std::vector<Vec>& vectors,
                                                std::size_t dim) {
  Mat rows(dim, zero_vec(vectors.size() + dim));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    if (vectors[j].size() != dim) throw std::invalid_argument("vector dimension mismatch");
    for (std::size_t i = 0; i < dim; ++i) rows[i][j] = vectors[j][i];
  }
  for (std::size_t i = 0; i < dim; ++i) rows[i][vectors.size() + i] = 1;
  const IntEchelon e = int_echelon_(cleared_(rows, nullptr), vectors.size() + dim);
  std::vector<std::size_t> out;
  for (std::size_t c : e.pivot_cols) {
    if (c < vectors.size()) continue;
    out.push_back(c - vectors.size());
  }
  if (out.size() != dim - vectors.size())
    throw std::invalid_argument("vectors are linearly dependent");
  return out;
}

}  // namespace specsim
