#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "specsim/rational.hpp"

namespace specsim {

// Column vector with exact rational entries.  Equality and ordering are the
// lexicographic ones inherited from std::vector.
struct Vec : std::vector<Rat> {
  using std::vector<Rat>::vector;
};

using Mat = std::vector<Vec>;

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Rat& s, const Vec& a);
Rat dot(const Vec& a, const Vec& b);
Vec zero_vec(std::size_t dim);
Vec concat(const Vec& a, const Vec& b);
bool is_zero(const Vec& a);

// {x : dot(normal, x) = offset}; the positive side is dot(normal, x) > offset.
struct Hyperplane {
  Vec normal;
  Rat offset;
};

enum class Side { Negative = -1, On = 0, Positive = 1 };

Side side_of(const Hyperplane& h, const Vec& x);

// (n_1 .. n_d, offset) scaled to coprime integers.  Two oriented hyperplanes
// coincide iff their keys are equal.
std::vector<Int> hyperplane_key(const Hyperplane& h);

Mat transpose(const Mat& rows);

int rank_of(const Mat& rows);

// Pivot columns of the row echelon form, in increasing order.  The row space
// projects bijectively onto these coordinates.
std::vector<std::size_t> pivot_columns(const Mat& rows);

// Dimension of the affine hull: -1 for no points, 0 for a single point.
int affine_rank(const std::vector<Vec>& points);

// Basis of {x : rows * x = 0}.  Requires at least one row.
std::vector<Vec> null_space(const Mat& rows);

// One solution of rows * x = rhs with every free variable set to zero, or
// nullopt when the system is inconsistent.  Requires at least one row.
std::optional<Vec> solve(const Mat& rows, const Vec& rhs);

Rat det(const Mat& rows);

// Unique hyperplane through the given points in R^d.  Throws
// std::invalid_argument unless the points span exactly a hyperplane.
Hyperplane hyperplane_through(const std::vector<Vec>& points);

struct AffineSubspace {
  Vec base;
  Mat basis;  // linearly independent directions
  int dim() const { return static_cast<int>(basis.size()); }
};

// Smallest affine subspace containing the points; throws on empty input.
AffineSubspace affine_hull(const std::vector<Vec>& points);

// Indices i such that appending the unit vectors e_i to `vectors` yields a
// basis of R^dim.  Throws std::invalid_argument if `vectors` is dependent.
std::vector<std::size_t> extending_unit_vectors(const std::vector<Vec>& vectors,
                                                std::size_t dim);

}  // namespace specsim
