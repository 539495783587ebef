#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "recollab/field.hpp"

namespace recollab {

using Index = Eigen::Index;

template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowMat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Reduced row echelon form. Pivots are chosen as the leftmost nonzero column
/// of the remaining rows, taking the first row that has a nonzero there.
template <class S>
struct Echelon {
  RowMat<S> reduced;
  std::vector<Index> pivots;  // pivot column of each leading row
};

/// Pivots are only searched in the first `pivot_cols` columns (all if negative);
/// the remaining columns are carried along, as for an augmented system.
template <class S>
Echelon<S> rref(const Mat<S>& m, Index pivot_cols = -1);

template <class S>
Index rank(const Mat<S>& m);

/// Basis of the right null space, one column per free variable, normalized so
/// the free coordinates form an identity block.
template <class S>
Mat<S> kernel_basis(const Mat<S>& m);

/// Some x with m x = b (free variables 0), or nullopt.
template <class S>
std::optional<Vec<S>> solve(const Mat<S>& m, const Vec<S>& b);

/// Column-by-column solve of m X = b with one elimination.
template <class S>
std::optional<Mat<S>> solve(const Mat<S>& m, const Mat<S>& b);

template <class S>
bool subspace_equal(const Mat<S>& u, const Mat<S>& v);

/// Canonical basis of the column span (transpose of the nonzero rref rows).
template <class S>
Mat<S> column_span(const Mat<S>& m);

/// Throws FieldMismatch when entries come from different prime fields.
template <class S>
void check_field(const Mat<S>& m);

template <class S>
bool is_zero(const Mat<S>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class S>
Mat<S> zeros(Index rows, Index cols) {
  return Mat<S>::Zero(rows, cols);
}

template <class S>
Mat<S> identity(Index n) {
  return Mat<S>::Identity(n, n);
}

/// Block diagonal matrix diag(a, b).
template <class S>
Mat<S> direct_sum(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r = Mat<S>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

template <class S>
Mat<S> hstack(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows(), a.cols() + b.cols());
  r << a, b;
  return r;
}

template <class S>
Mat<S> vstack(const Mat<S>& a, const Mat<S>& b) {
  Mat<S> r(a.rows() + b.rows(), a.cols());
  r << a, b;
  return r;
}

/// Subspace of S^n kept as rref rows. Coordinates of a vector in the span are
/// its entries at the pivot positions; the non-pivot positions index a basis
/// of the quotient S^n / W.
template <class S>
class Subspace {
 public:
  explicit Subspace(Index ambient = 0) : ambient_(ambient) {}
  static Subspace span(const Mat<S>& columns);

  Index ambient() const noexcept { return ambient_; }
  Index dim() const noexcept { return static_cast<Index>(rows_.size()); }
  const std::vector<Index>& pivots() const noexcept { return pivots_; }

  /// Returns true if the subspace grew.
  bool insert(const Vec<S>& v);
  void insert_columns(const Mat<S>& m);
  Vec<S> reduce(Vec<S> v) const;
  bool contains(const Vec<S>& v) const;
  /// Coordinates w.r.t. basis(); only meaningful for members.
  Vec<S> coordinates(const Vec<S>& v) const;
  Mat<S> coordinates(const Mat<S>& vs) const;
  /// Columns are the basis vectors, ordered by pivot.
  Mat<S> basis() const;
  Vec<S> basis_vector(Index i) const { return rows_[static_cast<std::size_t>(i)]; }

  std::vector<Index> complement() const;
  Vec<S> quotient_coordinates(const Vec<S>& v) const;
  /// The reduced representative with the given quotient coordinates.
  Vec<S> lift_quotient(const Vec<S>& q) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
  }

 private:
  Index ambient_;
  std::vector<Vec<S>> rows_;
  std::vector<Index> pivots_;
};

}  // namespace recollab
