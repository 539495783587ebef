#include "recollab/linalg.hpp"

#include <algorithm>

namespace recollab {

namespace {

template <class S>
void check_scalar(const S&, std::uint32_t&) {}

void check_scalar(const Zp& x, std::uint32_t& seen) {
  if (x.modulus() == 0) return;
  if (seen == 0) {
    seen = x.modulus();
  } else if (seen != x.modulus()) {
    throw Error(ErrorCode::FieldMismatch, "matrix mixes F_" + std::to_string(seen) + " and F_" +
                                              std::to_string(x.modulus()) + " entries");
  }
}

}  // namespace

template <class S>
void check_field(const Mat<S>& m) {
  if constexpr (std::is_same_v<S, Zp>) {
    std::uint32_t seen = 0;
    for (Index j = 0; j < m.cols(); ++j)
      for (Index i = 0; i < m.rows(); ++i) check_scalar(m(i, j), seen);
  }
}

template <class S>
Echelon<S> rref(const Mat<S>& m, Index pivot_cols) {
  Echelon<S> e;
  e.reduced = m;
  RowMat<S>& r = e.reduced;
  const Index rows = r.rows();
  const Index cols = r.cols();
  const Index limit = pivot_cols < 0 ? cols : std::min(pivot_cols, cols);
  Index top = 0;
  for (Index c = 0; c < limit && top < rows; ++c) {
    Index p = -1;
    for (Index i = top; i < rows; ++i) {
      if (!is_zero(r(i, c))) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != top) r.row(p).swap(r.row(top));
    S inv = inverse(r(top, c));
    for (Index j = c; j < cols; ++j)
      if (!is_zero(r(top, j))) r(top, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == top || is_zero(r(i, c))) continue;
      S f = r(i, c);
      for (Index j = c; j < cols; ++j) {
        if (!is_zero(r(top, j))) r(i, j) -= f * r(top, j);
      }
    }
    e.pivots.push_back(c);
    ++top;
  }
  return e;
}

template <class S>
Index rank(const Mat<S>& m) {
  check_field(m);
  return static_cast<Index>(rref(m).pivots.size());
}

template <class S>
Mat<S> kernel_basis(const Mat<S>& m) {
  check_field(m);
  Echelon<S> e = rref(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Index> free;
  for (Index c = 0; c < n; ++c)
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  Mat<S> k = Mat<S>::Zero(n, static_cast<Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const Index col = static_cast<Index>(f);
    k(free[f], col) = S(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      const S& v = e.reduced(static_cast<Index>(r), free[f]);
      if (!is_zero(v)) k(e.pivots[r], col) = -v;
    }
  }
  return k;
}

template <class S>
std::optional<Mat<S>> solve(const Mat<S>& m, const Mat<S>& b) {
  if (m.rows() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "solve: matrix has " + std::to_string(m.rows()) +
                                                  " rows but right-hand side has " + std::to_string(b.rows()));
  check_field(m);
  check_field(b);
  Mat<S> aug(m.rows(), m.cols() + b.cols());
  aug << m, b;
  Echelon<S> e = rref(aug, m.cols());
  const Index rk = static_cast<Index>(e.pivots.size());
  for (Index i = rk; i < aug.rows(); ++i)
    for (Index j = m.cols(); j < aug.cols(); ++j)
      if (!is_zero(e.reduced(i, j))) return std::nullopt;
  Mat<S> x = Mat<S>::Zero(m.cols(), b.cols());
  for (Index r = 0; r < rk; ++r)
    for (Index j = 0; j < b.cols(); ++j) x(e.pivots[static_cast<std::size_t>(r)], j) = e.reduced(r, m.cols() + j);
  return x;
}

template <class S>
std::optional<Vec<S>> solve(const Mat<S>& m, const Vec<S>& b) {
  Mat<S> bm = b;
  auto x = solve(m, bm);
  if (!x) return std::nullopt;
  return Vec<S>(x->col(0));
}

template <class S>
bool subspace_equal(const Mat<S>& u, const Mat<S>& v) {
  if (u.rows() != v.rows())
    throw Error(ErrorCode::DimensionMismatch, "subspace_equal: ambient dimensions differ");
  Index ru = rank(u);
  Index rv = rank(v);
  if (ru != rv) return false;
  return rank<S>(hstack(u, v)) == ru;
}

template <class S>
Mat<S> column_span(const Mat<S>& m) {
  check_field(m);
  Mat<S> t = m.transpose();
  Echelon<S> e = rref(t);
  const Index k = static_cast<Index>(e.pivots.size());
  Mat<S> r = e.reduced.topRows(k).transpose();
  return r;
}

// ---------------------------------------------------------------- Subspace

template <class S>
Subspace<S> Subspace<S>::span(const Mat<S>& columns) {
  Subspace s(columns.rows());
  s.insert_columns(columns);
  return s;
}

template <class S>
Vec<S> Subspace<S>::reduce(Vec<S> v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const Index c = pivots_[r];
    if (is_zero(v(c))) continue;
    S f = v(c);
    const Vec<S>& row = rows_[r];
    for (Index j = 0; j < ambient_; ++j)
      if (!is_zero(row(j))) v(j) -= f * row(j);
  }
  return v;
}

template <class S>
bool Subspace<S>::insert(const Vec<S>& v) {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "subspace insert: wrong ambient dimension");
  Vec<S> w = reduce(v);
  Index c = -1;
  for (Index j = 0; j < ambient_; ++j) {
    if (!is_zero(w(j))) {
      c = j;
      break;
    }
  }
  if (c < 0) return false;
  S inv = inverse(w(c));
  for (Index j = c; j < ambient_; ++j)
    if (!is_zero(w(j))) w(j) *= inv;
  for (auto& row : rows_) {
    if (is_zero(row(c))) continue;
    S f = row(c);
    for (Index j = c; j < ambient_; ++j)
      if (!is_zero(w(j))) row(j) -= f * w(j);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), c);
  auto offset = pos - pivots_.begin();
  pivots_.insert(pos, c);
  rows_.insert(rows_.begin() + offset, std::move(w));
  return true;
}

template <class S>
void Subspace<S>::insert_columns(const Mat<S>& m) {
  for (Index j = 0; j < m.cols(); ++j) insert(m.col(j));
}

template <class S>
bool Subspace<S>::contains(const Vec<S>& v) const {
  Vec<S> w = reduce(v);
  for (Index j = 0; j < ambient_; ++j)
    if (!is_zero(w(j))) return false;
  return true;
}

template <class S>
Vec<S> Subspace<S>::coordinates(const Vec<S>& v) const {
  Vec<S> c(dim());
  for (std::size_t r = 0; r < pivots_.size(); ++r) c(static_cast<Index>(r)) = v(pivots_[r]);
  return c;
}

template <class S>
Mat<S> Subspace<S>::coordinates(const Mat<S>& vs) const {
  Mat<S> c(dim(), vs.cols());
  for (std::size_t r = 0; r < pivots_.size(); ++r) c.row(static_cast<Index>(r)) = vs.row(pivots_[r]);
  return c;
}

template <class S>
Mat<S> Subspace<S>::basis() const {
  Mat<S> b(ambient_, dim());
  for (std::size_t r = 0; r < rows_.size(); ++r) b.col(static_cast<Index>(r)) = rows_[r];
  return b;
}

template <class S>
std::vector<Index> Subspace<S>::complement() const {
  std::vector<Index> out;
  std::size_t k = 0;
  for (Index j = 0; j < ambient_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

template <class S>
Vec<S> Subspace<S>::quotient_coordinates(const Vec<S>& v) const {
  Vec<S> w = reduce(v);
  auto comp = complement();
  Vec<S> q(static_cast<Index>(comp.size()));
  for (std::size_t i = 0; i < comp.size(); ++i) q(static_cast<Index>(i)) = w(comp[i]);
  return q;
}

template <class S>
Vec<S> Subspace<S>::lift_quotient(const Vec<S>& q) const {
  auto comp = complement();
  Vec<S> v = Vec<S>::Zero(ambient_);
  for (std::size_t i = 0; i < comp.size(); ++i) v(comp[i]) = q(static_cast<Index>(i));
  return v;
}

#define RECOLLAB_INSTANTIATE(S)                                               \
  template void check_field<S>(const Mat<S>&);                                \
  template Echelon<S> rref<S>(const Mat<S>&, Index);                          \
  template Index rank<S>(const Mat<S>&);                                      \
  template Mat<S> kernel_basis<S>(const Mat<S>&);                             \
  template std::optional<Vec<S>> solve<S>(const Mat<S>&, const Vec<S>&);      \
  template std::optional<Mat<S>> solve<S>(const Mat<S>&, const Mat<S>&);      \
  template bool subspace_equal<S>(const Mat<S>&, const Mat<S>&);              \
  template Mat<S> column_span<S>(const Mat<S>&);                              \
  template class Subspace<S>;
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab
