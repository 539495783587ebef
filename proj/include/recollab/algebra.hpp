#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recollab/linalg.hpp"

namespace recollab {

template <class S>
using SparseVec = std::vector<std::pair<Index, S>>;

template <class S>
class Algebra;
template <class S>
using AlgebraPtr = std::shared_ptr<const Algebra<S>>;

/// Raw description handed to Algebra::create.
template <class S>
struct AlgebraData {
  FieldTag field;
  Index dim = 0;
  std::vector<std::string> labels;
  /// table[i * dim + j] holds the coordinates of b_i b_j.
  std::vector<SparseVec<S>> table;
  Vec<S> unit;
  /// Columns spanning the Jacobson radical, when known structurally.
  std::optional<Mat<S>> radical;
  /// Complete set of orthogonal primitive idempotents, when known.
  std::vector<Vec<S>> primitives;
  std::vector<std::string> primitive_labels;
};

/// Indecomposable projective e_i A viewed inside A, with the right action of
/// every basis element of A in the chosen basis of e_i A.
template <class S>
struct ProjectiveSummand {
  Subspace<S> space;
  Mat<S> basis;                // dim A x dim(e_i A)
  std::vector<Mat<S>> action;  // action[l]: right multiplication by b_l
};

/// Finite-dimensional associative unital algebra over an exact field, given by
/// structure constants. Immutable; shared through AlgebraPtr.
template <class S>
class Algebra {
 public:
  /// Validates associativity, the unit, and (if given) the primitive
  /// idempotents; throws InvalidAlgebra or NotSplitBasic on failure. A local
  /// algebra without listed idempotents gets the unit as its only primitive.
  static AlgebraPtr<S> create(AlgebraData<S> data);

  const FieldTag& field() const noexcept { return d_.field; }
  Index dim() const noexcept { return d_.dim; }
  const std::vector<std::string>& labels() const noexcept { return d_.labels; }
  const std::string& label(Index i) const { return d_.labels[static_cast<std::size_t>(i)]; }
  const Vec<S>& unit() const noexcept { return d_.unit; }
  const SparseVec<S>& product(Index i, Index j) const {
    return d_.table[static_cast<std::size_t>(i * d_.dim + j)];
  }
  const std::vector<SparseVec<S>>& table() const noexcept { return d_.table; }

  S scalar(long long n) const { return make_scalar<S>(d_.field, n); }
  Vec<S> zero() const;
  Vec<S> basis_vector(Index i) const;
  Vec<S> multiply(const Vec<S>& x, const Vec<S>& y) const;
  /// Matrix of y -> x y.
  Mat<S> left_matrix(const Vec<S>& x) const;
  /// Matrix of y -> y x.
  Mat<S> right_matrix(const Vec<S>& x) const;
  bool is_idempotent(const Vec<S>& e) const;

  bool has_radical() const;
  /// Throws UnsupportedField when no structural radical is attached over F_p.
  const Subspace<S>& radical() const;

  bool has_primitives() const noexcept { return !d_.primitives.empty(); }
  /// Throws NotSplitBasic if no complete set of primitive idempotents is known.
  const std::vector<Vec<S>>& primitives() const;
  const std::vector<std::string>& primitive_labels() const noexcept { return d_.primitive_labels; }
  const ProjectiveSummand<S>& projective(std::size_t i) const;

  /// Basis indices generating A as an algebra (greedy, in basis order).
  const std::vector<Index>& generators() const;

  std::uint64_t hash() const noexcept { return hash_; }
  const AlgebraData<S>& data() const noexcept { return d_; }
  std::string format(const Vec<S>& x) const;

  explicit Algebra(AlgebraData<S> data);

 private:
  AlgebraData<S> d_;
  std::uint64_t hash_ = 0;

  mutable std::mutex mu_;
  mutable std::optional<Subspace<S>> radical_;
  mutable std::optional<std::vector<Index>> generators_;
  mutable std::vector<std::unique_ptr<ProjectiveSummand<S>>> projectives_;
};

template <class S>
bool same_algebra(const Algebra<S>& a, const Algebra<S>& b) {
  return &a == &b || (a.hash() == b.hash() && a.dim() == b.dim() && a.data().table == b.data().table);
}

template <class S>
void require_same(const Algebra<S>& a, const Algebra<S>& b, const char* where);

/// Throws NotIdempotent unless e is a nonzero idempotent of a.
template <class S>
void check_idempotent(const Algebra<S>& a, const Vec<S>& e);

template <class S>
AlgebraPtr<S> opposite(const AlgebraPtr<S>& a);

/// Basis b_i (x) c_j at index i * dim(b) + j.
template <class S>
AlgebraPtr<S> tensor(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b);

/// A^op (x) A; basis b_i^op (x) b_j at i * dim + j.
template <class S>
AlgebraPtr<S> enveloping(const AlgebraPtr<S>& a);

/// x (x) y in the basis of tensor(a, b).
template <class S>
Vec<S> tensor_element(const Vec<S>& x, const Vec<S>& y);

template <class S>
struct Corner {
  AlgebraPtr<S> algebra;
  Mat<S> embedding;  // dim A x dim eAe
};

template <class S>
Corner<S> corner(const AlgebraPtr<S>& a, const Vec<S>& e);

template <class S>
struct IdealQuotient {
  Subspace<S> ideal;                     // AeA inside A
  std::optional<AlgebraPtr<S>> quotient;  // empty when AeA = A
  Mat<S> projection;                     // dim(A/AeA) x dim A
  Mat<S> lift;                           // dim A x dim(A/AeA), a linear section
};

template <class S>
IdealQuotient<S> ideal_and_quotient(const AlgebraPtr<S>& a, const Vec<S>& e);

template <class S>
Subspace<S> center(const Algebra<S>& a);

/// Span of all commutators [b_i, b_j].
template <class S>
Subspace<S> commutator_subspace(const Algebra<S>& a);

/// Convenience: the ground field as a one-dimensional algebra.
template <class S>
AlgebraPtr<S> ground_field(const FieldTag& field);

}  // namespace recollab
